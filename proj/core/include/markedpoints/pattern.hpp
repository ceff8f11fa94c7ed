#pragma once

#include "markedpoints/geometry.hpp"
#include "markedpoints/network.hpp"

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace markedpoints {

using Location = std::variant<Point2, NetworkLocation>;
using NetworkPtr = std::shared_ptr<const LinearNetwork>;
using Domain = std::variant<PlanarWindow, NetworkPtr>;

struct MarkedPoint
{
  Location location;
  std::optional<std::string> type;
  std::optional<double> mark;
};

/// Finite set of located points with optional categorical labels and real
/// marks, observed in a rectangle or on a linear network.
class MarkedPointPattern
{
public:
  MarkedPointPattern(Domain domain, std::vector<MarkedPoint> points = {});

  const Domain& domain() const noexcept { return domain_; }
  const std::vector<MarkedPoint>& points() const noexcept { return points_; }
  std::vector<MarkedPoint>& points() noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }

  bool on_network() const noexcept { return std::holds_alternative<NetworkPtr>(domain_); }
  /// Throws `domain_mismatch` when the domain is a network.
  const PlanarWindow& window() const;
  /// Throws `domain_mismatch` when the domain is planar.
  const LinearNetwork& network() const;

  /// Window area, or total network length for network domains.
  double domain_measure() const noexcept;

  void push_back(MarkedPoint p) { points_.push_back(std::move(p)); }

  /// All marks; throws `no_marks` if any point lacks one.
  std::vector<double> marks() const;
  std::vector<Point2> planar_locations() const;
  std::vector<NetworkLocation> network_locations() const;

private:
  Domain domain_;
  std::vector<MarkedPoint> points_;
};

/// Same window, or the same network object.
bool same_domain(const Domain& a, const Domain& b) noexcept;

/// Distance between two locations in a domain (Euclidean or shortest path).
double domain_distance(const Domain& domain, const Location& a, const Location& b);

/// Symmetric matrix of interpoint distances within one pattern.
DistanceMatrix pairwise_distances(const MarkedPointPattern& p);

/// Rows index `from`, columns index `to`. Throws `domain_mismatch`.
DistanceMatrix cross_distances(const MarkedPointPattern& from, const MarkedPointPattern& to);

/// Checks every invariant and returns the pattern unchanged. Throws
/// `out_of_domain` (message carries the index), `non_finite_mark` or
/// `mixed_domain`.
MarkedPointPattern validate_pattern(MarkedPointPattern p);

/// Partition by type label, keys in lexicographic order. Each part keeps the
/// full domain. Throws `missing_type_label`.
std::map<std::string, MarkedPointPattern> split_by_type(const MarkedPointPattern& p);

/// Points whose label differs from `type` (the "dot" complement).
MarkedPointPattern points_not_of_type(const MarkedPointPattern& p, const std::string& type);

struct MarkSummaryStats
{
  double mean = 0.0;
  double variance = 0.0; // population variance, divisor N
  std::size_t count = 0;
};

/// Moments over the marked points. Throws `no_marks` when none carry a mark.
MarkSummaryStats mark_moments(const MarkedPointPattern& p);
MarkSummaryStats mark_moments(std::span<const double> marks);

} // namespace markedpoints
