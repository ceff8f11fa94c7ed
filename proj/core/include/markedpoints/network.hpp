#pragma once

#include "markedpoints/geometry.hpp"
#include "markedpoints/random.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace markedpoints {

/// A point on a linear network: a segment and the fraction of its length
/// measured from the segment's first vertex.
struct NetworkLocation
{
  std::size_t segment = 0;
  double offset = 0.0;

  friend bool operator==(const NetworkLocation&, const NetworkLocation&) = default;
  friend auto operator<=>(const NetworkLocation&, const NetworkLocation&) = default;
};

struct Segment
{
  std::size_t a = 0;
  std::size_t b = 0;
};

/// Connected, undirected network of straight line segments. Immutable.
class LinearNetwork
{
public:
  struct Edge
  {
    std::size_t to;
    double length;
    std::size_t segment;
  };

  /// Validates indices, positive lengths, no duplicate undirected segment and
  /// connectivity. Throws `invalid_network` or `disconnected_network`.
  LinearNetwork(std::vector<Point2> vertices, std::vector<Segment> segments);

  const std::vector<Point2>& vertices() const noexcept { return vertices_; }
  const std::vector<Segment>& segments() const noexcept { return segments_; }
  const std::vector<double>& segment_lengths() const noexcept { return lengths_; }
  double segment_length(std::size_t s) const { return lengths_.at(s); }
  double total_length() const noexcept { return total_length_; }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t segment_count() const noexcept { return segments_.size(); }
  const std::vector<Edge>& neighbours(std::size_t v) const { return adjacency_.at(v); }
  std::size_t degree(std::size_t v) const { return adjacency_.at(v).size(); }

  /// Vertices of degree one, in increasing index order.
  std::vector<std::size_t> leaf_vertices() const;

  /// Throws `invalid_location` unless the segment exists and offset is in [0,1].
  void check_location(const NetworkLocation& loc) const;

  /// Planar coordinates of a network location.
  Point2 embed(const NetworkLocation& loc) const;

  /// Single-source shortest-path distances from `loc` to every vertex.
  /// Ties in the priority queue are broken by the smaller vertex index.
  std::vector<double> vertex_distances(const NetworkLocation& loc) const;

  /// Shortest-path distances from the nearest of several source vertices.
  std::vector<double> vertex_distances_from(std::span<const std::size_t> sources) const;

  /// Distance to `target` given the source's vertex distances (and the source
  /// location itself for the same-segment direct path).
  double distance_via(std::span<const double> source_vertex_distances,
                      const NetworkLocation& source,
                      const NetworkLocation& target) const;

  /// Largest shortest-path distance between two vertices.
  double vertex_diameter() const;

private:
  std::vector<Point2> vertices_;
  std::vector<Segment> segments_;
  std::vector<double> lengths_;
  std::vector<std::vector<Edge>> adjacency_;
  double total_length_ = 0.0;

  std::vector<double> dijkstra(std::vector<std::pair<std::size_t, double>> seeds) const;
};

/// Exact shortest-path distance between two locations; symmetric bit-for-bit
/// because the search always starts from the smaller location.
double network_distance(const LinearNetwork& net, const NetworkLocation& a,
                        const NetworkLocation& b);

/// Dense row-major matrix of distances.
struct DistanceMatrix
{
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  double operator()(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
};

DistanceMatrix all_pairs_network_distances(const LinearNetwork& net,
                                           std::span<const NetworkLocation> pts);

/// Distances between two location sets, rows `from`, columns `to`; each entry
/// equals network_distance(from[i], to[j]).
DistanceMatrix cross_network_distances(const LinearNetwork& net,
                                       std::span<const NetworkLocation> from,
                                       std::span<const NetworkLocation> to);

/// Total length of the network ball {v : d(u, v) <= r}.
double network_disc_measure(const LinearNetwork& net, const NetworkLocation& u, double r);

/// Uniform location with respect to arc length.
NetworkLocation uniform_point_on_network(const LinearNetwork& net, Rng& rng);

} // namespace markedpoints
