#include "markedpoints/pattern.hpp"

#include "markedpoints/errors.hpp"

#include <algorithm>
#include <cmath>

namespace markedpoints {

MarkedPointPattern::MarkedPointPattern(Domain domain, std::vector<MarkedPoint> points)
    : domain_(std::move(domain)), points_(std::move(points))
{
  if (const auto* net = std::get_if<NetworkPtr>(&domain_); net && !*net)
    fail(ErrorCode::invalid_argument, "network domain must not be null");
}

const PlanarWindow& MarkedPointPattern::window() const
{
  if (const auto* w = std::get_if<PlanarWindow>(&domain_))
    return *w;
  fail(ErrorCode::domain_mismatch, "pattern lives on a network, not a planar window");
}

const LinearNetwork& MarkedPointPattern::network() const
{
  if (const auto* n = std::get_if<NetworkPtr>(&domain_))
    return **n;
  fail(ErrorCode::domain_mismatch, "pattern lives in a planar window, not on a network");
}

double MarkedPointPattern::domain_measure() const noexcept
{
  if (const auto* w = std::get_if<PlanarWindow>(&domain_))
    return w->area();
  return std::get<NetworkPtr>(domain_)->total_length();
}

std::vector<double> MarkedPointPattern::marks() const
{
  std::vector<double> out;
  out.reserve(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!points_[i].mark)
      fail(ErrorCode::no_marks, "point " + std::to_string(i) + " has no mark");
    out.push_back(*points_[i].mark);
  }
  return out;
}

std::vector<Point2> MarkedPointPattern::planar_locations() const
{
  std::vector<Point2> out;
  out.reserve(points_.size());
  for (const auto& p : points_) {
    const auto* u = std::get_if<Point2>(&p.location);
    if (!u)
      fail(ErrorCode::mixed_domain, "expected planar locations");
    out.push_back(*u);
  }
  return out;
}

std::vector<NetworkLocation> MarkedPointPattern::network_locations() const
{
  std::vector<NetworkLocation> out;
  out.reserve(points_.size());
  for (const auto& p : points_) {
    const auto* u = std::get_if<NetworkLocation>(&p.location);
    if (!u)
      fail(ErrorCode::mixed_domain, "expected network locations");
    out.push_back(*u);
  }
  return out;
}

bool same_domain(const Domain& a, const Domain& b) noexcept
{
  if (a.index() != b.index())
    return false;
  if (const auto* wa = std::get_if<PlanarWindow>(&a))
    return *wa == std::get<PlanarWindow>(b);
  return std::get<NetworkPtr>(a).get() == std::get<NetworkPtr>(b).get();
}

double domain_distance(const Domain& domain, const Location& a, const Location& b)
{
  if (const auto* net = std::get_if<NetworkPtr>(&domain)) {
    const auto* na = std::get_if<NetworkLocation>(&a);
    const auto* nb = std::get_if<NetworkLocation>(&b);
    if (!na || !nb)
      fail(ErrorCode::mixed_domain, "network domain needs network locations");
    return network_distance(**net, *na, *nb);
  }
  const auto* pa = std::get_if<Point2>(&a);
  const auto* pb = std::get_if<Point2>(&b);
  if (!pa || !pb)
    fail(ErrorCode::mixed_domain, "planar domain needs planar locations");
  return euclidean_distance(*pa, *pb);
}

DistanceMatrix pairwise_distances(const MarkedPointPattern& p)
{
  const std::size_t n = p.size();
  if (p.on_network()) {
    if (n == 0)
      return {0, 0, {}};
    const auto locs = p.network_locations();
    return all_pairs_network_distances(p.network(), locs);
  }
  const auto locs = p.planar_locations();
  DistanceMatrix m{n, n, std::vector<double>(n * n, 0.0)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = euclidean_distance(locs[i], locs[j]);
      m.values[i * n + j] = d;
      m.values[j * n + i] = d;
    }
  return m;
}

DistanceMatrix cross_distances(const MarkedPointPattern& from, const MarkedPointPattern& to)
{
  if (!same_domain(from.domain(), to.domain()))
    fail(ErrorCode::domain_mismatch, "patterns live on different domains");
  if (from.on_network()) {
    const auto a = from.network_locations();
    const auto b = to.network_locations();
    return cross_network_distances(from.network(), a, b);
  }
  const auto a = from.planar_locations();
  const auto b = to.planar_locations();
  DistanceMatrix m{a.size(), b.size(), std::vector<double>(a.size() * b.size(), 0.0)};
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      m.values[i * b.size() + j] = euclidean_distance(a[i], b[j]);
  return m;
}

MarkedPointPattern validate_pattern(MarkedPointPattern p)
{
  const bool network = p.on_network();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& pt = p.points()[i];
    const std::string where = "point " + std::to_string(i);
    if (network) {
      const auto* loc = std::get_if<NetworkLocation>(&pt.location);
      if (!loc)
        fail(ErrorCode::mixed_domain, where + " is planar but the domain is a network");
      const auto& net = p.network();
      if (loc->segment >= net.segment_count() || !(loc->offset >= 0.0 && loc->offset <= 1.0))
        fail(ErrorCode::out_of_domain, where + " is not on the network");
    } else {
      const auto* u = std::get_if<Point2>(&pt.location);
      if (!u)
        fail(ErrorCode::mixed_domain, where + " is a network location but the domain is planar");
      if (!p.window().contains(*u))
        fail(ErrorCode::out_of_domain, where + " lies outside the window");
    }
    if (pt.mark && !std::isfinite(*pt.mark))
      fail(ErrorCode::non_finite_mark, where + " has a non-finite mark");
  }
  return p;
}

std::map<std::string, MarkedPointPattern> split_by_type(const MarkedPointPattern& p)
{
  std::map<std::string, MarkedPointPattern> parts;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& pt = p.points()[i];
    if (!pt.type)
      fail(ErrorCode::missing_type_label, "point " + std::to_string(i) + " has no type label");
    auto it = parts.try_emplace(*pt.type, p.domain()).first;
    it->second.push_back(pt);
  }
  return parts;
}

MarkedPointPattern points_not_of_type(const MarkedPointPattern& p, const std::string& type)
{
  MarkedPointPattern out(p.domain());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& pt = p.points()[i];
    if (!pt.type)
      fail(ErrorCode::missing_type_label, "point " + std::to_string(i) + " has no type label");
    if (*pt.type != type)
      out.push_back(pt);
  }
  return out;
}

MarkSummaryStats mark_moments(std::span<const double> marks)
{
  if (marks.empty())
    fail(ErrorCode::no_marks, "mark moments need at least one mark");
  // Sorted summation makes the result independent of point order.
  std::vector<double> sorted(marks.begin(), marks.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() == sorted.back())
    return {sorted.front(), 0.0, sorted.size()};
  double sum = 0.0;
  for (double m : sorted)
    sum += m;
  const double n = static_cast<double>(sorted.size());
  const double mean = sum / n;
  double ss = 0.0;
  for (double m : sorted)
    ss += (m - mean) * (m - mean);
  return {mean, ss / n, sorted.size()};
}

MarkSummaryStats mark_moments(const MarkedPointPattern& p)
{
  std::vector<double> marks;
  for (const auto& pt : p.points())
    if (pt.mark)
      marks.push_back(*pt.mark);
  return mark_moments(marks);
}

} // namespace markedpoints
