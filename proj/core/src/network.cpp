#include "markedpoints/network.hpp"

#include "markedpoints/errors.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <set>
#include <string>

namespace markedpoints {

namespace {

constexpr double infinity = std::numeric_limits<double>::infinity();

} // namespace

LinearNetwork::LinearNetwork(std::vector<Point2> vertices, std::vector<Segment> segments)
    : vertices_(std::move(vertices)), segments_(std::move(segments))
{
  if (vertices_.empty())
    fail(ErrorCode::invalid_network, "network has no vertices");
  if (segments_.empty())
    fail(ErrorCode::invalid_network, "network has no segments");
  for (const auto& v : vertices_)
    if (!std::isfinite(v.x) || !std::isfinite(v.y))
      fail(ErrorCode::invalid_network, "vertex coordinates must be finite");

  adjacency_.resize(vertices_.size());
  lengths_.reserve(segments_.size());
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t s = 0; s < segments_.size(); ++s) {
    const auto [a, b] = segments_[s];
    if (a >= vertices_.size() || b >= vertices_.size())
      fail(ErrorCode::invalid_network,
           "segment " + std::to_string(s) + " references a missing vertex");
    if (!seen.emplace(std::min(a, b), std::max(a, b)).second)
      fail(ErrorCode::invalid_network, "duplicate segment " + std::to_string(s));
    const double len = euclidean_distance(vertices_[a], vertices_[b]);
    if (!(len > 0.0))
      fail(ErrorCode::invalid_network,
           "segment " + std::to_string(s) + " has zero length");
    lengths_.push_back(len);
    total_length_ += len;
    adjacency_[a].push_back({b, len, s});
    adjacency_[b].push_back({a, len, s});
  }

  std::vector<bool> visited(vertices_.size(), false);
  std::vector<std::size_t> stack{0};
  visited[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (const auto& e : adjacency_[v])
      if (!visited[e.to]) {
        visited[e.to] = true;
        ++reached;
        stack.push_back(e.to);
      }
  }
  if (reached != vertices_.size())
    fail(ErrorCode::disconnected_network,
         "network has " + std::to_string(vertices_.size() - reached) +
             " vertices unreachable from vertex 0");
}

std::vector<std::size_t> LinearNetwork::leaf_vertices() const
{
  std::vector<std::size_t> leaves;
  for (std::size_t v = 0; v < adjacency_.size(); ++v)
    if (adjacency_[v].size() == 1)
      leaves.push_back(v);
  return leaves;
}

void LinearNetwork::check_location(const NetworkLocation& loc) const
{
  if (loc.segment >= segments_.size())
    fail(ErrorCode::invalid_location,
         "segment index " + std::to_string(loc.segment) + " out of range");
  if (!(loc.offset >= 0.0 && loc.offset <= 1.0))
    fail(ErrorCode::invalid_location, "offset must lie in [0, 1]");
}

Point2 LinearNetwork::embed(const NetworkLocation& loc) const
{
  check_location(loc);
  const auto& s = segments_[loc.segment];
  const Point2 a = vertices_[s.a];
  const Point2 b = vertices_[s.b];
  return {a.x + loc.offset * (b.x - a.x), a.y + loc.offset * (b.y - a.y)};
}

std::vector<double> LinearNetwork::dijkstra(std::vector<std::pair<std::size_t, double>> seeds) const
{
  using Item = std::pair<double, std::size_t>;
  std::vector<double> dist(vertices_.size(), infinity);
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  for (const auto& [v, d] : seeds)
    if (d < dist[v]) {
      dist[v] = d;
      queue.emplace(d, v);
    }
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (d > dist[v])
      continue;
    for (const auto& e : adjacency_[v]) {
      const double candidate = d + e.length;
      if (candidate < dist[e.to]) {
        dist[e.to] = candidate;
        queue.emplace(candidate, e.to);
      }
    }
  }
  return dist;
}

std::vector<double> LinearNetwork::vertex_distances(const NetworkLocation& loc) const
{
  check_location(loc);
  const auto& s = segments_[loc.segment];
  const double len = lengths_[loc.segment];
  return dijkstra({{s.a, loc.offset * len}, {s.b, (1.0 - loc.offset) * len}});
}

std::vector<double> LinearNetwork::vertex_distances_from(std::span<const std::size_t> sources) const
{
  std::vector<std::pair<std::size_t, double>> seeds;
  for (auto v : sources) {
    if (v >= vertices_.size())
      fail(ErrorCode::invalid_argument, "source vertex out of range");
    seeds.emplace_back(v, 0.0);
  }
  return dijkstra(std::move(seeds));
}

double LinearNetwork::distance_via(std::span<const double> source_vertex_distances,
                                   const NetworkLocation& source,
                                   const NetworkLocation& target) const
{
  check_location(target);
  const auto& s = segments_[target.segment];
  const double len = lengths_[target.segment];
  double d = std::min(source_vertex_distances[s.a] + target.offset * len,
                      source_vertex_distances[s.b] + (1.0 - target.offset) * len);
  if (source.segment == target.segment)
    d = std::min(d, std::abs(source.offset - target.offset) * len);
  return d;
}

double LinearNetwork::vertex_diameter() const
{
  double diameter = 0.0;
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    const auto dist = dijkstra({{v, 0.0}});
    diameter = std::max(diameter, *std::max_element(dist.begin(), dist.end()));
  }
  return diameter;
}

double network_distance(const LinearNetwork& net, const NetworkLocation& a,
                        const NetworkLocation& b)
{
  net.check_location(a);
  net.check_location(b);
  const auto& source = (b < a) ? b : a;
  const auto& target = (b < a) ? a : b;
  const auto dist = net.vertex_distances(source);
  return net.distance_via(dist, source, target);
}

DistanceMatrix all_pairs_network_distances(const LinearNetwork& net,
                                           std::span<const NetworkLocation> pts)
{
  if (pts.empty())
    fail(ErrorCode::invalid_argument, "all-pairs distances need at least one point");
  const std::size_t n = pts.size();
  std::vector<std::vector<double>> from(n);
  for (std::size_t i = 0; i < n; ++i)
    from[i] = net.vertex_distances(pts[i]);

  DistanceMatrix m{n, n, std::vector<double>(n * n, 0.0)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool swap = pts[j] < pts[i];
      const std::size_t src = swap ? j : i;
      const std::size_t dst = swap ? i : j;
      const double d = net.distance_via(from[src], pts[src], pts[dst]);
      m.values[i * n + j] = d;
      m.values[j * n + i] = d;
    }
  return m;
}

DistanceMatrix cross_network_distances(const LinearNetwork& net,
                                       std::span<const NetworkLocation> from,
                                       std::span<const NetworkLocation> to)
{
  DistanceMatrix m{from.size(), to.size(), std::vector<double>(from.size() * to.size(), 0.0)};
  if (from.empty() || to.empty())
    return m;
  std::vector<std::vector<double>> dist_from(from.size()), dist_to(to.size());
  for (std::size_t i = 0; i < from.size(); ++i)
    dist_from[i] = net.vertex_distances(from[i]);
  for (std::size_t j = 0; j < to.size(); ++j)
    dist_to[j] = net.vertex_distances(to[j]);
  for (std::size_t i = 0; i < from.size(); ++i)
    for (std::size_t j = 0; j < to.size(); ++j)
      m.values[i * to.size() + j] = (to[j] < from[i])
                                        ? net.distance_via(dist_to[j], to[j], from[i])
                                        : net.distance_via(dist_from[i], from[i], to[j]);
  return m;
}

double network_disc_measure(const LinearNetwork& net, const NetworkLocation& u, double r)
{
  if (!(r >= 0.0))
    fail(ErrorCode::invalid_argument, "disc radius must be nonnegative");
  const auto dist = net.vertex_distances(u);
  double total = 0.0;
  std::vector<std::pair<double, double>> pieces;
  for (std::size_t s = 0; s < net.segment_count(); ++s) {
    const auto& seg = net.segments()[s];
    const double len = net.segment_length(s);
    pieces.clear();
    if (const double reach = r - dist[seg.a]; reach >= 0.0)
      pieces.emplace_back(0.0, std::min(len, reach));
    if (const double reach = r - dist[seg.b]; reach >= 0.0)
      pieces.emplace_back(std::max(0.0, len - reach), len);
    if (s == u.segment) {
      const double p = u.offset * len;
      pieces.emplace_back(std::max(0.0, p - r), std::min(len, p + r));
    }
    if (pieces.empty())
      continue;
    std::sort(pieces.begin(), pieces.end());
    double lo = pieces[0].first, hi = pieces[0].second;
    for (std::size_t k = 1; k < pieces.size(); ++k) {
      if (pieces[k].first > hi) {
        total += hi - lo;
        lo = pieces[k].first;
        hi = pieces[k].second;
      } else {
        hi = std::max(hi, pieces[k].second);
      }
    }
    total += hi - lo;
  }
  return total;
}

NetworkLocation uniform_point_on_network(const LinearNetwork& net, Rng& rng)
{
  const double target = uniform01(rng) * net.total_length();
  const auto& lengths = net.segment_lengths();
  double cumulative = 0.0;
  std::size_t s = 0;
  for (; s + 1 < lengths.size(); ++s) {
    cumulative += lengths[s];
    if (target < cumulative)
      break;
  }
  return {s, uniform01(rng)};
}

} // namespace markedpoints
