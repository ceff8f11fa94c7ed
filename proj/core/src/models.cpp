#include "markedpoints/errors.hpp"
#include "markedpoints/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace markedpoints {

const char* to_string(MarkModel m) noexcept
{
  switch (m) {
  case MarkModel::I: return "modelI";
  case MarkModel::II: return "modelII";
  case MarkModel::III: return "modelIII";
  }
  return "unknown";
}

namespace {

double trend_score(Point2 u) noexcept { return u.x + u.y; }

std::vector<double> model_one(const MarkedPointPattern& base, const MarkModelParams& params,
                              Rng& rng)
{
  const auto& net = base.network();
  double sd = 0.0;
  if (params.noise_sd) {
    sd = *params.noise_sd;
  } else {
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& v : net.vertices()) {
      lo = std::min(lo, trend_score(v));
      hi = std::max(hi, trend_score(v));
    }
    sd = 0.1 * std::abs(params.slope) * (hi - lo);
  }
  if (!(sd >= 0.0) || !std::isfinite(sd))
    fail(ErrorCode::invalid_argument, "noise sd must be finite and nonnegative");
  std::vector<double> marks;
  marks.reserve(base.size());
  for (const auto& p : base.points()) {
    const double score = trend_score(net.embed(std::get<NetworkLocation>(p.location)));
    const double noise = sd > 0.0 ? sd * normal_draw(rng) : 0.0;
    marks.push_back(params.intercept + params.slope * score + noise);
  }
  return marks;
}

std::vector<double> model_two(const MarkedPointPattern& base)
{
  const auto& net = base.network();
  const auto leaves = net.leaf_vertices();
  if (leaves.empty())
    fail(ErrorCode::no_leaf_vertices, "network has no degree-1 vertices");
  const auto dist = net.vertex_distances_from(leaves);
  std::vector<double> marks;
  marks.reserve(base.size());
  for (const auto& p : base.points()) {
    const auto& loc = std::get<NetworkLocation>(p.location);
    const auto& seg = net.segments()[loc.segment];
    const double len = net.segment_length(loc.segment);
    marks.push_back(std::min(dist[seg.a] + loc.offset * len, dist[seg.b] + (1.0 - loc.offset) * len));
  }
  return marks;
}

std::vector<double> model_three(const MarkedPointPattern& base, double radius)
{
  if (!(radius > 0.0))
    fail(ErrorCode::invalid_argument, "radius must be positive");
  const auto locs = base.network_locations();
  const auto d = all_pairs_network_distances(base.network(), locs);
  std::vector<double> marks(locs.size(), 0.0);
  for (std::size_t i = 0; i < locs.size(); ++i)
    for (std::size_t j = 0; j < locs.size(); ++j)
      if (i != j && d(i, j) < radius)
        marks[i] += 1.0;
  return marks;
}

} // namespace

MarkedPointPattern model_marks(MarkModel kind, const MarkedPointPattern& base,
                               const MarkModelParams& params, Rng& rng)
{
  if (!base.on_network())
    fail(ErrorCode::domain_mismatch, "mark models need a network pattern");
  std::vector<double> marks;
  switch (kind) {
  case MarkModel::I: marks = model_one(base, params, rng); break;
  case MarkModel::II: marks = model_two(base); break;
  case MarkModel::III: marks = model_three(base, params.radius); break;
  }
  MarkedPointPattern out = base;
  for (std::size_t i = 0; i < out.size(); ++i)
    out.points()[i].mark = marks[i];
  return out;
}

LinearNetwork synthetic_tree_network()
{
  constexpr double deg = std::numbers::pi / 180.0;
  constexpr double spread[] = {32.0, 22.0, 14.0};
  std::vector<Point2> vertices{{500.0, 500.0}};
  std::vector<Segment> segments;

  const auto grow = [&](auto&& self, std::size_t from, double angle, double length,
                        int level) -> void {
    const Point2 start = vertices[from];
    vertices.push_back({start.x + length * std::cos(angle), start.y + length * std::sin(angle)});
    const std::size_t tip = vertices.size() - 1;
    segments.push_back({from, tip});
    if (level == 3)
      return;
    for (double sign : {-1.0, 1.0})
      self(self, tip, angle + sign * spread[level] * deg, 0.75 * length, level + 1);
  };
  for (int k = 0; k < 5; ++k)
    grow(grow, 0, (18.0 + 72.0 * k) * deg, 60.0, 0);
  return LinearNetwork(std::move(vertices), std::move(segments));
}

} // namespace markedpoints
