#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oracle {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

struct Leg
{
  std::size_t vertex;
  double length;
};

void walk(const LinearNetwork& net, std::size_t v, double acc, std::vector<bool>& on_path,
          const std::vector<Leg>& exits, double& best)
{
  for (const auto& leg : exits)
    if (leg.vertex == v)
      best = std::min(best, acc + leg.length);
  for (const auto& e : net.neighbours(v)) {
    if (on_path[e.to])
      continue;
    on_path[e.to] = true;
    walk(net, e.to, acc + e.length, on_path, exits, best);
    on_path[e.to] = false;
  }
}

double border(const Rect& w, Point2 u)
{
  return std::min({u.x - w.xmin, w.xmax - u.x, u.y - w.ymin, w.ymax - u.y});
}

double dist(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

} // namespace

double network_distance(const LinearNetwork& net, const NetworkLocation& a, const NetworkLocation& b)
{
  const auto& src = b < a ? b : a;
  const auto& dst = b < a ? a : b;
  const auto& ss = net.segments()[src.segment];
  const auto& ts = net.segments()[dst.segment];
  const double sl = net.segment_lengths()[src.segment];
  const double tl = net.segment_lengths()[dst.segment];
  double best = std::numeric_limits<double>::infinity();
  if (src.segment == dst.segment)
    best = std::abs(src.offset - dst.offset) * sl;
  const std::vector<Leg> exits{{ts.a, dst.offset * tl}, {ts.b, (1.0 - dst.offset) * tl}};
  const Leg starts[] = {{ss.a, src.offset * sl}, {ss.b, (1.0 - src.offset) * sl}};
  std::vector<bool> on_path(net.vertex_count(), false);
  for (const auto& s : starts) {
    on_path[s.vertex] = true;
    walk(net, s.vertex, s.length, on_path, exits, best);
    on_path[s.vertex] = false;
  }
  return best;
}

std::vector<double> k_cross(const Rect& w, std::span<const Point2> xi, std::span<const double> li,
                            std::span<const Point2> xj, std::span<const double> lj,
                            bool translation, std::span<const double> r)
{
  const double width = w.xmax - w.xmin, height = w.ymax - w.ymin;
  const double area = width * height;
  std::vector<double> out;
  for (double rk : r) {
    double sum = 0.0;
    for (std::size_t a = 0; a < xi.size(); ++a)
      for (std::size_t b = 0; b < xj.size(); ++b) {
        if (dist(xi[a], xj[b]) > rk)
          continue;
        double e = 1.0;
        if (translation)
          e = area / ((width - std::abs(xi[a].x - xj[b].x)) * (height - std::abs(xi[a].y - xj[b].y)));
        sum += e / (li[a] * lj[b]);
      }
    out.push_back(sum / area);
  }
  return out;
}

std::vector<double> h_cross(const Rect& w, std::span<const Point2> xi, std::span<const double> li,
                            std::span<const Point2> xj, std::span<const double> lj, double inf,
                            std::span<const double> r)
{
  std::vector<double> out;
  for (double rk : r) {
    double num = 0.0, den = 0.0;
    for (std::size_t a = 0; a < xi.size(); ++a) {
      if (border(w, xi[a]) < rk)
        continue;
      double prod = 1.0;
      for (std::size_t b = 0; b < xj.size(); ++b)
        if (dist(xi[a], xj[b]) <= rk)
          prod *= 1.0 - inf / lj[b];
      num += prod / li[a];
      den += 1.0 / li[a];
    }
    out.push_back(den > 0.0 ? 1.0 - num / den : nan);
  }
  return out;
}

std::vector<double> f_empty(const Rect& w, std::span<const Point2> xj, std::span<const double> lj,
                            double inf, double spacing, std::span<const double> r)
{
  const double width = w.xmax - w.xmin, height = w.ymax - w.ymin;
  const int nx = std::max(1, static_cast<int>(std::lround(width / spacing)));
  const int ny = std::max(1, static_cast<int>(std::lround(height / spacing)));
  std::vector<Point2> grid;
  for (int ix = 0; ix < nx; ++ix)
    for (int iy = 0; iy < ny; ++iy)
      grid.push_back({w.xmin + (ix + 0.5) * width / nx, w.ymin + (iy + 0.5) * height / ny});
  std::vector<double> out;
  for (double rk : r) {
    double sum = 0.0;
    int count = 0;
    for (const auto& u : grid) {
      if (border(w, u) < rk)
        continue;
      double prod = 1.0;
      for (std::size_t b = 0; b < xj.size(); ++b)
        if (dist(u, xj[b]) <= rk)
          prod *= 1.0 - inf / lj[b];
      sum += prod;
      ++count;
    }
    out.push_back(count > 0 ? 1.0 - sum / count : nan);
  }
  return out;
}

std::vector<double> mark_corr(std::span<const double> d, std::span<const double> marks, Tf tf,
                              const std::function<double(double)>& kernel,
                              std::span<const double> r)
{
  const std::size_t n = marks.size();
  double mean = 0.0;
  for (double m : marks)
    mean += m / static_cast<double>(n);
  double var = 0.0;
  for (double m : marks)
    var += (m - mean) * (m - mean) / static_cast<double>(n);
  const auto t = [&](double a, double b) {
    switch (tf) {
    case Tf::stoyan: return a * b;
    case Tf::bk: return a + b;
    case Tf::vario: return 0.5 * (a - b) * (a - b);
    case Tf::shimantani: return (a - mean) * (b - mean);
    }
    return nan;
  };
  double c = 0.0;
  if (tf == Tf::shimantani) {
    c = var;
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j)
          c += t(marks[i], marks[j]);
    c /= static_cast<double>(n * (n - 1));
  }
  std::vector<double> out;
  if (c == 0.0 || !std::isfinite(c))
    return std::vector<double>(r.size(), nan);
  for (double rk : r) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j)
          continue;
        const double k = kernel(d[i * n + j] - rk);
        num += t(marks[i], marks[j]) * k;
        den += k;
      }
    out.push_back(den >= 1e-12 ? num / (c * den) : nan);
  }
  return out;
}

std::vector<double> euclidean_matrix(std::span<const Point2> pts)
{
  const std::size_t n = pts.size();
  std::vector<double> m(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m[i * n + j] = dist(pts[i], pts[j]);
  return m;
}

} // namespace oracle
