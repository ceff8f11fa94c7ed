#include "markedpoints/errors.hpp"
#include "markedpoints/intensity.hpp"

#include <cmath>
#include <limits>

namespace markedpoints {

ScottBandwidth bandwidth_scott(const MarkedPointPattern& p)
{
  const auto pts = p.planar_locations();
  if (pts.size() < 2)
    fail(ErrorCode::too_few_points, "Scott's rule needs at least two points");
  const double n = static_cast<double>(pts.size());
  double mx = 0.0, my = 0.0;
  for (auto u : pts) {
    mx += u.x;
    my += u.y;
  }
  mx /= n;
  my /= n;
  double vx = 0.0, vy = 0.0;
  for (auto u : pts) {
    vx += (u.x - mx) * (u.x - mx);
    vy += (u.y - my) * (u.y - my);
  }
  const double sx = std::sqrt(vx / n);
  const double sy = std::sqrt(vy / n);
  if (!(sx > 0.0))
    fail(ErrorCode::degenerate_bandwidth, "x coordinates have zero spread");
  if (!(sy > 0.0))
    fail(ErrorCode::degenerate_bandwidth, "y coordinates have zero spread");
  // N^(1/6) as cbrt(sqrt(N)) is exact whenever N is a perfect sixth power.
  const double scale = std::cbrt(std::sqrt(n));
  return {sx / scale, sy / scale};
}

double cvl_criterion(const MarkedPointPattern& p, const KernelSpec& k)
{
  k.validate();
  double sum = 0.0;
  for (const auto& pt : p.points())
    sum += 1.0 / uniform_intensity_at(p, k, std::get<Point2>(pt.location));
  return sum - p.window().area();
}

CvlResult bandwidth_cvl(const MarkedPointPattern& p, double lo, double hi, KernelFamily family,
                        std::size_t count)
{
  if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi) || count < 2)
    fail(ErrorCode::empty_interval, "bandwidth search interval is empty");
  if (p.empty())
    fail(ErrorCode::too_few_points, "bandwidth selection needs at least one point");
  (void)p.window();
  CvlResult result;
  const double ratio = hi / lo;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < count; ++i) {
    const double sigma =
        (i + 1 == count) ? hi
                         : lo * std::pow(ratio, static_cast<double>(i) / static_cast<double>(count - 1));
    const double c = cvl_criterion(p, {family, sigma});
    result.candidates.push_back(sigma);
    result.criteria.push_back(c);
    if (std::abs(c) < best) {
      best = std::abs(c);
      result.sigma = sigma;
      result.criterion = c;
    }
  }
  return result;
}

CvlResult bandwidth_cvl(const MarkedPointPattern& p, KernelFamily family)
{
  const double side = p.window().min_side();
  return bandwidth_cvl(p, 0.01 * side, 0.5 * side, family);
}

} // namespace markedpoints
