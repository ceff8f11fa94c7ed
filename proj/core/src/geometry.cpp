#include "markedpoints/geometry.hpp"

#include "markedpoints/errors.hpp"

#include <algorithm>
#include <string>

namespace markedpoints {

PlanarWindow::PlanarWindow(double xmin, double xmax, double ymin, double ymax)
    : xmin_(xmin), xmax_(xmax), ymin_(ymin), ymax_(ymax)
{
  const bool finite = std::isfinite(xmin) && std::isfinite(xmax) && std::isfinite(ymin) &&
                      std::isfinite(ymax);
  if (!finite || !(xmax > xmin) || !(ymax > ymin))
    fail(ErrorCode::invalid_window, "window requires xmax > xmin and ymax > ymin");
}

PlanarWindow window_erode(const PlanarWindow& w, double r)
{
  if (!(r >= 0.0))
    fail(ErrorCode::invalid_argument, "erosion radius must be nonnegative");
  if (2.0 * r >= w.min_side())
    fail(ErrorCode::empty_erosion,
         "erosion by " + std::to_string(r) + " leaves an empty window");
  return {w.xmin() + r, w.xmax() - r, w.ymin() + r, w.ymax() - r};
}

double boundary_distance(const PlanarWindow& w, Point2 u)
{
  if (!w.contains(u))
    fail(ErrorCode::point_outside_window, "point lies outside the window");
  return std::min({u.x - w.xmin(), w.xmax() - u.x, u.y - w.ymin(), w.ymax() - u.y});
}

} // namespace markedpoints
