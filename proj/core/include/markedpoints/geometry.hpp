#pragma once

#include <cmath>

namespace markedpoints {

struct Point2
{
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline double euclidean_distance(Point2 a, Point2 b) noexcept
{
  return std::hypot(a.x - b.x, a.y - b.y);
}

/// Axis-aligned rectangular observation window.
class PlanarWindow
{
public:
  /// Throws `invalid_window` unless xmax > xmin and ymax > ymin (finite).
  PlanarWindow(double xmin, double xmax, double ymin, double ymax);

  static PlanarWindow unit_square() { return {0.0, 1.0, 0.0, 1.0}; }

  double xmin() const noexcept { return xmin_; }
  double xmax() const noexcept { return xmax_; }
  double ymin() const noexcept { return ymin_; }
  double ymax() const noexcept { return ymax_; }
  double width() const noexcept { return xmax_ - xmin_; }
  double height() const noexcept { return ymax_ - ymin_; }
  double area() const noexcept { return width() * height(); }
  double min_side() const noexcept { return width() < height() ? width() : height(); }

  /// Closed rectangle membership.
  bool contains(Point2 u) const noexcept
  {
    return u.x >= xmin_ && u.x <= xmax_ && u.y >= ymin_ && u.y <= ymax_;
  }

  friend bool operator==(const PlanarWindow&, const PlanarWindow&) = default;

private:
  double xmin_, xmax_, ymin_, ymax_;
};

/// The r-reduced window {u in W : d(u, boundary) >= r}.
/// Throws `empty_erosion` when 2r >= min side, `invalid_argument` for r < 0.
PlanarWindow window_erode(const PlanarWindow& w, double r);

/// Distance from an interior point to the window border.
/// Throws `point_outside_window` if u is not in w.
double boundary_distance(const PlanarWindow& w, Point2 u);

/// Area of W intersected with W translated by (dx, dy).
inline double translated_overlap_area(const PlanarWindow& w, double dx, double dy) noexcept
{
  const double ox = w.width() - std::abs(dx);
  const double oy = w.height() - std::abs(dy);
  return (ox > 0.0 && oy > 0.0) ? ox * oy : 0.0;
}

} // namespace markedpoints
