#include "markedpoints/intensity.hpp"

#include "markedpoints/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace markedpoints {

namespace {

double normal_cdf(double z) noexcept
{
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

// Mass of N(0, sigma^2) on [lo, hi].
double normal_interval_mass(double lo, double hi, double sigma) noexcept
{
  // Use the upper tail on the right of zero to keep precision near 1.
  if (lo >= 0.0)
    return normal_cdf(-lo / sigma) - normal_cdf(-hi / sigma);
  return normal_cdf(hi / sigma) - normal_cdf(lo / sigma);
}

// Integral over dy in [a, b] (already clipped to the disc chord) of the
// kernel at fixed dx.
double inner_integral(const KernelSpec& k, double dx, double a, double b) noexcept
{
  const double s2 = k.sigma * k.sigma;
  if (k.family == KernelFamily::box)
    return (b - a) / (std::numbers::pi * s2);
  const double base = (1.0 - dx * dx / s2) * (b - a) - (b * b * b - a * a * a) / (3.0 * s2);
  return 2.0 / (std::numbers::pi * s2) * base;
}

constexpr std::array<double, 8> gl_nodes{-0.9602898564975363, -0.7966664774136267,
                                         -0.5255324099163290, -0.1834346424956498,
                                         0.1834346424956498,  0.5255324099163290,
                                         0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> gl_weights{0.1012285362903763, 0.2223810344533745,
                                           0.3137066458778873, 0.3626837833783620,
                                           0.3626837833783620, 0.3137066458778873,
                                           0.2223810344533745, 0.1012285362903763};

double compact_kernel_mass(const KernelSpec& k, const PlanarWindow& w, Point2 u)
{
  const double s = k.sigma;
  const double xlo = std::max(w.xmin() - u.x, -s);
  const double xhi = std::min(w.xmax() - u.x, s);
  if (xlo >= xhi)
    return 0.0;
  const double ylo = w.ymin() - u.y;
  const double yhi = w.ymax() - u.y;
  // dx = s sin(theta) removes the square-root behaviour at the support edge.
  const double t0 = std::asin(std::clamp(xlo / s, -1.0, 1.0));
  const double t1 = std::asin(std::clamp(xhi / s, -1.0, 1.0));
  constexpr int panels = 64;
  const double h = (t1 - t0) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = t0 + (p + 0.5) * h;
    for (std::size_t q = 0; q < gl_nodes.size(); ++q) {
      const double theta = mid + 0.5 * h * gl_nodes[q];
      const double dx = s * std::sin(theta);
      const double half = std::sqrt(std::max(0.0, s * s - dx * dx));
      const double a = std::max(ylo, -half);
      const double b = std::min(yhi, half);
      if (a < b)
        total += 0.5 * h * gl_weights[q] * inner_integral(k, dx, a, b) * s * std::cos(theta);
    }
  }
  return std::min(total, 1.0);
}

void check_grid(GridDims dims)
{
  if (dims.nx < 16 || dims.ny < 16)
    fail(ErrorCode::invalid_argument, "intensity grids must be at least 16 x 16");
}

// Per-axis gaussian factors: factor[i * n + c] = phi_sigma(center_c - coord_i).
std::vector<double> axis_factors(std::span<const double> coords, double origin, double step,
                                 std::size_t n, double sigma)
{
  std::vector<double> out(coords.size() * n);
  const double norm = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * sigma);
  for (std::size_t i = 0; i < coords.size(); ++i)
    for (std::size_t c = 0; c < n; ++c) {
      const double d = origin + (static_cast<double>(c) + 0.5) * step - coords[i];
      out[i * n + c] = norm * std::exp(-0.5 * d * d / (sigma * sigma));
    }
  return out;
}

// Raster of sum_i weight_i K(u - x_i); the gaussian case uses the separable
// product form.
Raster kernel_sum(const std::vector<Point2>& pts, const std::vector<double>& weights,
                  const KernelSpec& k, const PlanarWindow& w, GridDims dims)
{
  Raster out(w, dims);
  if (pts.empty())
    return out;
  if (k.family == KernelFamily::gaussian) {
    std::vector<double> xs, ys;
    for (auto p : pts) {
      xs.push_back(p.x);
      ys.push_back(p.y);
    }
    const auto fx = axis_factors(xs, w.xmin(), out.cell_width(), dims.nx, k.sigma);
    const auto fy = axis_factors(ys, w.ymin(), out.cell_height(), dims.ny, k.sigma);
    for (std::size_t iy = 0; iy < dims.ny; ++iy)
      for (std::size_t ix = 0; ix < dims.nx; ++ix) {
        double sum = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i)
          sum += weights[i] * fx[i * dims.nx + ix] * fy[i * dims.ny + iy];
        out(ix, iy) = sum;
      }
    return out;
  }
  for (std::size_t iy = 0; iy < dims.ny; ++iy)
    for (std::size_t ix = 0; ix < dims.nx; ++ix) {
      const Point2 u = out.cell_center(ix, iy);
      double sum = 0.0;
      for (std::size_t i = 0; i < pts.size(); ++i)
        sum += weights[i] * kernel_density(k, u.x - pts[i].x, u.y - pts[i].y);
      out(ix, iy) = sum;
    }
  return out;
}

} // namespace

const char* to_string(KernelFamily family) noexcept
{
  switch (family) {
  case KernelFamily::gaussian: return "gaussian";
  case KernelFamily::epanechnikov: return "epanechnikov";
  case KernelFamily::box: return "box";
  }
  return "unknown";
}

KernelFamily parse_kernel_family(const std::string& name)
{
  if (name == "gaussian")
    return KernelFamily::gaussian;
  if (name == "epanechnikov")
    return KernelFamily::epanechnikov;
  if (name == "box")
    return KernelFamily::box;
  fail(ErrorCode::invalid_argument, "unknown kernel family '" + name + "'");
}

const char* to_string(IntensityMethod method) noexcept
{
  switch (method) {
  case IntensityMethod::uniform: return "uniform";
  case IntensityMethod::jones_diggle: return "jones-diggle";
  case IntensityMethod::heat: return "heat";
  }
  return "unknown";
}

void KernelSpec::validate() const
{
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    fail(ErrorCode::invalid_argument, "kernel bandwidth must be positive");
}

double kernel_density(const KernelSpec& k, double dx, double dy) noexcept
{
  const double s2 = k.sigma * k.sigma;
  const double d2 = dx * dx + dy * dy;
  switch (k.family) {
  case KernelFamily::gaussian:
    return std::exp(-0.5 * d2 / s2) / (2.0 * std::numbers::pi * s2);
  case KernelFamily::epanechnikov:
    return d2 <= s2 ? 2.0 / (std::numbers::pi * s2) * (1.0 - d2 / s2) : 0.0;
  case KernelFamily::box:
    return d2 <= s2 ? 1.0 / (std::numbers::pi * s2) : 0.0;
  }
  return 0.0;
}

double kernel_mass(const KernelSpec& k, const PlanarWindow& w, Point2 u)
{
  k.validate();
  if (!w.contains(u))
    fail(ErrorCode::point_outside_window, "kernel mass requested outside the window");
  if (k.family == KernelFamily::gaussian) {
    const double mx = normal_interval_mass(w.xmin() - u.x, w.xmax() - u.x, k.sigma);
    const double my = normal_interval_mass(w.ymin() - u.y, w.ymax() - u.y, k.sigma);
    return mx * my;
  }
  return compact_kernel_mass(k, w, u);
}

Raster::Raster(PlanarWindow window, GridDims dims, std::vector<double> values)
    : window_(window), dims_(dims), values_(std::move(values))
{
  if (dims.nx == 0 || dims.ny == 0)
    fail(ErrorCode::invalid_argument, "raster dimensions must be positive");
  if (values_.empty())
    values_.assign(dims.nx * dims.ny, 0.0);
  if (values_.size() != dims.nx * dims.ny)
    fail(ErrorCode::invalid_argument, "raster value count does not match its dimensions");
}

Point2 Raster::cell_center(std::size_t ix, std::size_t iy) const noexcept
{
  return {window_.xmin() + (static_cast<double>(ix) + 0.5) * cell_width(),
          window_.ymin() + (static_cast<double>(iy) + 0.5) * cell_height()};
}

double Raster::at(Point2 u) const noexcept
{
  const auto locate = [](double coord, double origin, double step, std::size_t n) {
    double f = (coord - origin) / step - 0.5;
    f = std::clamp(f, 0.0, static_cast<double>(n - 1));
    auto i0 = static_cast<std::size_t>(std::floor(f));
    if (i0 >= n - 1)
      i0 = (n > 1) ? n - 2 : 0;
    const double t = (n > 1) ? f - static_cast<double>(i0) : 0.0;
    return std::pair{i0, t};
  };
  const auto [ix, tx] = locate(u.x, window_.xmin(), cell_width(), dims_.nx);
  const auto [iy, ty] = locate(u.y, window_.ymin(), cell_height(), dims_.ny);
  const std::size_t jx = std::min(ix + 1, dims_.nx - 1);
  const std::size_t jy = std::min(iy + 1, dims_.ny - 1);
  const double v = (1 - tx) * (1 - ty) * (*this)(ix, iy) + tx * (1 - ty) * (*this)(jx, iy) +
                   (1 - tx) * ty * (*this)(ix, jy) + tx * ty * (*this)(jx, jy);
  return std::max(v, 0.0);
}

double Raster::integral() const noexcept
{
  double sum = 0.0;
  for (double v : values_)
    sum += v;
  return sum * cell_area();
}

double Raster::max_value() const noexcept
{
  return *std::max_element(values_.begin(), values_.end());
}

double IntensityEstimate::floor_value() const noexcept
{
  return 1e-12 * static_cast<double>(point_count) / raster.window().area();
}

double IntensityEstimate::at_floored(Point2 u) const noexcept
{
  return std::max(at(u), floor_value());
}

IntensityFn constant_intensity(double value)
{
  return [value](const Location&) { return value; };
}

IntensityFn as_intensity_fn(IntensityEstimate estimate)
{
  auto shared = std::make_shared<const IntensityEstimate>(std::move(estimate));
  return [shared](const Location& loc) {
    const auto* u = std::get_if<Point2>(&loc);
    if (!u)
      fail(ErrorCode::mixed_domain, "planar intensity evaluated at a network location");
    return shared->at_floored(*u);
  };
}

IntensityFn homogeneous_intensity(const MarkedPointPattern& p)
{
  return constant_intensity(static_cast<double>(p.size()) / p.domain_measure());
}

double uniform_intensity_at(const MarkedPointPattern& p, const KernelSpec& k, Point2 u)
{
  const auto& w = p.window();
  double sum = 0.0;
  for (const auto& pt : p.points()) {
    const auto x = std::get<Point2>(pt.location);
    sum += kernel_density(k, u.x - x.x, u.y - x.y);
  }
  return sum / kernel_mass(k, w, u);
}

IntensityEstimate intensity_uniform(const MarkedPointPattern& p, const KernelSpec& k, GridDims dims)
{
  k.validate();
  check_grid(dims);
  const auto& w = p.window();
  const auto pts = p.planar_locations();
  Raster r = kernel_sum(pts, std::vector<double>(pts.size(), 1.0), k, w, dims);
  if (!pts.empty())
    for (std::size_t iy = 0; iy < dims.ny; ++iy)
      for (std::size_t ix = 0; ix < dims.nx; ++ix)
        r(ix, iy) /= kernel_mass(k, w, r.cell_center(ix, iy));
  return {std::move(r), IntensityMethod::uniform, k.family, k.sigma, pts.size()};
}

IntensityEstimate intensity_jones_diggle(const MarkedPointPattern& p, const KernelSpec& k,
                                         GridDims dims)
{
  k.validate();
  check_grid(dims);
  const auto& w = p.window();
  const auto pts = p.planar_locations();
  std::vector<double> weights;
  weights.reserve(pts.size());
  for (auto x : pts)
    weights.push_back(1.0 / kernel_mass(k, w, x));
  Raster r = kernel_sum(pts, weights, k, w, dims);
  return {std::move(r), IntensityMethod::jones_diggle, k.family, k.sigma, pts.size()};
}

} // namespace markedpoints
