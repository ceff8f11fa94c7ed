#include "markedpoints/errors.hpp"
#include "markedpoints/intensity.hpp"

#include <algorithm>
#include <cmath>

namespace markedpoints {

namespace {

// LU factors of the tridiagonal system (I - a L) with the reflecting
// (zero-flux) second-difference operator L on n cells.
struct Tridiagonal
{
  std::vector<double> lower;  // multipliers
  std::vector<double> diag;   // pivots
  double off = 0.0;

  Tridiagonal(std::size_t n, double coupling)
  {
    off = -coupling;
    lower.assign(n, 0.0);
    diag.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const bool edge = (i == 0 || i + 1 == n);
      double d = 1.0 + (n == 1 ? 0.0 : (edge ? coupling : 2.0 * coupling));
      if (i > 0) {
        lower[i] = off / diag[i - 1];
        d -= lower[i] * off;
      }
      diag[i] = d;
    }
  }

  // In-place solve on a strided line.
  void solve(double* x, std::size_t stride) const
  {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i)
      x[i * stride] -= lower[i] * x[(i - 1) * stride];
    x[(n - 1) * stride] /= diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
      x[i * stride] = (x[i * stride] - off * x[(i + 1) * stride]) / diag[i];
  }
};

} // namespace

std::vector<double> heat_diffuse(Raster& density, double time, std::size_t steps)
{
  if (steps == 0)
    fail(ErrorCode::invalid_argument, "heat diffusion needs at least one step");
  if (!(time >= 0.0))
    fail(ErrorCode::invalid_argument, "diffusion time must be nonnegative");
  const auto dims = density.dims();
  const double dt = time / static_cast<double>(steps);
  const double hx = density.cell_width();
  const double hy = density.cell_height();
  // d(lambda)/dt = (1/2) Laplacian, split into x then y implicit sweeps.
  const Tridiagonal sx(dims.nx, 0.5 * dt / (hx * hx));
  const Tridiagonal sy(dims.ny, 0.5 * dt / (hy * hy));

  auto& v = density.values();
  std::vector<double> masses;
  masses.reserve(steps);
  for (std::size_t step = 0; step < steps; ++step) {
    for (std::size_t iy = 0; iy < dims.ny; ++iy)
      sx.solve(v.data() + iy * dims.nx, 1);
    for (std::size_t ix = 0; ix < dims.nx; ++ix)
      sy.solve(v.data() + ix, dims.nx);
    masses.push_back(density.integral());
  }
  return masses;
}

IntensityEstimate intensity_heat(const MarkedPointPattern& p, double sigma, GridDims dims,
                                 HeatOptions options)
{
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    fail(ErrorCode::invalid_argument, "heat bandwidth must be positive");
  if (dims.nx < 16 || dims.ny < 16)
    fail(ErrorCode::invalid_argument, "intensity grids must be at least 16 x 16");
  const auto& w = p.window();
  Raster r(w, dims);
  if (sigma < 2.0 * std::max(r.cell_width(), r.cell_height()))
    fail(ErrorCode::grid_too_coarse, "heat bandwidth is below two cell widths");

  const double inv_area = 1.0 / r.cell_area();
  const auto split = [](double coord, double origin, double step, std::size_t n) {
    const double f = std::clamp((coord - origin) / step - 0.5, 0.0, static_cast<double>(n - 1));
    auto i0 = static_cast<std::size_t>(std::floor(f));
    if (i0 >= n - 1)
      i0 = n - 2;
    return std::pair{i0, f - static_cast<double>(i0)};
  };
  for (auto x : p.planar_locations()) {
    const auto [ix, tx] = split(x.x, w.xmin(), r.cell_width(), dims.nx);
    const auto [iy, ty] = split(x.y, w.ymin(), r.cell_height(), dims.ny);
    r(ix, iy) += (1 - tx) * (1 - ty) * inv_area;
    r(ix + 1, iy) += tx * (1 - ty) * inv_area;
    r(ix, iy + 1) += (1 - tx) * ty * inv_area;
    r(ix + 1, iy + 1) += tx * ty * inv_area;
  }
  heat_diffuse(r, sigma * sigma, options.steps);
  return {std::move(r), IntensityMethod::heat, KernelFamily::gaussian, sigma, p.size()};
}

} // namespace markedpoints
