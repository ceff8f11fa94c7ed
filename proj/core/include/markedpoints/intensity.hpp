#pragma once

#include "markedpoints/geometry.hpp"
#include "markedpoints/pattern.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace markedpoints {

enum class KernelFamily
{
  gaussian,
  epanechnikov,
  box,
};

const char* to_string(KernelFamily family) noexcept;
/// Throws `invalid_argument` for unknown names.
KernelFamily parse_kernel_family(const std::string& name);

/// Radially symmetric planar kernel. For gaussian, sigma is the standard
/// deviation per axis; for epanechnikov and box it is the support radius.
struct KernelSpec
{
  KernelFamily family = KernelFamily::gaussian;
  double sigma = 1.0;

  /// Throws `invalid_argument` unless sigma > 0.
  void validate() const;
};

double kernel_density(const KernelSpec& k, double dx, double dy) noexcept;

/// Mass of the kernel centred at u that falls inside w. Closed form for the
/// gaussian family, one-dimensional quadrature over an exact inner integral
/// for the compactly supported families.
double kernel_mass(const KernelSpec& k, const PlanarWindow& w, Point2 u);

struct GridDims
{
  std::size_t nx = 128;
  std::size_t ny = 128;
};

/// Cell-centred raster over a window; values stored row-major (y outer).
class Raster
{
public:
  Raster(PlanarWindow window, GridDims dims, std::vector<double> values = {});

  const PlanarWindow& window() const noexcept { return window_; }
  GridDims dims() const noexcept { return dims_; }
  double cell_width() const noexcept { return window_.width() / static_cast<double>(dims_.nx); }
  double cell_height() const noexcept { return window_.height() / static_cast<double>(dims_.ny); }
  double cell_area() const noexcept { return cell_width() * cell_height(); }
  Point2 cell_center(std::size_t ix, std::size_t iy) const noexcept;

  double& operator()(std::size_t ix, std::size_t iy) { return values_[iy * dims_.nx + ix]; }
  double operator()(std::size_t ix, std::size_t iy) const { return values_[iy * dims_.nx + ix]; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::vector<double>& values() noexcept { return values_; }

  /// Bilinear interpolation between cell centres, clamped to the outermost
  /// centres and floored at zero.
  double at(Point2 u) const noexcept;

  /// Midpoint-rule integral over the window.
  double integral() const noexcept;
  double max_value() const noexcept;

private:
  PlanarWindow window_;
  GridDims dims_;
  std::vector<double> values_;
};

enum class IntensityMethod
{
  uniform,
  jones_diggle,
  heat,
};

const char* to_string(IntensityMethod method) noexcept;

struct IntensityEstimate
{
  Raster raster;
  IntensityMethod method;
  KernelFamily kernel = KernelFamily::gaussian;
  double sigma = 0.0;
  std::size_t point_count = 0;

  double at(Point2 u) const noexcept { return raster.at(u); }
  /// Positive floor 1e-12 * N / |W| applied on top of at().
  double floor_value() const noexcept;
  double at_floored(Point2 u) const noexcept;
};

/// Intensity function used by the summary estimators.
using IntensityFn = std::function<double(const Location&)>;

IntensityFn constant_intensity(double value);
/// Floored bilinear evaluation of a raster estimate (planar locations only).
IntensityFn as_intensity_fn(IntensityEstimate estimate);
/// N / |domain| for the given pattern.
IntensityFn homogeneous_intensity(const MarkedPointPattern& p);

/// Uniformly corrected kernel estimate sum_i K(u - x_i) / c(u) per cell.
/// Throws `invalid_argument` for grids smaller than 16 x 16.
IntensityEstimate intensity_uniform(const MarkedPointPattern& p, const KernelSpec& k, GridDims dims);

/// Jones-Diggle estimate sum_i K(u - x_i) / c(x_i) per cell; conserves mass.
IntensityEstimate intensity_jones_diggle(const MarkedPointPattern& p, const KernelSpec& k,
                                         GridDims dims);

/// Exact uniformly corrected estimate at an arbitrary location (no raster).
double uniform_intensity_at(const MarkedPointPattern& p, const KernelSpec& k, Point2 u);

struct HeatOptions
{
  std::size_t steps = 128;
};

/// Diffusion estimate: point masses deposited by area-weighted splitting on
/// the four nearest cells, then heat flow with reflecting walls up to
/// t = sigma^2 using implicit alternating-direction steps.
/// Throws `grid_too_coarse` if sigma is below two cell widths.
IntensityEstimate intensity_heat(const MarkedPointPattern& p, double sigma, GridDims dims,
                                 HeatOptions options = {});

/// Deposit masses and run the diffusion on an existing raster; exposed for
/// tests of the discrete scheme. Returns the total mass after every step.
std::vector<double> heat_diffuse(Raster& density, double time, std::size_t steps);

struct ScottBandwidth
{
  double sigma_x = 0.0;
  double sigma_y = 0.0;
};

/// Per-axis rule of thumb s_k * N^(-1/6) with population standard deviation.
/// Throws `too_few_points` for N < 2 and `degenerate_bandwidth` if s_k = 0.
ScottBandwidth bandwidth_scott(const MarkedPointPattern& p);

struct CvlResult
{
  double sigma = 0.0;
  double criterion = 0.0;
  std::vector<double> candidates;
  std::vector<double> criteria;
};

/// Sum_i 1 / lambda_sigma(x_i) - |W| with the uniformly corrected estimator
/// evaluated exactly at the data points.
double cvl_criterion(const MarkedPointPattern& p, const KernelSpec& k);

/// Minimises |cvl_criterion| over `count` log-spaced bandwidths in [lo, hi];
/// ties go to the smaller bandwidth. Throws `empty_interval`.
CvlResult bandwidth_cvl(const MarkedPointPattern& p, double lo, double hi,
                        KernelFamily family = KernelFamily::gaussian, std::size_t count = 30);

/// Default search interval [0.01, 0.5] * min side.
CvlResult bandwidth_cvl(const MarkedPointPattern& p, KernelFamily family = KernelFamily::gaussian);

/// Kernel smoothing in shortest-path distance on a network. Each point's
/// gaussian contribution is divided by its total mass on the network, so the
/// estimate integrates to N over the network.
class NetworkIntensityEstimate
{
public:
  NetworkIntensityEstimate(const MarkedPointPattern& p, double sigma);

  double sigma() const noexcept { return sigma_; }
  std::size_t point_count() const noexcept { return sources_.size(); }
  const std::vector<double>& normalizers() const noexcept { return norms_; }

  double at(const NetworkLocation& v) const;
  double floor_value() const noexcept;

private:
  NetworkPtr net_;
  double sigma_;
  std::vector<NetworkLocation> sources_;
  std::vector<std::vector<double>> vertex_dist_;
  std::vector<double> norms_;
};

IntensityFn as_intensity_fn(std::shared_ptr<const NetworkIntensityEstimate> estimate);

/// Integral over the network of a 1-D gaussian (sd sigma) in the distance from u.
double network_kernel_mass(const LinearNetwork& net, const NetworkLocation& u, double sigma);

} // namespace markedpoints
