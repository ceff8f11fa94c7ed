#include "markedpoints/errors.hpp"
#include "markedpoints/intensity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace markedpoints {

namespace {

double normal_cdf(double z) noexcept
{
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

// Integral over t in [t0, t1] of phi_sigma(min(c1 + t, c2 - t)) where both
// branches are nonnegative on the interval.
double tent_integral(double c1, double c2, double t0, double t1, double sigma)
{
  if (!(t1 > t0))
    return 0.0;
  const double split = std::clamp(0.5 * (c2 - c1), t0, t1);
  double total = 0.0;
  // Rising branch: distance c1 + t for t in [t0, split].
  total += normal_cdf((c1 + split) / sigma) - normal_cdf((c1 + t0) / sigma);
  // Falling branch: distance c2 - t for t in [split, t1].
  total += normal_cdf((c2 - split) / sigma) - normal_cdf((c2 - t1) / sigma);
  return total;
}

double mass_from(const LinearNetwork& net, std::span<const double> dist, const NetworkLocation& u,
                 double sigma)
{
  double total = 0.0;
  for (std::size_t s = 0; s < net.segment_count(); ++s) {
    const auto& seg = net.segments()[s];
    const double len = net.segment_length(s);
    if (s == u.segment) {
      const double pos = u.offset * len;
      total += tent_integral(dist[seg.a], pos, 0.0, pos, sigma);
      total += tent_integral(-pos, dist[seg.b] + len, pos, len, sigma);
    } else {
      total += tent_integral(dist[seg.a], dist[seg.b] + len, 0.0, len, sigma);
    }
  }
  return total;
}

double gaussian_1d(double d, double sigma) noexcept
{
  return std::exp(-0.5 * d * d / (sigma * sigma)) / (std::sqrt(2.0 * std::numbers::pi) * sigma);
}

} // namespace

double network_kernel_mass(const LinearNetwork& net, const NetworkLocation& u, double sigma)
{
  if (!(sigma > 0.0))
    fail(ErrorCode::invalid_argument, "network bandwidth must be positive");
  const auto dist = net.vertex_distances(u);
  return mass_from(net, dist, u, sigma);
}

NetworkIntensityEstimate::NetworkIntensityEstimate(const MarkedPointPattern& p, double sigma)
    : net_(std::get<NetworkPtr>(p.domain())), sigma_(sigma), sources_(p.network_locations())
{
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    fail(ErrorCode::invalid_argument, "network bandwidth must be positive");
  vertex_dist_.reserve(sources_.size());
  norms_.reserve(sources_.size());
  for (const auto& x : sources_) {
    vertex_dist_.push_back(net_->vertex_distances(x));
    norms_.push_back(mass_from(*net_, vertex_dist_.back(), x, sigma_));
  }
}

double NetworkIntensityEstimate::at(const NetworkLocation& v) const
{
  double sum = 0.0;
  for (std::size_t i = 0; i < sources_.size(); ++i) {
    const double d = net_->distance_via(vertex_dist_[i], sources_[i], v);
    sum += gaussian_1d(d, sigma_) / norms_[i];
  }
  return sum;
}

double NetworkIntensityEstimate::floor_value() const noexcept
{
  return 1e-12 * static_cast<double>(sources_.size()) / net_->total_length();
}

IntensityFn as_intensity_fn(std::shared_ptr<const NetworkIntensityEstimate> estimate)
{
  return [estimate](const Location& loc) {
    const auto* v = std::get_if<NetworkLocation>(&loc);
    if (!v)
      fail(ErrorCode::mixed_domain, "network intensity evaluated at a planar location");
    return std::max(estimate->at(*v), estimate->floor_value());
  };
}

} // namespace markedpoints
