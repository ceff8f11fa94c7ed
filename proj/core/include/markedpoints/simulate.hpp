#pragma once

#include "markedpoints/intensity.hpp"
#include "markedpoints/network.hpp"
#include "markedpoints/pattern.hpp"
#include "markedpoints/random.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace markedpoints {

/// Homogeneous Poisson process: N ~ Poisson(lambda |W|), uniform locations.
MarkedPointPattern poisson_planar(double lambda, const PlanarWindow& w, Rng& rng,
                                  std::optional<std::string> type = std::nullopt);

/// Inhomogeneous Poisson by thinning a homogeneous process at lambda_max.
/// All candidate locations are drawn before the thinning uniforms, so
/// lambda == lambda_max reproduces the homogeneous pattern exactly.
/// Throws `missing_upper_bound` without lambda_max.
MarkedPointPattern poisson_planar(const std::function<double(Point2)>& lambda,
                                  std::optional<double> lambda_max, const PlanarWindow& w,
                                  Rng& rng, std::optional<std::string> type = std::nullopt);

/// Poisson process with rate lambda per unit length.
MarkedPointPattern poisson_network(double lambda, NetworkPtr net, Rng& rng,
                                   std::optional<std::string> type = std::nullopt);

MarkedPointPattern poisson_network(const std::function<double(const NetworkLocation&)>& lambda,
                                   std::optional<double> lambda_max, NetworkPtr net, Rng& rng,
                                   std::optional<std::string> type = std::nullopt);

/// Gaussian field on a network whose covariance is a function of the
/// distances of the two locations to an anchor point.
struct GaussianFieldSpec
{
  std::function<double(const NetworkLocation&)> mean;
  std::function<double(double, double)> covariance;
  NetworkLocation anchor;
  /// Diagonal jitter; defaults to 1e-8 times the largest variance.
  std::optional<double> nugget;
};

/// Default discretisation step for the LGCP sampler: total length / 500.
double default_lgcp_step(const LinearNetwork& net) noexcept;

/// Log-Gaussian Cox process on a network. The covariance matrix on the
/// arc-length cells is factorised once at construction.
class LgcpNetworkSampler
{
public:
  /// Throws `asymmetric_covariance` or `non_psd_covariance`.
  LgcpNetworkSampler(GaussianFieldSpec spec, NetworkPtr net, double step);
  ~LgcpNetworkSampler();
  LgcpNetworkSampler(LgcpNetworkSampler&&) noexcept;
  LgcpNetworkSampler& operator=(LgcpNetworkSampler&&) noexcept;

  std::size_t cell_count() const noexcept;
  const std::vector<NetworkLocation>& cell_centers() const noexcept;
  const std::vector<double>& cell_lengths() const noexcept;

  /// One draw of the Gaussian field at the cell centres.
  std::vector<double> sample_field(Rng& rng) const;
  MarkedPointPattern sample(Rng& rng) const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

MarkedPointPattern lgcp_network(const GaussianFieldSpec& spec, NetworkPtr net, double step,
                                Rng& rng);

struct IrmpsReport
{
  double max_discrepancy = 0.0;
  std::size_t samples = 0;
  bool anchor_free = true; // max_discrepancy <= 1e-9
};

/// Compares the covariance induced through the spec's anchor with the one
/// induced through a second, random anchor on random location pairs.
IrmpsReport irmps_check(const GaussianFieldSpec& spec, const LinearNetwork& net,
                        std::size_t samples, Rng& rng);

enum class CoxKind
{
  linked,   // Z1 = nu Z2
  balanced, // Z1 = nu - Z2
};

/// Draws one realisation of a nonnegative planar random field as a raster.
using FieldSampler = std::function<Raster(Rng&)>;

enum class FieldTransform
{
  exponential, // exp(G)
  probit,      // bound * Phi(G), values in [0, bound]
};

/// Gaussian field with exponential covariance variance * exp(-d / scale) on a
/// raster over w (at most 48 x 48 cells), transformed to be nonnegative.
FieldSampler gaussian_field_sampler(const PlanarWindow& w, GridDims dims, double mean,
                                    double variance, double scale, FieldTransform transform,
                                    double bound = 1.0);

struct CoxRealization
{
  MarkedPointPattern pattern; // types "1" and "2"
  Raster z1;
  Raster z2;
};

/// Throws `balanced_range` if the base field exceeds nu anywhere on its grid.
CoxRealization linked_balanced_cox(CoxKind kind, double nu, const FieldSampler& base,
                                   const PlanarWindow& w, Rng& rng);

enum class MarkModel
{
  I,   // linear trend in x + y plus gaussian noise
  II,  // shortest-path distance to the nearest degree-1 vertex
  III, // number of other points closer than `radius`
};

const char* to_string(MarkModel m) noexcept;

struct MarkModelParams
{
  double intercept = 0.0;
  double slope = 1.0;
  /// Noise sd; defaults to 0.1 * |slope| * (range of x + y over the vertices).
  std::optional<double> noise_sd;
  double radius = 80.0;
};

/// Attach Model I, II or III marks to a network pattern.
/// Throws `no_leaf_vertices` for Model II on networks without leaves.
MarkedPointPattern model_marks(MarkModel kind, const MarkedPointPattern& base,
                               const MarkModelParams& params, Rng& rng);

/// Deterministic dendrite-like tree: five primary branches from a central
/// vertex, each bifurcating three times.
LinearNetwork synthetic_tree_network();

} // namespace markedpoints
