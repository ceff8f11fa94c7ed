#include "markedpoints/simulate.hpp"

#include "markedpoints/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace markedpoints {

namespace {

void check_rate(double lambda)
{
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    fail(ErrorCode::invalid_argument, "intensity must be finite and nonnegative");
}

// Covariance factor K such that K * xi ~ N(0, A); A = P^T L D L^T P.
struct Factor
{
  Eigen::MatrixXd lower;
  Eigen::VectorXd sqrt_d;
  Eigen::Transpositions<Eigen::Dynamic> perm;

  Factor(const Eigen::MatrixXd& cov, double nugget)
  {
    Eigen::MatrixXd a = cov;
    a.diagonal().array() += nugget;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
    if (ldlt.info() != Eigen::Success)
      fail(ErrorCode::non_psd_covariance, "covariance factorisation failed");
    const Eigen::VectorXd d = ldlt.vectorD();
    const double scale = std::max(a.diagonal().cwiseAbs().maxCoeff(), 1e-300);
    if (d.minCoeff() < -1e-10 * scale)
      fail(ErrorCode::non_psd_covariance,
           "covariance matrix is not positive semidefinite (pivot " +
               std::to_string(d.minCoeff()) + ")");
    sqrt_d = d.cwiseMax(0.0).cwiseSqrt();
    lower = ldlt.matrixL();
    perm = ldlt.transpositionsP();
  }

  Eigen::VectorXd apply(const Eigen::VectorXd& xi) const
  {
    Eigen::VectorXd x = lower * sqrt_d.cwiseProduct(xi);
    return perm.transpose() * x;
  }
};

Eigen::VectorXd standard_normals(Rng& rng, Eigen::Index n)
{
  Eigen::VectorXd xi(n);
  for (Eigen::Index i = 0; i < n; ++i)
    xi[i] = normal_draw(rng);
  return xi;
}

double normal_cdf(double z) noexcept
{
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

MarkedPointPattern thin_planar(const std::function<double(Point2)>& lambda, double lambda_max,
                               const PlanarWindow& w, Rng& rng,
                               const std::optional<std::string>& type)
{
  auto candidates = poisson_planar(lambda_max, w, rng, type);
  MarkedPointPattern out(w);
  for (const auto& p : candidates.points()) {
    const double u = uniform01(rng);
    const double value = lambda(std::get<Point2>(p.location));
    if (value > lambda_max * (1.0 + 1e-12))
      fail(ErrorCode::invalid_argument, "intensity exceeds its declared upper bound");
    if (u * lambda_max < value)
      out.push_back(p);
  }
  return out;
}

} // namespace

MarkedPointPattern poisson_planar(double lambda, const PlanarWindow& w, Rng& rng,
                                  std::optional<std::string> type)
{
  check_rate(lambda);
  const auto n = poisson_draw(rng, lambda * w.area());
  MarkedPointPattern out(w);
  out.points().reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double x = uniform(rng, w.xmin(), w.xmax());
    const double y = uniform(rng, w.ymin(), w.ymax());
    out.push_back({Point2{x, y}, type, std::nullopt});
  }
  return out;
}

MarkedPointPattern poisson_planar(const std::function<double(Point2)>& lambda,
                                  std::optional<double> lambda_max, const PlanarWindow& w,
                                  Rng& rng, std::optional<std::string> type)
{
  if (!lambda_max)
    fail(ErrorCode::missing_upper_bound, "inhomogeneous Poisson needs an intensity upper bound");
  check_rate(*lambda_max);
  return thin_planar(lambda, *lambda_max, w, rng, type);
}

MarkedPointPattern poisson_network(double lambda, NetworkPtr net, Rng& rng,
                                   std::optional<std::string> type)
{
  check_rate(lambda);
  const auto n = poisson_draw(rng, lambda * net->total_length());
  MarkedPointPattern out(net);
  out.points().reserve(n);
  for (std::uint64_t i = 0; i < n; ++i)
    out.push_back({uniform_point_on_network(*net, rng), type, std::nullopt});
  return out;
}

MarkedPointPattern poisson_network(const std::function<double(const NetworkLocation&)>& lambda,
                                   std::optional<double> lambda_max, NetworkPtr net, Rng& rng,
                                   std::optional<std::string> type)
{
  if (!lambda_max)
    fail(ErrorCode::missing_upper_bound, "inhomogeneous Poisson needs an intensity upper bound");
  auto candidates = poisson_network(*lambda_max, net, rng, type);
  MarkedPointPattern out(net);
  for (const auto& p : candidates.points()) {
    const double u = uniform01(rng);
    const double value = lambda(std::get<NetworkLocation>(p.location));
    if (value > *lambda_max * (1.0 + 1e-12))
      fail(ErrorCode::invalid_argument, "intensity exceeds its declared upper bound");
    if (u * *lambda_max < value)
      out.push_back(p);
  }
  return out;
}

double default_lgcp_step(const LinearNetwork& net) noexcept
{
  return net.total_length() / 500.0;
}

struct LgcpNetworkSampler::Impl
{
  GaussianFieldSpec spec;
  NetworkPtr net;
  std::vector<NetworkLocation> centers;
  std::vector<double> lengths;
  std::vector<std::size_t> cells_per_segment;
  Eigen::VectorXd mean;
  std::optional<Factor> factor;
};

LgcpNetworkSampler::LgcpNetworkSampler(GaussianFieldSpec spec, NetworkPtr net, double step)
    : impl_(std::make_unique<Impl>())
{
  if (!(step > 0.0) || !std::isfinite(step))
    fail(ErrorCode::invalid_argument, "discretisation step must be positive");
  if (!spec.covariance || !spec.mean)
    fail(ErrorCode::invalid_argument, "gaussian field needs mean and covariance functions");
  net->check_location(spec.anchor);
  auto& m = *impl_;
  m.spec = std::move(spec);
  m.net = std::move(net);
  for (std::size_t s = 0; s < m.net->segment_count(); ++s) {
    const double len = m.net->segment_length(s);
    const auto cells = static_cast<std::size_t>(std::max(1.0, std::ceil(len / step)));
    m.cells_per_segment.push_back(cells);
    for (std::size_t c = 0; c < cells; ++c) {
      m.centers.push_back({s, (static_cast<double>(c) + 0.5) / static_cast<double>(cells)});
      m.lengths.push_back(len / static_cast<double>(cells));
    }
  }
  const auto n = static_cast<Eigen::Index>(m.centers.size());
  const auto anchor_dist = m.net->vertex_distances(m.spec.anchor);
  std::vector<double> d(m.centers.size());
  for (std::size_t i = 0; i < m.centers.size(); ++i)
    d[i] = m.net->distance_via(anchor_dist, m.spec.anchor, m.centers[i]);

  Eigen::MatrixXd cov(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double cij = m.spec.covariance(d[i], d[j]);
      const double cji = m.spec.covariance(d[j], d[i]);
      if (!std::isfinite(cij) || std::abs(cij - cji) > 1e-12 * (1.0 + std::abs(cij)))
        fail(ErrorCode::asymmetric_covariance, "covariance function is not symmetric");
      cov(i, j) = cij;
      cov(j, i) = cij;
    }
  const double max_diag = n > 0 ? cov.diagonal().maxCoeff() : 0.0;
  const double nugget = m.spec.nugget.value_or(1e-8 * std::max(max_diag, 0.0));
  if (!(nugget >= 0.0))
    fail(ErrorCode::invalid_argument, "nugget must be nonnegative");
  m.factor.emplace(cov, nugget);
  m.mean.resize(n);
  for (Eigen::Index i = 0; i < n; ++i)
    m.mean[i] = m.spec.mean(m.centers[static_cast<std::size_t>(i)]);
}

LgcpNetworkSampler::~LgcpNetworkSampler() = default;
LgcpNetworkSampler::LgcpNetworkSampler(LgcpNetworkSampler&&) noexcept = default;
LgcpNetworkSampler& LgcpNetworkSampler::operator=(LgcpNetworkSampler&&) noexcept = default;

std::size_t LgcpNetworkSampler::cell_count() const noexcept { return impl_->centers.size(); }

const std::vector<NetworkLocation>& LgcpNetworkSampler::cell_centers() const noexcept
{
  return impl_->centers;
}

const std::vector<double>& LgcpNetworkSampler::cell_lengths() const noexcept
{
  return impl_->lengths;
}

std::vector<double> LgcpNetworkSampler::sample_field(Rng& rng) const
{
  const auto& m = *impl_;
  const Eigen::VectorXd z = m.mean + m.factor->apply(standard_normals(rng, m.mean.size()));
  return {z.data(), z.data() + z.size()};
}

MarkedPointPattern LgcpNetworkSampler::sample(Rng& rng) const
{
  const auto& m = *impl_;
  const auto z = sample_field(rng);
  MarkedPointPattern out(m.net);
  std::size_t cell = 0;
  for (std::size_t s = 0; s < m.cells_per_segment.size(); ++s) {
    const double cells = static_cast<double>(m.cells_per_segment[s]);
    for (std::size_t c = 0; c < m.cells_per_segment[s]; ++c, ++cell) {
      const auto count = poisson_draw(rng, std::exp(z[cell]) * m.lengths[cell]);
      for (std::uint64_t k = 0; k < count; ++k) {
        const double offset = (static_cast<double>(c) + uniform01(rng)) / cells;
        out.push_back({NetworkLocation{s, std::min(offset, 1.0)}, std::nullopt, std::nullopt});
      }
    }
  }
  return out;
}

MarkedPointPattern lgcp_network(const GaussianFieldSpec& spec, NetworkPtr net, double step,
                                Rng& rng)
{
  return LgcpNetworkSampler(spec, std::move(net), step).sample(rng);
}

IrmpsReport irmps_check(const GaussianFieldSpec& spec, const LinearNetwork& net,
                        std::size_t samples, Rng& rng)
{
  if (!spec.covariance)
    fail(ErrorCode::invalid_argument, "gaussian field needs a covariance function");
  IrmpsReport report;
  report.samples = samples;
  const auto anchor_dist = net.vertex_distances(spec.anchor);
  for (std::size_t s = 0; s < samples; ++s) {
    const auto u1 = uniform_point_on_network(net, rng);
    const auto u2 = uniform_point_on_network(net, rng);
    const auto other = uniform_point_on_network(net, rng);
    const double c_spec = spec.covariance(net.distance_via(anchor_dist, spec.anchor, u1),
                                          net.distance_via(anchor_dist, spec.anchor, u2));
    const double c_other =
        spec.covariance(network_distance(net, other, u1), network_distance(net, other, u2));
    report.max_discrepancy = std::max(report.max_discrepancy, std::abs(c_spec - c_other));
  }
  report.anchor_free = report.max_discrepancy <= 1e-9;
  return report;
}

FieldSampler gaussian_field_sampler(const PlanarWindow& w, GridDims dims, double mean,
                                    double variance, double scale, FieldTransform transform,
                                    double bound)
{
  if (dims.nx == 0 || dims.ny == 0 || dims.nx > 48 || dims.ny > 48)
    fail(ErrorCode::invalid_argument, "field raster must have between 1 and 48 cells per side");
  if (!(variance >= 0.0) || !(scale > 0.0) || !(bound > 0.0))
    fail(ErrorCode::invalid_argument, "field variance, scale and bound must be valid");
  const Raster grid(w, dims);
  const auto n = static_cast<Eigen::Index>(dims.nx * dims.ny);
  Eigen::MatrixXd cov(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) {
      const auto ua = grid.cell_center(static_cast<std::size_t>(a) % dims.nx,
                                       static_cast<std::size_t>(a) / dims.nx);
      const auto ub = grid.cell_center(static_cast<std::size_t>(b) % dims.nx,
                                       static_cast<std::size_t>(b) / dims.nx);
      cov(a, b) = variance * std::exp(-euclidean_distance(ua, ub) / scale);
    }
  auto factor = std::make_shared<const Factor>(cov, 1e-8 * std::max(variance, 0.0));
  return [=](Rng& rng) {
    const Eigen::VectorXd g = factor->apply(standard_normals(rng, n));
    Raster out(w, dims);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double v = mean + g[i];
      out.values()[static_cast<std::size_t>(i)] =
          transform == FieldTransform::exponential ? std::exp(v) : bound * normal_cdf(v);
    }
    return out;
  };
}

CoxRealization linked_balanced_cox(CoxKind kind, double nu, const FieldSampler& base,
                                   const PlanarWindow& w, Rng& rng)
{
  if (!(nu > 0.0) || !std::isfinite(nu))
    fail(ErrorCode::invalid_argument, "nu must be positive");
  Raster z2 = base(rng);
  if (!(z2.window() == w))
    fail(ErrorCode::domain_mismatch, "base field raster does not cover the window");
  Raster z1(w, z2.dims());
  for (std::size_t i = 0; i < z2.values().size(); ++i) {
    const double v = z2.values()[i];
    if (!(v >= 0.0))
      fail(ErrorCode::invalid_argument, "base field must be nonnegative");
    if (kind == CoxKind::balanced && v > nu)
      fail(ErrorCode::balanced_range, "base field exceeds nu for the balanced construction");
    z1.values()[i] = kind == CoxKind::linked ? nu * v : nu - v;
  }
  const auto sample = [&](const Raster& z, const char* type) {
    const double top = z.max_value();
    if (top <= 0.0)
      return MarkedPointPattern(w);
    return poisson_planar([&z](Point2 u) { return z.at(u); }, top, w, rng, std::string(type));
  };
  auto p1 = sample(z1, "1");
  auto p2 = sample(z2, "2");
  MarkedPointPattern pattern(w, p1.points());
  for (const auto& p : p2.points())
    pattern.push_back(p);
  return {std::move(pattern), std::move(z1), std::move(z2)};
}

} // namespace markedpoints
