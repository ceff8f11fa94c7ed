#include "markedpoints/markcorr.hpp"

#include "markedpoints/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace markedpoints {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

// Gaussian weights below exp(-39^2 / 2) underflow to zero.
constexpr double gaussian_cutoff = 39.0;

} // namespace

double TestFunction::operator()(double m1, double m2, double mean) const
{
  switch (kind) {
  case TestFunctionKind::stoyan: return m1 * m2;
  case TestFunctionKind::beisbart_kerscher: return m1 + m2;
  case TestFunctionKind::variogram: return 0.5 * (m1 - m2) * (m1 - m2);
  case TestFunctionKind::shimantani: return (m1 - mean) * (m2 - mean);
  case TestFunctionKind::custom:
    if (!custom)
      fail(ErrorCode::invalid_argument, "custom test function is empty");
    return custom(m1, m2);
  }
  return nan;
}

TestFunction parse_test_function(const std::string& name)
{
  if (name == "stoyan")
    return TestFunction::stoyan();
  if (name == "bk")
    return TestFunction::beisbart_kerscher();
  if (name == "vario")
    return TestFunction::variogram();
  if (name == "shimantani")
    return TestFunction::shimantani();
  fail(ErrorCode::invalid_argument, "unknown test function '" + name + "'");
}

PairWeights pair_weights(const TestFunction& tf, std::span<const double> marks,
                         const MarkSummaryStats& stats)
{
  if (tf.kind == TestFunctionKind::shimantani && !(stats.variance > 0.0))
    fail(ErrorCode::zero_variance, "Shimantani's I needs marks with positive variance");
  const std::size_t n = marks.size();
  PairWeights w{n, std::vector<double>(n * n, 0.0)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j)
        w.values[i * n + j] = tf(marks[i], marks[j], stats.mean);
  return w;
}

Normalization normalization(const TestFunction& tf, std::span<const double> marks,
                            NormalizationRule rule)
{
  if (marks.size() < 2)
    fail(ErrorCode::too_few_points, "normalisation needs at least two marked points");
  const auto stats = mark_moments(marks);
  const bool classical = rule == NormalizationRule::classical;
  Normalization out;
  if (tf.kind == TestFunctionKind::shimantani ||
      (classical && tf.kind == TestFunctionKind::variogram)) {
    out.value = stats.variance;
  } else if (classical && tf.kind == TestFunctionKind::stoyan) {
    out.value = stats.mean * stats.mean;
  } else if (classical && tf.kind == TestFunctionKind::beisbart_kerscher) {
    out.value = 2.0 * stats.mean;
  } else {
    double sum = 0.0;
    const std::size_t n = marks.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j)
          sum += tf(marks[i], marks[j], stats.mean);
    out.value = sum / static_cast<double>(n * (n - 1));
  }
  out.degenerate = !(out.value != 0.0) || !std::isfinite(out.value);
  return out;
}

SmoothingKernel parse_smoothing_kernel(const std::string& name)
{
  if (name == "epanechnikov")
    return SmoothingKernel::epanechnikov;
  if (name == "gaussian")
    return SmoothingKernel::gaussian;
  if (name == "box")
    return SmoothingKernel::box;
  fail(ErrorCode::invalid_argument, "unknown smoothing kernel '" + name + "'");
}

const char* to_string(SmoothingKernel k) noexcept
{
  switch (k) {
  case SmoothingKernel::epanechnikov: return "epanechnikov";
  case SmoothingKernel::gaussian: return "gaussian";
  case SmoothingKernel::box: return "box";
  }
  return "unknown";
}

double SmoothingSpec1D::operator()(double t) const noexcept
{
  const double h = bandwidth;
  const double u = t / h;
  switch (kernel) {
  case SmoothingKernel::epanechnikov:
    return std::abs(u) <= 1.0 ? 0.75 * (1.0 - u * u) / h : 0.0;
  case SmoothingKernel::box:
    return std::abs(u) <= 1.0 ? 0.5 / h : 0.0;
  case SmoothingKernel::gaussian:
    return std::exp(-0.5 * u * u) / (std::sqrt(2.0 * std::numbers::pi) * h);
  }
  return 0.0;
}

double SmoothingSpec1D::support() const noexcept
{
  return kernel == SmoothingKernel::gaussian ? gaussian_cutoff * bandwidth : bandwidth;
}

double default_markcorr_bandwidth(const MarkedPointPattern& p)
{
  if (p.empty())
    fail(ErrorCode::too_few_points, "bandwidth rule needs at least one point");
  const double n = static_cast<double>(p.size());
  if (p.on_network())
    return 0.15 * p.domain_measure() / n;
  return 0.15 / std::sqrt(n / p.domain_measure());
}

MarkCorrResult mark_corr(const MarkedPointPattern& p, const DistanceMatrix& distances,
                         const TestFunction& tf, const SmoothingSpec1D& smoothing,
                         std::span<const double> r, MarkCorrEdge ec, NormalizationRule rule)
{
  if (r.empty())
    fail(ErrorCode::invalid_argument, "r grid is empty");
  if (!(smoothing.bandwidth > 0.0) || !std::isfinite(smoothing.bandwidth))
    fail(ErrorCode::invalid_argument, "smoothing bandwidth must be positive");
  if (ec == MarkCorrEdge::symmetric_weight && p.on_network())
    fail(ErrorCode::invalid_argument, "symmetric edge weights are only defined for rectangles");
  const auto marks = p.marks();
  const std::size_t n = marks.size();
  if (n < 2)
    fail(ErrorCode::too_few_points, "mark correlation needs at least two marked points");
  if (distances.rows != n || distances.cols != n)
    fail(ErrorCode::invalid_argument, "distance matrix does not match the pattern");
  const auto stats = mark_moments(marks);
  const auto norm = normalization(tf, marks, rule);

  std::vector<Point2> locs;
  if (ec == MarkCorrEdge::symmetric_weight)
    locs = p.planar_locations();

  std::vector<double> num(r.size(), 0.0), den(r.size(), 0.0);
  const double reach = smoothing.support();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = distances(i, j);
      const double t = tf(marks[i], marks[j], stats.mean) + tf(marks[j], marks[i], stats.mean);
      double w = 1.0;
      if (ec == MarkCorrEdge::symmetric_weight) {
        const auto& win = p.window();
        w = 1.0 / translated_overlap_area(win, locs[i].x - locs[j].x, locs[i].y - locs[j].y);
      }
      const auto first = std::lower_bound(r.begin(), r.end(), d - reach);
      for (auto it = first; it != r.end() && *it <= d + reach; ++it) {
        const double kw = smoothing(d - *it) * w;
        if (kw == 0.0)
          continue;
        const auto k = static_cast<std::size_t>(it - r.begin());
        num[k] += t * kw;
        den[k] += 2.0 * kw;
      }
    }

  MarkCorrResult out;
  out.normalization = norm;
  out.curve.statistic = tf.label;
  out.numerator.statistic = tf.label + "_numerator";
  out.curve.r.assign(r.begin(), r.end());
  out.numerator.r = out.curve.r;
  out.curve.values.assign(r.size(), nan);
  out.numerator.values.assign(r.size(), nan);
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (!(den[k] >= 1e-12))
      continue;
    const double raw = num[k] / den[k];
    out.numerator.values[k] = raw;
    if (!norm.degenerate)
      out.curve.values[k] = raw / norm.value;
  }
  for (auto* c : {&out.curve, &out.numerator}) {
    c->attributes["smoothing_kernel"] = to_string(smoothing.kernel);
    std::ostringstream os;
    os.precision(17);
    os << smoothing.bandwidth;
    c->attributes["bandwidth"] = os.str();
    c->attributes["edge_correction"] = ec == MarkCorrEdge::none ? "none" : "symmetric";
  }
  std::ostringstream os;
  os.precision(17);
  os << norm.value;
  out.curve.attributes["normalization"] = os.str();
  out.curve.attributes["normalization_rule"] =
      rule == NormalizationRule::classical ? "classical" : "sample_average";
  if (norm.degenerate)
    out.curve.attributes["degenerate"] = "true";
  out.curve.theoretical = std::vector<double>(r.size(), tf.kind == TestFunctionKind::shimantani ? 0.0 : 1.0);
  return out;
}

MarkCorrResult mark_corr(const MarkedPointPattern& p, const TestFunction& tf,
                         const SmoothingSpec1D& smoothing, std::span<const double> r,
                         MarkCorrEdge ec, NormalizationRule rule)
{
  return mark_corr(p, pairwise_distances(p), tf, smoothing, r, ec, rule);
}

MarkCorrSuite mark_corr_suite(const MarkedPointPattern& p, const SmoothingSpec1D& smoothing,
                              std::span<const double> r, MarkCorrEdge ec, NormalizationRule rule)
{
  const auto distances = pairwise_distances(p);
  return {mark_corr(p, distances, TestFunction::stoyan(), smoothing, r, ec, rule),
          mark_corr(p, distances, TestFunction::variogram(), smoothing, r, ec, rule),
          mark_corr(p, distances, TestFunction::shimantani(), smoothing, r, ec, rule),
          mark_corr(p, distances, TestFunction::beisbart_kerscher(), smoothing, r, ec, rule)};
}

} // namespace markedpoints
