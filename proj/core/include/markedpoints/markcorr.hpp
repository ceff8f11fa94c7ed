#pragma once

#include "markedpoints/summaries.hpp"
#include "markedpoints/test_functions.hpp"

#include <span>
#include <string>

namespace markedpoints {

enum class SmoothingKernel
{
  epanechnikov,
  gaussian,
  box,
};

SmoothingKernel parse_smoothing_kernel(const std::string& name);
const char* to_string(SmoothingKernel k) noexcept;

struct SmoothingSpec1D
{
  SmoothingKernel kernel = SmoothingKernel::epanechnikov;
  double bandwidth = 1.0;

  double operator()(double t) const noexcept;
  /// Half-width beyond which the kernel is exactly zero in double precision.
  double support() const noexcept;
};

/// 0.3 times the mean nearest-neighbour distance of a Poisson pattern of the
/// same intensity: 0.15 / sqrt(N / |W|) in the plane, 0.15 * L / N on a network.
double default_markcorr_bandwidth(const MarkedPointPattern& p);

enum class MarkCorrEdge
{
  none,
  symmetric_weight, // 1 / |W intersect W_{x-y}|, rectangles only
};

struct MarkCorrResult
{
  SummaryCurve curve;     // kernel-weighted mean of t_f divided by c_tf
  SummaryCurve numerator; // kernel-weighted mean of t_f, unnormalised
  Normalization normalization;
};

/// Kernel ratio estimator of the t_f-correlation function. A degenerate
/// normalisation yields a NaN curve with the raw numerator still reported.
MarkCorrResult mark_corr(const MarkedPointPattern& p, const TestFunction& tf,
                         const SmoothingSpec1D& smoothing, std::span<const double> r,
                         MarkCorrEdge ec = MarkCorrEdge::none,
                         NormalizationRule rule = NormalizationRule::sample_average);

/// Same, reusing a precomputed interpoint distance matrix.
MarkCorrResult mark_corr(const MarkedPointPattern& p, const DistanceMatrix& distances,
                         const TestFunction& tf, const SmoothingSpec1D& smoothing,
                         std::span<const double> r, MarkCorrEdge ec = MarkCorrEdge::none,
                         NormalizationRule rule = NormalizationRule::sample_average);

struct MarkCorrSuite
{
  MarkCorrResult stoyan;
  MarkCorrResult variogram;
  MarkCorrResult shimantani;
  MarkCorrResult beisbart_kerscher;
};

/// The four built-in test functions with shared smoothing and distances.
MarkCorrSuite mark_corr_suite(const MarkedPointPattern& p, const SmoothingSpec1D& smoothing,
                              std::span<const double> r, MarkCorrEdge ec = MarkCorrEdge::none,
                              NormalizationRule rule = NormalizationRule::sample_average);

} // namespace markedpoints
