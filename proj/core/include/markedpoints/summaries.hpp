#pragma once

#include "markedpoints/intensity.hpp"
#include "markedpoints/pattern.hpp"
#include "markedpoints/test_functions.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace markedpoints {

/// `bins + 1` equally spaced values from 0 to rmax.
std::vector<double> uniform_r_grid(double rmax, std::size_t bins = 512);

/// A statistic tabulated on an r grid. Undefined values are NaN.
struct SummaryCurve
{
  std::string statistic;
  std::vector<double> r;
  std::vector<double> values;
  std::optional<std::vector<double>> theoretical;
  /// Free-form provenance written into the CSV header comment.
  std::map<std::string, std::string> attributes;
};

enum class EdgeCorrection
{
  none,
  translation, // |W| / |W intersect W_{x-y}|, rectangles only
};

const char* to_string(EdgeCorrection ec) noexcept;

/// Inhomogeneous cross-type K between two sub-patterns on the same domain.
/// Network domains use shortest-path distance, |W| = total length, and only
/// accept EdgeCorrection::none. Throws `zero_intensity`, `domain_mismatch`.
SummaryCurve k_cross_inhom(const MarkedPointPattern& pi, const MarkedPointPattern& pj,
                           const IntensityFn& lambda_i, const IntensityFn& lambda_j,
                           EdgeCorrection ec, std::span<const double> r);

/// Dot-type K: i-points against the union of all other points.
SummaryCurve k_dot_inhom(const MarkedPointPattern& pi, const MarkedPointPattern& others,
                         const IntensityFn& lambda_i, const IntensityFn& lambda_others,
                         EdgeCorrection ec, std::span<const double> r);

/// Unmarked inhomogeneous K over ordered pairs x != y.
SummaryCurve k_inhom(const MarkedPointPattern& p, const IntensityFn& lambda, EdgeCorrection ec,
                     std::span<const double> r);

/// Mark-weighted K normalised by the sample average of t_f over ordered
/// pairs. Throws `degenerate_normalization` when that average is zero.
SummaryCurve mark_weighted_k(const MarkedPointPattern& p, const TestFunction& tf,
                             const IntensityFn& lambda, EdgeCorrection ec,
                             std::span<const double> r);

/// Inhomogeneous cross-type nearest-neighbour distribution with border
/// (minus-sampling) correction; planar only. `inf_lambda_j` defaults to the
/// minimum of lambda_j over the j-points; a larger override throws
/// `invalid_normalization`. NaN where no i-point survives erosion.
SummaryCurve h_cross_inhom(const MarkedPointPattern& pi, const MarkedPointPattern& pj,
                           const IntensityFn& lambda_i, const IntensityFn& lambda_j,
                           std::optional<double> inf_lambda_j, std::span<const double> r);

/// Default spacing of the empty-space grid: min side / 128.
double default_grid_spacing(const PlanarWindow& w) noexcept;

/// Inhomogeneous empty-space function on a cell-centred grid of the given
/// spacing; NaN where no grid point survives erosion.
SummaryCurve f_inhom(const MarkedPointPattern& pj, const IntensityFn& lambda_j,
                     std::optional<double> inf_lambda_j, std::optional<double> grid_spacing,
                     std::span<const double> r);

/// (1 - H) / (1 - F); NaN where F >= 1 - 1e-12 or either input is NaN.
/// Throws `grid_mismatch` when the r grids differ.
SummaryCurve j_cross_inhom(const SummaryCurve& h, const SummaryCurve& f);

/// Mean mark of the other points within distance r of each point (NaN when
/// there are none).
std::vector<double> mark_sum_measure(const MarkedPointPattern& p, double r);

} // namespace markedpoints
