#pragma once

#include "markedpoints/pattern.hpp"
#include "markedpoints/random.hpp"
#include "markedpoints/summaries.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace markedpoints {

/// Pointwise rank envelope of a statistic over simulated replicates.
struct EnvelopeBand
{
  std::string statistic;
  std::vector<double> r;
  std::vector<double> lo;
  std::vector<double> hi;
  std::vector<double> mean;
  /// Number of replicates with a defined value at each r.
  std::vector<std::size_t> n_effective;
  std::size_t nsim = 0;
  double level = 0.95;
  std::size_t rank = 0;
  /// Grid indices where every replicate was NaN.
  std::vector<std::size_t> all_nan;
  std::optional<std::vector<double>> observed;
};

/// k = floor((1 - level) / 2 * (nsim + 1)). Throws `invalid_envelope` when
/// k < 1 or level is outside (0, 1).
std::size_t envelope_rank(std::size_t nsim, double level);

/// lo and hi are the k-th smallest and k-th largest defined values at each r,
/// with k recomputed from the effective count (never below 1); mean is the
/// average of the defined values. Throws `grid_mismatch` on ragged input.
EnvelopeBand band_from_replicates(std::string statistic, std::vector<double> r,
                                  const std::vector<std::vector<double>>& replicates,
                                  double level);

using PatternGenerator = std::function<MarkedPointPattern(Rng&)>;
/// One or more curves on a fixed r grid; envelopes are formed per curve.
using CurveStatistic = std::function<std::vector<SummaryCurve>(const MarkedPointPattern&)>;

struct EnvelopeOptions
{
  std::size_t nsim = 199;
  double level = 0.95;
  std::uint64_t master_seed = 0;
  /// 0 resolves through resolve_threads().
  std::size_t threads = 0;
};

/// Replicate i is generated from make_rng({master_seed, i}), so the result
/// does not depend on the thread count. The observed curves are attached
/// when a data pattern is given. Throws `grid_mismatch` when replicates
/// disagree on the curves they return.
std::vector<EnvelopeBand> envelopes(const PatternGenerator& generator,
                                    const CurveStatistic& statistic,
                                    const EnvelopeOptions& options,
                                    const MarkedPointPattern* observed = nullptr);

} // namespace markedpoints
