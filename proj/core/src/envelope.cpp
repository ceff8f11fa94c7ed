#include "markedpoints/envelope.hpp"

#include "markedpoints/errors.hpp"
#include "markedpoints/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace markedpoints {

namespace {

std::string format_level(double level)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", level);
  return buf;
}

} // namespace

std::size_t envelope_rank(std::size_t nsim, double level)
{
  if (!(level > 0.0 && level < 1.0))
    fail(ErrorCode::invalid_envelope, "envelope level must lie in (0, 1)");
  const double k = std::floor((1.0 - level) / 2.0 * static_cast<double>(nsim + 1) + 1e-9);
  if (k < 1.0)
    fail(ErrorCode::invalid_envelope,
         "nsim = " + std::to_string(nsim) + " is too small for level " + format_level(level));
  return static_cast<std::size_t>(k);
}

EnvelopeBand band_from_replicates(std::string statistic, std::vector<double> r,
                                  const std::vector<std::vector<double>>& replicates,
                                  double level)
{
  EnvelopeBand band;
  band.nsim = replicates.size();
  band.level = level;
  band.rank = envelope_rank(band.nsim, level);
  band.statistic = std::move(statistic);
  band.r = std::move(r);
  const std::size_t m = band.r.size();
  for (const auto& rep : replicates)
    if (rep.size() != m)
      fail(ErrorCode::grid_mismatch, "replicate curve length differs from the r grid");

  band.lo.assign(m, NAN);
  band.hi.assign(m, NAN);
  band.mean.assign(m, NAN);
  band.n_effective.assign(m, 0);
  std::vector<double> column;
  column.reserve(replicates.size());
  for (std::size_t j = 0; j < m; ++j) {
    column.clear();
    for (const auto& rep : replicates)
      if (!std::isnan(rep[j]))
        column.push_back(rep[j]);
    const std::size_t n = column.size();
    band.n_effective[j] = n;
    if (n == 0) {
      band.all_nan.push_back(j);
      continue;
    }
    std::sort(column.begin(), column.end());
    const double kr = std::floor((1.0 - level) / 2.0 * static_cast<double>(n + 1) + 1e-9);
    const std::size_t k = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(kr, 1.0)), 1, n);
    band.lo[j] = column[k - 1];
    band.hi[j] = column[n - k];
    double sum = 0.0;
    for (double v : column)
      sum += v;
    band.mean[j] = sum / static_cast<double>(n);
  }
  return band;
}

std::vector<EnvelopeBand> envelopes(const PatternGenerator& generator,
                                    const CurveStatistic& statistic,
                                    const EnvelopeOptions& options,
                                    const MarkedPointPattern* observed)
{
  envelope_rank(options.nsim, options.level);
  std::vector<std::vector<SummaryCurve>> curves(options.nsim);
  parallel_for(options.nsim, resolve_threads(options.threads), [&](std::size_t i) {
    Rng rng = make_rng({options.master_seed, i});
    curves[i] = statistic(generator(rng));
  });

  std::vector<SummaryCurve> reference;
  if (observed)
    reference = statistic(*observed);
  const auto& shape = curves.front();
  const auto check = [&](const std::vector<SummaryCurve>& cs) {
    if (cs.size() != shape.size())
      fail(ErrorCode::grid_mismatch, "statistic returned a different number of curves");
    for (std::size_t c = 0; c < cs.size(); ++c)
      if (cs[c].r != shape[c].r || cs[c].statistic != shape[c].statistic)
        fail(ErrorCode::grid_mismatch, "statistic curves do not share one r grid");
  };
  for (const auto& cs : curves)
    check(cs);
  if (observed)
    check(reference);

  std::vector<EnvelopeBand> bands;
  for (std::size_t c = 0; c < shape.size(); ++c) {
    std::vector<std::vector<double>> reps;
    reps.reserve(curves.size());
    for (const auto& cs : curves)
      reps.push_back(cs[c].values);
    auto band = band_from_replicates(shape[c].statistic, shape[c].r, reps, options.level);
    if (observed)
      band.observed = reference[c].values;
    bands.push_back(std::move(band));
  }
  return bands;
}

} // namespace markedpoints
