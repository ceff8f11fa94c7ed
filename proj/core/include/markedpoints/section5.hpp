#pragma once

#include "markedpoints/envelope.hpp"
#include "markedpoints/markcorr.hpp"
#include "markedpoints/simulate.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace markedpoints {

struct Section5Options
{
  MarkModelParams params;
  /// Rate per unit length of the underlying Poisson pattern.
  double base_intensity = 0.08;
  std::size_t nsim = 199;
  double level = 0.95;
  double rmax = 250.0;
  std::size_t bins = 512;
  std::uint64_t master_seed = 1;
  std::size_t threads = 0;
  SmoothingKernel kernel = SmoothingKernel::epanechnikov;
  /// Per-replicate default rule when unset.
  std::optional<double> bandwidth;
};

/// Stoyan, variogram (unnormalised), Shimantani and Beisbart-Kerscher curves
/// of one marked network pattern, in that order.
std::vector<SummaryCurve> markcorr_panel(const MarkedPointPattern& p, SmoothingKernel kernel,
                                         std::optional<double> bandwidth,
                                         std::span<const double> r);

/// Envelope bands of the four curves over simulated replicates of a model.
std::vector<EnvelopeBand> section5_bands(NetworkPtr net, MarkModel model,
                                         const Section5Options& options);

struct Section5Output
{
  std::vector<EnvelopeBand> bands;
  std::vector<std::filesystem::path> files;
};

/// Computes the bands and writes one band CSV per curve plus a four-panel SVG.
Section5Output reproduce_section5(NetworkPtr net, MarkModel model, const Section5Options& options,
                                  const std::filesystem::path& out_dir);

} // namespace markedpoints
