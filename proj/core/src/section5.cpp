#include "markedpoints/section5.hpp"

#include "markedpoints/errors.hpp"
#include "markedpoints/io.hpp"
#include "markedpoints/svg.hpp"

namespace markedpoints {

std::vector<SummaryCurve> markcorr_panel(const MarkedPointPattern& p, SmoothingKernel kernel,
                                         std::optional<double> bandwidth,
                                         std::span<const double> r)
{
  const SmoothingSpec1D smoothing{kernel, bandwidth.value_or(default_markcorr_bandwidth(p))};
  auto suite = mark_corr_suite(p, smoothing, r);
  auto vario = std::move(suite.variogram.numerator);
  vario.statistic = "vario";
  return {std::move(suite.stoyan.curve), std::move(vario), std::move(suite.shimantani.curve),
          std::move(suite.beisbart_kerscher.curve)};
}

std::vector<EnvelopeBand> section5_bands(NetworkPtr net, MarkModel model,
                                         const Section5Options& options)
{
  if (!net)
    fail(ErrorCode::invalid_network, "no network given");
  if (!(options.base_intensity > 0.0))
    fail(ErrorCode::invalid_argument, "base intensity must be positive");
  const auto r = uniform_r_grid(options.rmax, options.bins);
  const PatternGenerator generator = [&](Rng& rng) {
    return model_marks(model, poisson_network(options.base_intensity, net, rng), options.params,
                       rng);
  };
  const CurveStatistic statistic = [&](const MarkedPointPattern& p) {
    return markcorr_panel(p, options.kernel, options.bandwidth, r);
  };
  return envelopes(generator, statistic,
                   {options.nsim, options.level, options.master_seed, options.threads});
}

Section5Output reproduce_section5(NetworkPtr net, MarkModel model, const Section5Options& options,
                                  const std::filesystem::path& out_dir)
{
  Section5Output out;
  out.bands = section5_bands(std::move(net), model, options);
  const std::string stem = std::string("section5_") + to_string(model);
  std::vector<PlotPanel> panels;
  for (const auto& band : out.bands) {
    const auto path = out_dir / (stem + "_" + band.statistic + ".csv");
    write_text_file(path, band_to_csv(band));
    out.files.push_back(path);
    panels.push_back(band_panel(band));
    panels.back().title = std::string(to_string(model)) + ": " + panels.back().title;
  }
  const auto svg = out_dir / (stem + ".svg");
  write_text_file(svg, render_svg(panels));
  out.files.push_back(svg);
  return out;
}

} // namespace markedpoints
