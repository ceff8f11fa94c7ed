#pragma once

#include "markedpoints/envelope.hpp"
#include "markedpoints/summaries.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace markedpoints {

struct PlotSeries
{
  std::vector<double> x;
  std::vector<double> y;
  std::string label;
  std::string color = "#1f4e99";
  bool dashed = false;
};

struct PlotBand
{
  std::vector<double> x;
  std::vector<double> lo;
  std::vector<double> hi;
};

struct PlotPanel
{
  std::string title;
  std::vector<PlotSeries> series;
  std::optional<PlotBand> band;
};

/// Panels stacked in one column. NaN values break the polylines.
std::string render_svg(std::span<const PlotPanel> panels, int width = 640, int panel_height = 220);

/// Shaded band, dashed mean and, when present, the observed curve.
PlotPanel band_panel(const EnvelopeBand& band);
/// Estimate plus its theoretical reference as a dashed line.
PlotPanel curve_panel(const SummaryCurve& curve);

} // namespace markedpoints
