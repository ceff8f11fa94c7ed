#include "markedpoints/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace markedpoints {

namespace {

std::string fmt(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& s)
{
  std::string out;
  for (char c : s) {
    switch (c) {
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '&': out += "&amp;"; break;
    default: out += c;
    }
  }
  return out;
}

struct Range
{
  double lo = INFINITY;
  double hi = -INFINITY;

  void add(double v)
  {
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }

  void finish()
  {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

double nice_step(double span)
{
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double f : {1.0, 2.0, 5.0})
    if (raw <= f * mag)
      return f * mag;
  return 10.0 * mag;
}

} // namespace

std::string render_svg(std::span<const PlotPanel> panels, int width, int panel_height)
{
  const double left = 64, right = 16, top = 26, bottom = 30;
  const int height = panel_height * static_cast<int>(std::max<std::size_t>(panels.size(), 1));
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
                    "\" height=\"" + std::to_string(height) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (std::size_t p = 0; p < panels.size(); ++p) {
    const auto& panel = panels[p];
    const double y0 = static_cast<double>(p) * panel_height;
    Range xr, yr;
    for (const auto& s : panel.series) {
      for (double v : s.x) xr.add(v);
      for (double v : s.y) yr.add(v);
    }
    if (panel.band) {
      for (double v : panel.band->x) xr.add(v);
      for (double v : panel.band->lo) yr.add(v);
      for (double v : panel.band->hi) yr.add(v);
    }
    xr.finish();
    yr.finish();
    const double pw = width - left - right;
    const double ph = panel_height - top - bottom;
    const auto sx = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    const auto sy = [&](double y) { return y0 + top + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

    out += "<text x=\"" + fmt(left) + "\" y=\"" + fmt(y0 + 16) + "\" font-size=\"13\">" +
           escape(panel.title) + "</text>\n";
    out += "<rect x=\"" + fmt(left) + "\" y=\"" + fmt(y0 + top) + "\" width=\"" + fmt(pw) +
           "\" height=\"" + fmt(ph) + "\" fill=\"none\" stroke=\"#444\"/>\n";

    for (const auto& [range, vertical] : {std::pair{xr, true}, std::pair{yr, false}}) {
      const double step = nice_step(range.hi - range.lo);
      for (double t = std::ceil(range.lo / step) * step; t <= range.hi + 1e-9 * step; t += step) {
        if (vertical) {
          const double x = sx(t);
          out += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(y0 + top + ph) + "\" x2=\"" + fmt(x) +
                 "\" y2=\"" + fmt(y0 + top + ph + 4) + "\" stroke=\"#444\"/>";
          out += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(y0 + top + ph + 16) +
                 "\" text-anchor=\"middle\">" + tick_label(t) + "</text>\n";
        } else {
          const double y = sy(t);
          out += "<line x1=\"" + fmt(left - 4) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(left) +
                 "\" y2=\"" + fmt(y) + "\" stroke=\"#444\"/>";
          out += "<text x=\"" + fmt(left - 6) + "\" y=\"" + fmt(y + 4) +
                 "\" text-anchor=\"end\">" + tick_label(t) + "</text>\n";
        }
      }
    }

    if (panel.band) {
      const auto& b = *panel.band;
      std::size_t i = 0;
      while (i < b.x.size()) {
        while (i < b.x.size() && !(std::isfinite(b.lo[i]) && std::isfinite(b.hi[i])))
          ++i;
        std::size_t j = i;
        while (j < b.x.size() && std::isfinite(b.lo[j]) && std::isfinite(b.hi[j]))
          ++j;
        if (j > i) {
          std::string pts;
          for (std::size_t k = i; k < j; ++k)
            pts += fmt(sx(b.x[k])) + "," + fmt(sy(b.hi[k])) + " ";
          for (std::size_t k = j; k-- > i;)
            pts += fmt(sx(b.x[k])) + "," + fmt(sy(b.lo[k])) + " ";
          out += "<polygon points=\"" + pts + "\" fill=\"#9bb7e0\" fill-opacity=\"0.5\" stroke=\"none\"/>\n";
        }
        i = j;
      }
    }

    double legend_x = left + pw;
    for (const auto& s : panel.series) {
      std::string pts;
      const auto flush = [&] {
        if (!pts.empty())
          out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + s.color +
                 "\" stroke-width=\"1.5\"" + (s.dashed ? " stroke-dasharray=\"5,3\"" : "") + "/>\n";
        pts.clear();
      };
      for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k) {
        if (std::isfinite(s.x[k]) && std::isfinite(s.y[k]))
          pts += fmt(sx(s.x[k])) + "," + fmt(sy(s.y[k])) + " ";
        else
          flush();
      }
      flush();
      if (!s.label.empty()) {
        out += "<text x=\"" + fmt(legend_x) + "\" y=\"" + fmt(y0 + 16) +
               "\" text-anchor=\"end\" fill=\"" + s.color + "\">" + escape(s.label) + "</text>\n";
        legend_x -= 8.0 + 7.0 * static_cast<double>(s.label.size());
      }
    }
  }
  out += "</svg>\n";
  return out;
}

PlotPanel band_panel(const EnvelopeBand& band)
{
  PlotPanel panel;
  panel.title = band.statistic + " (nsim " + std::to_string(band.nsim) + ", rank " +
                std::to_string(band.rank) + ")";
  panel.band = PlotBand{band.r, band.lo, band.hi};
  panel.series.push_back({band.r, band.mean, "mean", "#1f4e99", true});
  if (band.observed)
    panel.series.push_back({band.r, *band.observed, "observed", "#b22222", false});
  return panel;
}

PlotPanel curve_panel(const SummaryCurve& curve)
{
  PlotPanel panel;
  panel.title = curve.statistic;
  panel.series.push_back({curve.r, curve.values, "estimate", "#1f4e99", false});
  if (curve.theoretical)
    panel.series.push_back({curve.r, *curve.theoretical, "theoretical", "#555555", true});
  return panel;
}

} // namespace markedpoints
