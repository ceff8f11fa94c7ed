#include "markedpoints/summaries.hpp"

#include "markedpoints/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace markedpoints {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

std::string format_double(double v)
{
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void check_r_grid(std::span<const double> r)
{
  if (r.empty())
    fail(ErrorCode::invalid_argument, "r grid is empty");
  if (r.front() < 0.0)
    fail(ErrorCode::invalid_argument, "r grid must be nonnegative");
  for (std::size_t k = 1; k < r.size(); ++k)
    if (!(r[k] > r[k - 1]))
      fail(ErrorCode::invalid_argument, "r grid must be strictly increasing");
}

std::vector<double> intensities_at(const MarkedPointPattern& p, const IntensityFn& lambda,
                                   const char* which)
{
  std::vector<double> out;
  out.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double v = lambda(p.points()[i].location);
    if (!(v > 0.0) || !std::isfinite(v))
      fail(ErrorCode::zero_intensity, std::string("intensity ") + which +
                                          " is not positive at data point " + std::to_string(i));
    out.push_back(v);
  }
  return out;
}

double edge_weight(const Domain& domain, EdgeCorrection ec, const Location& a, const Location& b)
{
  if (ec == EdgeCorrection::none)
    return 1.0;
  const auto& w = std::get<PlanarWindow>(domain);
  const auto pa = std::get<Point2>(a);
  const auto pb = std::get<Point2>(b);
  return w.area() / translated_overlap_area(w, pa.x - pb.x, pa.y - pb.y);
}

void check_edge_correction(const Domain& domain, EdgeCorrection ec)
{
  if (ec == EdgeCorrection::translation && std::holds_alternative<NetworkPtr>(domain))
    fail(ErrorCode::invalid_argument, "translation correction is only defined for rectangles");
}

// Step function sum_{d_k <= r} c_k evaluated on the grid, divided by `scale`.
std::vector<double> cumulative_on_grid(std::vector<std::pair<double, double>> contributions,
                                       std::span<const double> r, double scale)
{
  std::sort(contributions.begin(), contributions.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<double> out(r.size(), 0.0);
  double running = 0.0;
  std::size_t next = 0;
  for (std::size_t k = 0; k < r.size(); ++k) {
    while (next < contributions.size() && contributions[next].first <= r[k])
      running += contributions[next++].second;
    out[k] = running / scale;
  }
  return out;
}

SummaryCurve make_curve(std::string statistic, std::span<const double> r,
                        std::vector<double> values)
{
  SummaryCurve c;
  c.statistic = std::move(statistic);
  c.r.assign(r.begin(), r.end());
  c.values = std::move(values);
  return c;
}

void attach_k_theory(SummaryCurve& c, const Domain& domain, EdgeCorrection ec)
{
  c.attributes["edge_correction"] = to_string(ec);
  if (std::holds_alternative<PlanarWindow>(domain)) {
    std::vector<double> theory;
    for (double r : c.r)
      theory.push_back(std::numbers::pi * r * r);
    c.theoretical = std::move(theory);
  }
}

double resolve_infimum(std::span<const double> lambda_j, std::optional<double> override_value)
{
  double observed = std::numeric_limits<double>::infinity();
  for (double v : lambda_j)
    observed = std::min(observed, v);
  if (!override_value)
    return lambda_j.empty() ? 1.0 : observed;
  const double inf = *override_value;
  if (!(inf > 0.0) || !std::isfinite(inf))
    fail(ErrorCode::invalid_normalization, "intensity infimum must be positive");
  if (!lambda_j.empty() && inf > observed)
    fail(ErrorCode::invalid_normalization,
         "intensity infimum " + format_double(inf) + " exceeds the observed minimum " +
             format_double(observed));
  return inf;
}

// Survival products prod_{d_y <= r} factor_y for every grid radius, with the
// factors visited in increasing distance.
void products_on_grid(std::vector<std::pair<double, double>>& dist_factor,
                      std::span<const double> r, std::vector<double>& out)
{
  std::sort(dist_factor.begin(), dist_factor.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  double prod = 1.0;
  std::size_t next = 0;
  for (std::size_t k = 0; k < r.size(); ++k) {
    while (next < dist_factor.size() && dist_factor[next].first <= r[k])
      prod *= dist_factor[next++].second;
    out[k] = prod;
  }
}

SummaryCurve weighted_k(const MarkedPointPattern& p, const TestFunction* tf,
                        const IntensityFn& lambda, EdgeCorrection ec, std::span<const double> r,
                        const char* statistic)
{
  check_r_grid(r);
  check_edge_correction(p.domain(), ec);
  const auto lam = intensities_at(p, lambda, "lambda");
  const std::size_t n = p.size();
  double c = 1.0;
  PairWeights weights;
  if (tf) {
    const auto marks = p.marks();
    const auto norm = normalization(*tf, marks);
    if (norm.degenerate)
      fail(ErrorCode::degenerate_normalization, "test function averages to zero over all pairs");
    c = norm.value;
    MarkSummaryStats stats = mark_moments(marks);
    weights = pair_weights(*tf, marks, stats);
  }
  const auto dist = pairwise_distances(p);
  std::vector<std::pair<double, double>> contributions;
  contributions.reserve(n * (n > 0 ? n - 1 : 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j)
        continue;
      const double e = edge_weight(p.domain(), ec, p.points()[i].location, p.points()[j].location);
      const double t = tf ? weights(i, j) : 1.0;
      contributions.emplace_back(dist(i, j), t * e / (lam[i] * lam[j]));
    }
  auto curve = make_curve(statistic, r,
                          cumulative_on_grid(std::move(contributions), r, p.domain_measure() * c));
  attach_k_theory(curve, p.domain(), ec);
  if (tf)
    curve.attributes["test_function"] = tf->label;
  return curve;
}

} // namespace

std::vector<double> uniform_r_grid(double rmax, std::size_t bins)
{
  if (!(rmax > 0.0) || !std::isfinite(rmax) || bins == 0)
    fail(ErrorCode::invalid_argument, "r grid needs rmax > 0 and at least one bin");
  std::vector<double> r(bins + 1);
  for (std::size_t k = 0; k <= bins; ++k)
    r[k] = rmax * static_cast<double>(k) / static_cast<double>(bins);
  return r;
}

const char* to_string(EdgeCorrection ec) noexcept
{
  return ec == EdgeCorrection::none ? "none" : "translation";
}

SummaryCurve k_cross_inhom(const MarkedPointPattern& pi, const MarkedPointPattern& pj,
                           const IntensityFn& lambda_i, const IntensityFn& lambda_j,
                           EdgeCorrection ec, std::span<const double> r)
{
  check_r_grid(r);
  if (!same_domain(pi.domain(), pj.domain()))
    fail(ErrorCode::domain_mismatch, "cross-type K needs both patterns on the same domain");
  check_edge_correction(pi.domain(), ec);
  const auto li = intensities_at(pi, lambda_i, "lambda_i");
  const auto lj = intensities_at(pj, lambda_j, "lambda_j");
  const auto dist = cross_distances(pi, pj);
  std::vector<std::pair<double, double>> contributions;
  contributions.reserve(pi.size() * pj.size());
  for (std::size_t a = 0; a < pi.size(); ++a)
    for (std::size_t b = 0; b < pj.size(); ++b) {
      const double e =
          edge_weight(pi.domain(), ec, pi.points()[a].location, pj.points()[b].location);
      contributions.emplace_back(dist(a, b), e / (li[a] * lj[b]));
    }
  auto curve =
      make_curve("kcross", r, cumulative_on_grid(std::move(contributions), r, pi.domain_measure()));
  attach_k_theory(curve, pi.domain(), ec);
  return curve;
}

SummaryCurve k_dot_inhom(const MarkedPointPattern& pi, const MarkedPointPattern& others,
                         const IntensityFn& lambda_i, const IntensityFn& lambda_others,
                         EdgeCorrection ec, std::span<const double> r)
{
  auto curve = k_cross_inhom(pi, others, lambda_i, lambda_others, ec, r);
  curve.statistic = "kdot";
  return curve;
}

SummaryCurve k_inhom(const MarkedPointPattern& p, const IntensityFn& lambda, EdgeCorrection ec,
                     std::span<const double> r)
{
  return weighted_k(p, nullptr, lambda, ec, r, "k");
}

SummaryCurve mark_weighted_k(const MarkedPointPattern& p, const TestFunction& tf,
                             const IntensityFn& lambda, EdgeCorrection ec,
                             std::span<const double> r)
{
  return weighted_k(p, &tf, lambda, ec, r, "kweighted");
}

SummaryCurve h_cross_inhom(const MarkedPointPattern& pi, const MarkedPointPattern& pj,
                           const IntensityFn& lambda_i, const IntensityFn& lambda_j,
                           std::optional<double> inf_lambda_j, std::span<const double> r)
{
  check_r_grid(r);
  if (!same_domain(pi.domain(), pj.domain()))
    fail(ErrorCode::domain_mismatch, "cross-type H needs both patterns on the same domain");
  const auto& w = pi.window();
  const auto li = intensities_at(pi, lambda_i, "lambda_i");
  const auto lj = intensities_at(pj, lambda_j, "lambda_j");
  const double inf = resolve_infimum(lj, inf_lambda_j);
  const auto xi = pi.planar_locations();
  const auto xj = pj.planar_locations();

  std::vector<double> numerator(r.size(), 0.0), denominator(r.size(), 0.0);
  std::vector<double> prods(r.size());
  std::vector<std::pair<double, double>> dist_factor;
  for (std::size_t a = 0; a < xi.size(); ++a) {
    const double border = boundary_distance(w, xi[a]);
    dist_factor.clear();
    for (std::size_t b = 0; b < xj.size(); ++b)
      dist_factor.emplace_back(euclidean_distance(xi[a], xj[b]), 1.0 - inf / lj[b]);
    products_on_grid(dist_factor, r, prods);
    const double weight = 1.0 / li[a];
    for (std::size_t k = 0; k < r.size() && r[k] <= border; ++k) {
      numerator[k] += weight * prods[k];
      denominator[k] += weight;
    }
  }
  std::vector<double> values(r.size(), nan);
  for (std::size_t k = 0; k < r.size(); ++k)
    if (denominator[k] > 0.0)
      values[k] = 1.0 - numerator[k] / denominator[k];
  auto curve = make_curve("hcross", r, std::move(values));
  curve.attributes["intensity_infimum"] = format_double(inf);
  return curve;
}

double default_grid_spacing(const PlanarWindow& w) noexcept
{
  return w.min_side() / 128.0;
}

SummaryCurve f_inhom(const MarkedPointPattern& pj, const IntensityFn& lambda_j,
                     std::optional<double> inf_lambda_j, std::optional<double> grid_spacing,
                     std::span<const double> r)
{
  check_r_grid(r);
  const auto& w = pj.window();
  const double spacing = grid_spacing.value_or(default_grid_spacing(w));
  if (!(spacing > 0.0) || spacing > w.min_side())
    fail(ErrorCode::invalid_argument, "empty-space grid spacing must lie in (0, min side]");
  const auto lj = intensities_at(pj, lambda_j, "lambda_j");
  const double inf = resolve_infimum(lj, inf_lambda_j);
  const auto xj = pj.planar_locations();
  const auto nx = static_cast<std::size_t>(std::max(1.0, std::round(w.width() / spacing)));
  const auto ny = static_cast<std::size_t>(std::max(1.0, std::round(w.height() / spacing)));
  const double rmax = r.back();

  std::vector<double> sum(r.size(), 0.0);
  std::vector<std::size_t> count(r.size(), 0);
  std::vector<double> prods(r.size());
  std::vector<std::pair<double, double>> dist_factor;
  for (std::size_t iy = 0; iy < ny; ++iy)
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const Point2 u{w.xmin() + (static_cast<double>(ix) + 0.5) * w.width() / static_cast<double>(nx),
                     w.ymin() + (static_cast<double>(iy) + 0.5) * w.height() / static_cast<double>(ny)};
      const double border = boundary_distance(w, u);
      dist_factor.clear();
      for (std::size_t b = 0; b < xj.size(); ++b) {
        const double d = euclidean_distance(u, xj[b]);
        if (d <= rmax)
          dist_factor.emplace_back(d, 1.0 - inf / lj[b]);
      }
      products_on_grid(dist_factor, r, prods);
      for (std::size_t k = 0; k < r.size() && r[k] <= border; ++k) {
        sum[k] += prods[k];
        ++count[k];
      }
    }
  std::vector<double> values(r.size(), nan);
  for (std::size_t k = 0; k < r.size(); ++k)
    if (count[k] > 0)
      values[k] = 1.0 - sum[k] / static_cast<double>(count[k]);
  auto curve = make_curve("f", r, std::move(values));
  curve.attributes["intensity_infimum"] = format_double(inf);
  curve.attributes["grid_spacing"] = format_double(spacing);
  return curve;
}

SummaryCurve j_cross_inhom(const SummaryCurve& h, const SummaryCurve& f)
{
  if (h.r != f.r)
    fail(ErrorCode::grid_mismatch, "H and F are tabulated on different r grids");
  std::vector<double> values(h.r.size(), nan);
  for (std::size_t k = 0; k < h.r.size(); ++k) {
    const double hv = h.values[k];
    const double fv = f.values[k];
    if (std::isnan(hv) || std::isnan(fv) || fv >= 1.0 - 1e-12)
      continue;
    values[k] = (1.0 - hv) / (1.0 - fv);
  }
  auto curve = make_curve("jcross", h.r, std::move(values));
  curve.theoretical = std::vector<double>(h.r.size(), 1.0);
  return curve;
}

std::vector<double> mark_sum_measure(const MarkedPointPattern& p, double r)
{
  if (!(r >= 0.0))
    fail(ErrorCode::invalid_argument, "radius must be nonnegative");
  const auto marks = p.marks();
  const auto dist = pairwise_distances(p);
  std::vector<double> out(p.size(), nan);
  for (std::size_t i = 0; i < p.size(); ++i) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t j = 0; j < p.size(); ++j)
      if (j != i && dist(i, j) <= r) {
        sum += marks[j];
        ++count;
      }
    if (count > 0)
      out[i] = sum / static_cast<double>(count);
  }
  return out;
}

} // namespace markedpoints
