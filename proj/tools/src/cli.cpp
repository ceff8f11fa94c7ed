#include "markedpoints/cli.hpp"

#include "markedpoints/envelope.hpp"
#include "markedpoints/errors.hpp"
#include "markedpoints/intensity.hpp"
#include "markedpoints/io.hpp"
#include "markedpoints/markcorr.hpp"
#include "markedpoints/simulate.hpp"
#include "markedpoints/summaries.hpp"
#include "markedpoints/svg.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

namespace markedpoints::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

struct Config
{
  std::string pattern;
  std::string network;
  std::string window = "0,1,0,1";
  std::string out = ".";
  std::uint64_t seed = 1;
  std::size_t threads = 0;

  std::string method = "uniform";
  std::string sigma = "scott";
  std::string kernel = "gaussian";
  std::size_t nx = 128;
  std::size_t ny = 128;
  std::size_t heat_steps = 128;

  std::string stat = "kcross";
  std::string type_i;
  std::string type_j;
  std::string rmax = "auto";
  std::size_t bins = 512;
  std::string intensity = "homogeneous";
  std::string edge = "auto";
  std::string inf_lambda = "auto";
  std::string spacing = "auto";
  std::string tf = "stoyan";

  std::string bandwidth = "auto";
  std::string smoothing = "epanechnikov";
  std::string normalization = "sample";

  std::string model = "poisson";
  std::string lambda = "auto";
  std::size_t types = 1;
  double nu = 2.0;
  double field_var = 0.25;
  std::string field_scale = "auto";
  std::size_t field_cells = 32;
  std::string mu = "auto";
  double variance = 1.0;
  std::string scale = "auto";
  std::string step = "auto";
  std::string nugget = "auto";
  std::string anchor = "0,0";
  double a = 0.0;
  double b = 1.0;
  std::string tau = "auto";
  double radius = 80.0;

  std::size_t nsim = 199;
  double level = 0.95;
};

[[noreturn]] void usage(const std::string& msg) { fail(ErrorCode::invalid_argument, msg); }

double parse_number(const std::string& s, const std::string& flag)
{
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
    usage(flag + ": '" + s + "' is not a finite number");
  return v;
}

std::optional<double> auto_number(const std::string& s, const std::string& flag)
{
  if (s == "auto")
    return std::nullopt;
  return parse_number(s, flag);
}

std::vector<double> parse_list(const std::string& s, std::size_t n, const std::string& flag)
{
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    out.push_back(parse_number(item, flag));
  if (out.size() != n)
    usage(flag + ": expected " + std::to_string(n) + " comma-separated numbers");
  return out;
}

PlanarWindow parse_window(const std::string& s)
{
  const auto v = parse_list(s, 4, "--window");
  return {v[0], v[1], v[2], v[3]};
}

NetworkPtr load_network(const std::string& spec)
{
  if (spec == "builtin:tree")
    return std::make_shared<const LinearNetwork>(synthetic_tree_network());
  return std::make_shared<const LinearNetwork>(read_network_json(spec));
}

bool is_mark_model(const std::string& model)
{
  return model == "modelI" || model == "modelII" || model == "modelIII";
}

Domain load_domain(const Config& c, bool default_tree = false)
{
  if (!c.network.empty())
    return load_network(c.network);
  if (default_tree)
    return load_network("builtin:tree");
  return parse_window(c.window);
}

MarkedPointPattern load_pattern(const Config& c, const Domain& domain)
{
  if (c.pattern.empty())
    usage("--pattern is required");
  return read_pattern_csv(c.pattern, domain);
}

double domain_measure(const Domain& d)
{
  if (const auto* w = std::get_if<PlanarWindow>(&d))
    return w->area();
  return std::get<NetworkPtr>(d)->total_length();
}

std::vector<double> r_grid(const Config& c, const Domain& d, Json* resolved)
{
  double rmax = 0.0;
  if (const auto v = auto_number(c.rmax, "--rmax")) {
    rmax = *v;
  } else if (const auto* w = std::get_if<PlanarWindow>(&d)) {
    rmax = 0.25 * w->min_side();
  } else {
    rmax = std::min(250.0, std::get<NetworkPtr>(d)->vertex_diameter());
  }
  if (!(rmax > 0.0))
    usage("--rmax must be positive");
  if (c.bins < 1)
    usage("--bins must be at least 1");
  if (resolved)
    (*resolved)["rmax"] = rmax;
  return uniform_r_grid(rmax, c.bins);
}

double resolve_sigma(const MarkedPointPattern& p, const Config& c)
{
  if (c.sigma == "scott") {
    const auto s = bandwidth_scott(p);
    return std::sqrt(s.sigma_x * s.sigma_y);
  }
  if (c.sigma == "cvl")
    return bandwidth_cvl(p, parse_kernel_family(c.kernel)).sigma;
  const double v = parse_number(c.sigma, "--sigma");
  if (!(v > 0.0))
    usage("--sigma must be positive");
  return v;
}

IntensityEstimate planar_estimate(const MarkedPointPattern& p, const Config& c,
                                  const std::string& method)
{
  const GridDims dims{c.nx, c.ny};
  if (method == "heat")
    return intensity_heat(p, resolve_sigma(p, c), dims, {c.heat_steps});
  const KernelSpec k{parse_kernel_family(c.kernel), resolve_sigma(p, c)};
  if (method == "uniform")
    return intensity_uniform(p, k, dims);
  if (method == "jd")
    return intensity_jones_diggle(p, k, dims);
  usage("unknown intensity method '" + method + "'");
}

IntensityFn plugin_intensity(const MarkedPointPattern& p, const Config& c)
{
  if (c.intensity == "homogeneous")
    return homogeneous_intensity(p);
  if (p.on_network()) {
    if (c.intensity != "kernel")
      usage("network patterns accept --intensity homogeneous or kernel");
    const double sigma = parse_number(c.sigma, "--sigma");
    return as_intensity_fn(std::make_shared<const NetworkIntensityEstimate>(p, sigma));
  }
  return as_intensity_fn(planar_estimate(p, c, c.intensity));
}

MarkedPointPattern part_of(const std::map<std::string, MarkedPointPattern>& parts,
                           const std::string& label, const Domain& domain)
{
  const auto it = parts.find(label);
  return it == parts.end() ? MarkedPointPattern(domain) : it->second;
}

EdgeCorrection summary_edge(const Config& c, const MarkedPointPattern& p)
{
  if (c.edge == "auto")
    return p.on_network() ? EdgeCorrection::none : EdgeCorrection::translation;
  if (c.edge == "none")
    return EdgeCorrection::none;
  if (c.edge == "translation")
    return EdgeCorrection::translation;
  usage("--edge must be auto, none or translation");
}

struct TypePair
{
  std::string i;
  std::string j;
};

TypePair resolve_types(const Config& c, const std::map<std::string, MarkedPointPattern>& parts,
                       bool need_j)
{
  TypePair t{c.type_i, c.type_j};
  auto it = parts.begin();
  if (t.i.empty()) {
    if (it == parts.end())
      fail(ErrorCode::missing_type_label, "pattern has no type labels; pass --type-i");
    t.i = it->first;
  }
  if (need_j && t.j.empty()) {
    for (const auto& [label, part] : parts)
      if (label != t.i) {
        t.j = label;
        break;
      }
    if (t.j.empty())
      fail(ErrorCode::missing_type_label, "cross statistics need a second type; pass --type-j");
  }
  return t;
}

std::vector<SummaryCurve> summary_curves(const MarkedPointPattern& p, const Config& c,
                                         std::span<const double> r, Json* resolved)
{
  const auto& stat = c.stat;
  const auto inf = auto_number(c.inf_lambda, "--inf-lambda");
  if (stat == "k")
    return {k_inhom(p, plugin_intensity(p, c), summary_edge(c, p), r)};
  if (stat == "kweighted")
    return {mark_weighted_k(p, parse_test_function(c.tf), plugin_intensity(p, c),
                            summary_edge(c, p), r)};

  const bool typed = std::any_of(p.points().begin(), p.points().end(),
                                 [](const MarkedPoint& q) { return q.type.has_value(); });
  if (stat == "f" && !typed && c.type_j.empty()) {
    return {f_inhom(p, plugin_intensity(p, c), inf, auto_number(c.spacing, "--spacing"), r)};
  }
  const auto parts = split_by_type(p);
  if (stat == "kdot") {
    const auto t = resolve_types(c, parts, false);
    const auto pi = part_of(parts, t.i, p.domain());
    const auto others = points_not_of_type(p, t.i);
    if (resolved)
      (*resolved)["type_i"] = t.i;
    return {k_dot_inhom(pi, others, plugin_intensity(pi, c), plugin_intensity(others, c),
                        summary_edge(c, p), r)};
  }
  if (stat == "f") {
    const std::string j = c.type_j.empty() ? resolve_types(c, parts, true).j : c.type_j;
    const auto pj = part_of(parts, j, p.domain());
    if (resolved)
      (*resolved)["type_j"] = j;
    return {f_inhom(pj, plugin_intensity(pj, c), inf, auto_number(c.spacing, "--spacing"), r)};
  }
  const auto t = resolve_types(c, parts, true);
  const auto pi = part_of(parts, t.i, p.domain());
  const auto pj = part_of(parts, t.j, p.domain());
  if (resolved) {
    (*resolved)["type_i"] = t.i;
    (*resolved)["type_j"] = t.j;
  }
  const auto li = plugin_intensity(pi, c);
  const auto lj = plugin_intensity(pj, c);
  if (stat == "kcross")
    return {k_cross_inhom(pi, pj, li, lj, summary_edge(c, p), r)};
  if (stat == "hcross")
    return {h_cross_inhom(pi, pj, li, lj, inf, r)};
  if (stat == "jcross") {
    const auto h = h_cross_inhom(pi, pj, li, lj, inf, r);
    const auto f = f_inhom(pj, lj, inf, auto_number(c.spacing, "--spacing"), r);
    return {j_cross_inhom(h, f)};
  }
  usage("unknown statistic '" + stat + "'");
}

bool is_markcorr_stat(const std::string& s)
{
  return s == "stoyan" || s == "bk" || s == "vario" || s == "shimantani" || s == "suite";
}

std::vector<SummaryCurve> markcorr_curves(const MarkedPointPattern& p, const Config& c,
                                          const std::string& tf, std::span<const double> r,
                                          Json* resolved)
{
  MarkCorrEdge edge = MarkCorrEdge::none;
  if (c.edge == "symmetric")
    edge = MarkCorrEdge::symmetric_weight;
  else if (c.edge != "auto" && c.edge != "none")
    usage("--edge must be auto, none or symmetric for mark correlation");
  const auto h = auto_number(c.bandwidth, "--bandwidth");
  if (h && !(*h > 0.0))
    usage("--bandwidth must be positive");
  const SmoothingSpec1D smoothing{parse_smoothing_kernel(c.smoothing),
                                  h.value_or(default_markcorr_bandwidth(p))};
  NormalizationRule rule = NormalizationRule::sample_average;
  if (c.normalization == "classical")
    rule = NormalizationRule::classical;
  else if (c.normalization != "sample")
    usage("--normalization must be sample or classical");
  if (resolved)
    (*resolved)["bandwidth"] = smoothing.bandwidth;
  const auto variogram = [](MarkCorrResult res) {
    auto curve = std::move(res.numerator);
    curve.statistic = "vario";
    return curve;
  };
  if (tf == "suite") {
    auto s = mark_corr_suite(p, smoothing, r, edge, rule);
    return {std::move(s.stoyan.curve), variogram(std::move(s.variogram)),
            std::move(s.shimantani.curve), std::move(s.beisbart_kerscher.curve)};
  }
  auto res = mark_corr(p, parse_test_function(tf), smoothing, r, edge, rule);
  if (tf == "vario")
    return {variogram(std::move(res))};
  return {std::move(res.curve)};
}

double resolve_lambda(const Config& c, const Domain& d, Json* resolved)
{
  const double lambda = auto_number(c.lambda, "--lambda").value_or(200.0 / domain_measure(d));
  if (!(lambda >= 0.0))
    usage("--lambda must be nonnegative");
  if (resolved)
    (*resolved)["lambda"] = lambda;
  return lambda;
}

NetworkLocation parse_anchor(const std::string& s)
{
  const auto v = parse_list(s, 2, "--anchor");
  if (!(v[0] >= 0.0) || v[0] != std::floor(v[0]))
    usage("--anchor: segment index must be a nonnegative integer");
  return {static_cast<std::size_t>(v[0]), v[1]};
}

PatternGenerator make_generator(const Config& c, const Domain& d, Json* resolved)
{
  const auto& model = c.model;
  if (model == "poisson") {
    const double lambda = resolve_lambda(c, d, resolved);
    if (c.types < 1)
      usage("--types must be at least 1");
    const std::size_t types = c.types;
    return [d, lambda, types](Rng& rng) {
      MarkedPointPattern out(d);
      for (std::size_t t = 0; t < types; ++t) {
        std::optional<std::string> label;
        if (types > 1)
          label = std::to_string(t + 1);
        auto part = std::holds_alternative<PlanarWindow>(d)
                        ? poisson_planar(lambda, std::get<PlanarWindow>(d), rng, label)
                        : poisson_network(lambda, std::get<NetworkPtr>(d), rng, label);
        for (auto& q : part.points())
          out.push_back(std::move(q));
      }
      return out;
    };
  }
  if (model == "lgcp") {
    if (!std::holds_alternative<NetworkPtr>(d))
      usage("lgcp needs --network");
    const auto net = std::get<NetworkPtr>(d);
    const double scale = auto_number(c.scale, "--scale").value_or(0.1 * net->vertex_diameter());
    const double mu = auto_number(c.mu, "--mu")
                          .value_or(std::log(200.0 / net->total_length()) - 0.5 * c.variance);
    const double step = auto_number(c.step, "--step").value_or(default_lgcp_step(*net));
    if (!(scale > 0.0) || !(c.variance >= 0.0))
      usage("--scale must be positive and --variance nonnegative");
    GaussianFieldSpec spec;
    spec.mean = [mu](const NetworkLocation&) { return mu; };
    spec.covariance = [v = c.variance, scale](double d1, double d2) {
      return v * std::exp(-std::abs(d1 - d2) / scale);
    };
    spec.anchor = parse_anchor(c.anchor);
    spec.nugget = auto_number(c.nugget, "--nugget");
    if (resolved) {
      (*resolved)["mu"] = mu;
      (*resolved)["scale"] = scale;
      (*resolved)["step"] = step;
    }
    auto sampler = std::make_shared<const LgcpNetworkSampler>(spec, net, step);
    return [sampler](Rng& rng) { return sampler->sample(rng); };
  }
  if (model == "linked" || model == "balanced") {
    if (!std::holds_alternative<PlanarWindow>(d))
      usage(model + " needs a planar window");
    const auto w = std::get<PlanarWindow>(d);
    const double scale = auto_number(c.field_scale, "--field-scale").value_or(0.1 * w.min_side());
    const GridDims cells{c.field_cells, c.field_cells};
    const bool linked = model == "linked";
    FieldSampler base;
    if (linked) {
      const double lambda = resolve_lambda(c, d, resolved);
      if (!(lambda > 0.0))
        usage("linked Cox needs a positive --lambda");
      base = gaussian_field_sampler(w, cells, std::log(lambda) - 0.5 * c.field_var, c.field_var,
                                    scale, FieldTransform::exponential);
    } else {
      base = gaussian_field_sampler(w, cells, 0.0, c.field_var, scale, FieldTransform::probit, c.nu);
    }
    if (resolved)
      (*resolved)["field_scale"] = scale;
    const double nu = c.nu;
    return [=](Rng& rng) {
      return linked_balanced_cox(linked ? CoxKind::linked : CoxKind::balanced, nu, base, w, rng)
          .pattern;
    };
  }
  if (is_mark_model(model)) {
    if (!std::holds_alternative<NetworkPtr>(d))
      usage(model + " needs a network");
    const auto net = std::get<NetworkPtr>(d);
    const double lambda = resolve_lambda(c, d, resolved);
    MarkModelParams params;
    params.intercept = c.a;
    params.slope = c.b;
    params.noise_sd = auto_number(c.tau, "--tau");
    params.radius = c.radius;
    const MarkModel kind = model == "modelI" ? MarkModel::I
                           : model == "modelII" ? MarkModel::II
                                                : MarkModel::III;
    return [net, lambda, params, kind](Rng& rng) {
      return model_marks(kind, poisson_network(lambda, net, rng), params, rng);
    };
  }
  usage("unknown model '" + model + "'");
}

struct Run
{
  Json resolved = Json::object();
  std::vector<std::string> outputs;
  fs::path dir;

  void write(const std::string& name, const std::string& text)
  {
    write_text_file(dir / name, text);
    outputs.push_back(name);
  }
};

void write_curves(Run& run, const std::string& prefix, const std::vector<SummaryCurve>& curves,
                  bool wide)
{
  std::vector<PlotPanel> panels;
  for (const auto& curve : curves) {
    run.write(prefix + curve.statistic + ".csv", curve_to_csv(curve));
    panels.push_back(curve_panel(curve));
  }
  const std::string stem = curves.size() == 1 ? prefix + curves.front().statistic : prefix + "suite";
  if (wide)
    run.write(stem + ".csv", curves_to_wide_csv(curves));
  run.write(stem + ".svg", render_svg(panels));
}

void cmd_intensity(const Config& c, Run& run)
{
  const auto domain = load_domain(c);
  const auto p = load_pattern(c, domain);
  if (p.on_network()) {
    const double sigma = parse_number(c.sigma, "--sigma");
    const NetworkIntensityEstimate est(p, sigma);
    std::string csv = "# method=network_kernel\n# sigma=" + format_number(sigma) +
                      "\nsegment,offset,value\n";
    constexpr int per_segment = 16;
    for (std::size_t s = 0; s < p.network().segment_count(); ++s)
      for (int k = 0; k < per_segment; ++k) {
        const NetworkLocation loc{s, (k + 0.5) / per_segment};
        csv += std::to_string(s) + "," + format_number(loc.offset) + "," +
               format_number(est.at(loc)) + "\n";
      }
    run.resolved["sigma"] = sigma;
    run.write("intensity.csv", csv);
    return;
  }
  const auto est = planar_estimate(p, c, c.method);
  run.resolved["sigma"] = est.sigma;
  run.resolved["integral"] = est.raster.integral();
  run.write("intensity.csv", intensity_to_csv(est));
}

void cmd_summary(const Config& c, Run& run)
{
  const auto domain = load_domain(c);
  const auto p = load_pattern(c, domain);
  const auto r = r_grid(c, domain, &run.resolved);
  write_curves(run, "", summary_curves(p, c, r, &run.resolved), false);
}

void cmd_markcorr(const Config& c, Run& run)
{
  if (!is_markcorr_stat(c.tf))
    usage("--tf must be stoyan, bk, vario, shimantani or suite");
  const auto domain = load_domain(c);
  const auto p = load_pattern(c, domain);
  const auto r = r_grid(c, domain, &run.resolved);
  write_curves(run, "markcorr_", markcorr_curves(p, c, c.tf, r, &run.resolved), c.tf == "suite");
}

void cmd_simulate(const Config& c, Run& run)
{
  const auto domain = load_domain(c, is_mark_model(c.model));
  const auto gen = make_generator(c, domain, &run.resolved);
  Rng rng = make_rng({c.seed, 0});
  const auto p = gen(rng);
  run.resolved["count"] = p.size();
  run.write("simulated.csv", pattern_to_csv(p));
}

void cmd_envelope(const Config& c, Run& run)
{
  const auto domain = load_domain(c, is_mark_model(c.model));
  const auto gen = make_generator(c, domain, &run.resolved);
  std::string stat = c.stat;
  if (stat == "auto")
    stat = is_mark_model(c.model) ? "suite" : c.types > 1 || c.model == "linked" ||
                                                      c.model == "balanced"
                                                  ? "kcross"
                                                  : "k";
  run.resolved["stat"] = stat;
  const auto r = r_grid(c, domain, &run.resolved);
  Config sc = c;
  sc.stat = stat;
  if (c.model == "linked" || c.model == "balanced" || (c.model == "poisson" && c.types > 1)) {
    if (sc.type_i.empty())
      sc.type_i = "1";
    if (sc.type_j.empty())
      sc.type_j = "2";
  }
  CurveStatistic statistic;
  if (is_markcorr_stat(stat)) {
    const auto h = auto_number(c.bandwidth, "--bandwidth");
    if (!h) {
      run.resolved["bandwidth"] = "per-replicate default";
    }
    statistic = [sc, stat, r](const MarkedPointPattern& p) {
      return markcorr_curves(p, sc, stat, r, nullptr);
    };
  } else {
    statistic = [sc, r](const MarkedPointPattern& p) { return summary_curves(p, sc, r, nullptr); };
  }
  std::optional<MarkedPointPattern> observed;
  if (!c.pattern.empty())
    observed = load_pattern(c, domain);
  const EnvelopeOptions options{c.nsim, c.level, c.seed, c.threads};
  const auto bands = envelopes(gen, statistic, options, observed ? &*observed : nullptr);
  run.resolved["nsim"] = c.nsim;
  run.resolved["level"] = c.level;
  run.resolved["rank"] = envelope_rank(c.nsim, c.level);
  std::vector<PlotPanel> panels;
  Json all_nan = Json::object();
  for (const auto& band : bands) {
    run.write("band_" + band.statistic + ".csv", band_to_csv(band));
    panels.push_back(band_panel(band));
    all_nan[band.statistic] = band.all_nan.size();
  }
  run.resolved["all_nan_points"] = all_nan;
  run.write("envelope.svg", render_svg(panels));
}

void add_common(CLI::App* sub, Config& c)
{
  sub->add_option("--pattern", c.pattern, "Pattern CSV");
  sub->add_option("--network", c.network, "Network JSON, or builtin:tree");
  sub->add_option("--window", c.window, "Planar window xmin,xmax,ymin,ymax");
  sub->add_option("--out", c.out, "Output directory");
  sub->add_option("--seed", c.seed, "Master seed");
}

void add_intensity_flags(CLI::App* sub, Config& c)
{
  sub->add_option("--sigma", c.sigma, "Bandwidth: a number, scott or cvl");
  sub->add_option("--kernel", c.kernel, "gaussian, epanechnikov or box");
  sub->add_option("--nx", c.nx, "Raster columns");
  sub->add_option("--ny", c.ny, "Raster rows");
  sub->add_option("--heat-steps", c.heat_steps, "Implicit steps of the heat estimator");
}

void add_summary_flags(CLI::App* sub, Config& c)
{
  sub->add_option("--type-i", c.type_i, "First type label");
  sub->add_option("--type-j", c.type_j, "Second type label");
  sub->add_option("--intensity", c.intensity, "homogeneous, uniform, jd, heat or kernel");
  sub->add_option("--inf-lambda", c.inf_lambda, "Lower intensity bound for H and F");
  sub->add_option("--spacing", c.spacing, "Grid spacing for F");
  sub->add_option("--tf", c.tf, "Test function");
}

void add_grid_flags(CLI::App* sub, Config& c)
{
  sub->add_option("--rmax", c.rmax, "Largest distance");
  sub->add_option("--bins", c.bins, "Number of r intervals");
  sub->add_option("--edge", c.edge, "Edge correction");
}

void add_markcorr_flags(CLI::App* sub, Config& c)
{
  sub->add_option("--bandwidth", c.bandwidth, "Smoothing bandwidth");
  sub->add_option("--smoothing", c.smoothing, "epanechnikov, gaussian or box");
  sub->add_option("--normalization", c.normalization, "sample (pair average) or classical");
}

void add_model_flags(CLI::App* sub, Config& c)
{
  sub->add_option("--model", c.model, "poisson, lgcp, linked, balanced, modelI, modelII, modelIII");
  sub->add_option("--lambda", c.lambda, "Poisson or base intensity");
  sub->add_option("--types", c.types, "Independent Poisson components");
  sub->add_option("--nu", c.nu, "Linked ratio or balanced total");
  sub->add_option("--field-var", c.field_var, "Cox base field variance");
  sub->add_option("--field-scale", c.field_scale, "Cox base field correlation scale");
  sub->add_option("--field-cells", c.field_cells, "Cox base field raster size");
  sub->add_option("--mu", c.mu, "LGCP mean");
  sub->add_option("--variance", c.variance, "LGCP variance");
  sub->add_option("--scale", c.scale, "LGCP correlation scale");
  sub->add_option("--step", c.step, "LGCP discretisation step");
  sub->add_option("--nugget", c.nugget, "LGCP diagonal jitter");
  sub->add_option("--anchor", c.anchor, "LGCP anchor segment,offset");
  sub->add_option("-a,--a", c.a, "Model I intercept");
  sub->add_option("-b,--b", c.b, "Model I slope");
  sub->add_option("--tau", c.tau, "Model I noise sd");
  sub->add_option("--radius", c.radius, "Model III radius");
}

Json config_of(const CLI::App* sub)
{
  Json cfg = Json::object();
  for (const auto* opt : sub->get_options()) {
    if (opt->get_lnames().empty() || opt->get_lnames().front() == "help")
      continue;
    cfg[opt->get_lnames().front()] = opt->count() ? opt->as<std::string>() : opt->get_default_str();
  }
  return cfg;
}

int exit_code(const Error& e)
{
  switch (e.category()) {
  case ErrorCategory::usage: return 2;
  case ErrorCategory::data: return 3;
  case ErrorCategory::numerical: return 4;
  }
  return 4;
}

std::vector<std::string> replay_args(const fs::path& metadata, const std::string& out_override)
{
  Json doc;
  try {
    doc = Json::parse(read_text_file(metadata));
  } catch (const Json::exception& e) {
    fail(ErrorCode::parse_error, metadata.string() + ": " + e.what());
  }
  std::vector<std::string> args;
  try {
    args.push_back(doc.at("subcommand").get<std::string>());
    for (const auto& [key, value] : doc.at("config").items()) {
      std::string v = value.get<std::string>();
      if (key == "out" && !out_override.empty())
        v = out_override;
      if (v.empty())
        continue;
      args.push_back("--" + key);
      args.push_back(v);
    }
  } catch (const Json::exception& e) {
    fail(ErrorCode::parse_error, metadata.string() + ": " + e.what());
  }
  return args;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  Config c;
  CLI::App app{"Marked point pattern estimators, simulators and envelopes", "markedpoints"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);

  auto* intensity = app.add_subcommand("intensity", "Kernel intensity estimate");
  add_common(intensity, c);
  intensity->add_option("--method", c.method, "uniform, jd or heat");
  add_intensity_flags(intensity, c);

  auto* summary = app.add_subcommand("summary", "Summary function of a pattern");
  add_common(summary, c);
  summary->add_option("--stat", c.stat, "kcross, kdot, hcross, f, jcross, kweighted or k");
  add_grid_flags(summary, c);
  add_summary_flags(summary, c);
  add_intensity_flags(summary, c);

  auto* markcorr = app.add_subcommand("markcorr", "Mark correlation functions");
  add_common(markcorr, c);
  markcorr->add_option("--tf", c.tf, "stoyan, bk, vario, shimantani or suite");
  add_grid_flags(markcorr, c);
  add_markcorr_flags(markcorr, c);

  auto* simulate = app.add_subcommand("simulate", "Simulate one pattern");
  add_common(simulate, c);
  add_model_flags(simulate, c);

  auto* envelope = app.add_subcommand("envelope", "Pointwise envelopes over simulated replicates");
  add_common(envelope, c);
  add_model_flags(envelope, c);
  envelope->add_option("--stat", c.stat, "Summary or mark correlation statistic, or auto")
      ->default_str("auto");
  c.stat = "auto";
  envelope->add_option("--nsim", c.nsim, "Number of replicates");
  envelope->add_option("--level", c.level, "Pointwise level");
  envelope->add_option("--threads", c.threads, "Worker threads, 0 for automatic");
  add_grid_flags(envelope, c);
  add_summary_flags(envelope, c);
  add_intensity_flags(envelope, c);
  add_markcorr_flags(envelope, c);

  std::string metadata_path, replay_out;
  auto* replay = app.add_subcommand("replay", "Re-run a command from its metadata file");
  replay->add_option("--metadata", metadata_path, "metadata.json of an earlier run")->required();
  replay->add_option("--out", replay_out, "Output directory override");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (replay->parsed())
      return run(replay_args(metadata_path, replay_out), out, err);
    if (summary->parsed() && c.stat == "auto")
      c.stat = "kcross";

    const CLI::App* sub = app.get_subcommands().front();
    Run r;
    r.dir = c.out;
    if (sub == intensity)
      cmd_intensity(c, r);
    else if (sub == summary)
      cmd_summary(c, r);
    else if (sub == markcorr)
      cmd_markcorr(c, r);
    else if (sub == simulate)
      cmd_simulate(c, r);
    else
      cmd_envelope(c, r);

    Json meta = Json::object();
    meta["tool"] = "markedpoints";
    meta["subcommand"] = sub->get_name();
    meta["seed"] = c.seed;
    meta["config"] = config_of(sub);
    meta["resolved"] = r.resolved;
    meta["outputs"] = r.outputs;
    write_text_file(r.dir / "metadata.json", meta.dump(2) + "\n");
    for (const auto& name : r.outputs)
      out << (r.dir / name).string() << "\n";
    return 0;
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  }
}

int main(int argc, char** argv)
{
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

} // namespace markedpoints::cli
