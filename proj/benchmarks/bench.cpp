#include "markedpoints/intensity.hpp"
#include "markedpoints/markcorr.hpp"
#include "markedpoints/simulate.hpp"
#include "markedpoints/summaries.hpp"

#include <benchmark/benchmark.h>

using namespace markedpoints;

namespace {

const auto unit = PlanarWindow::unit_square();

MarkedPointPattern csr(double lambda)
{
  auto rng = make_rng({1, 0});
  auto p = poisson_planar(lambda, unit, rng);
  for (auto& q : p.points())
    q.mark = uniform01(rng);
  return p;
}

NetworkPtr tree()
{
  static const auto net = std::make_shared<const LinearNetwork>(synthetic_tree_network());
  return net;
}

} // namespace

static void BM_NetworkAllPairs(benchmark::State& state)
{
  auto rng = make_rng({2, 0});
  const auto p = poisson_network(static_cast<double>(state.range(0)) / tree()->total_length(), tree(), rng);
  const auto locs = p.network_locations();
  for (auto _ : state)
    benchmark::DoNotOptimize(all_pairs_network_distances(*tree(), locs));
}
BENCHMARK(BM_NetworkAllPairs)->Arg(100)->Arg(400);

static void BM_KCrossTranslation(benchmark::State& state)
{
  const auto a = csr(static_cast<double>(state.range(0)));
  const auto b = csr(static_cast<double>(state.range(0)) * 1.1);
  const auto r = uniform_r_grid(0.25);
  for (auto _ : state)
    benchmark::DoNotOptimize(k_cross_inhom(a, b, homogeneous_intensity(a), homogeneous_intensity(b),
                                           EdgeCorrection::translation, r));
}
BENCHMARK(BM_KCrossTranslation)->Arg(200)->Arg(1000);

static void BM_EmptySpaceF(benchmark::State& state)
{
  const auto p = csr(static_cast<double>(state.range(0)));
  const auto r = uniform_r_grid(0.1, 128);
  for (auto _ : state)
    benchmark::DoNotOptimize(f_inhom(p, homogeneous_intensity(p), std::nullopt, std::nullopt, r));
}
BENCHMARK(BM_EmptySpaceF)->Arg(200);

static void BM_MarkCorrSuite(benchmark::State& state)
{
  const auto p = csr(static_cast<double>(state.range(0)));
  const auto r = uniform_r_grid(0.25);
  const SmoothingSpec1D sm{SmoothingKernel::epanechnikov, default_markcorr_bandwidth(p)};
  for (auto _ : state)
    benchmark::DoNotOptimize(mark_corr_suite(p, sm, r));
}
BENCHMARK(BM_MarkCorrSuite)->Arg(200)->Arg(1000);

static void BM_HeatIntensity(benchmark::State& state)
{
  const auto p = csr(200);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(intensity_heat(p, 0.05, {n, n}));
}
BENCHMARK(BM_HeatIntensity)->Arg(128)->Arg(256);

static void BM_JonesDiggle(benchmark::State& state)
{
  const auto p = csr(200);
  for (auto _ : state)
    benchmark::DoNotOptimize(intensity_jones_diggle(p, {KernelFamily::gaussian, 0.05}, {128, 128}));
}
BENCHMARK(BM_JonesDiggle);

static void BM_LgcpSample(benchmark::State& state)
{
  GaussianFieldSpec spec{[](const NetworkLocation&) { return std::log(0.1); },
                         [](double a, double b) { return 0.5 * std::exp(-std::abs(a - b) / 30.0); },
                         {0, 0.0}, std::nullopt};
  const LgcpNetworkSampler sampler(spec, tree(), default_lgcp_step(*tree()));
  Rng rng(3);
  for (auto _ : state)
    benchmark::DoNotOptimize(sampler.sample(rng));
}
BENCHMARK(BM_LgcpSample);

BENCHMARK_MAIN();
