#include "oracles.hpp"

#include "markedpoints/errors.hpp"
#include "markedpoints/markcorr.hpp"
#include "markedpoints/simulate.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace markedpoints;

namespace {

const auto unit = PlanarWindow::unit_square();

MarkedPointPattern random_marked(std::uint64_t seed, double lambda)
{
  auto rng = make_rng({seed, 0});
  auto p = poisson_planar(lambda, unit, rng);
  for (auto& q : p.points())
    q.mark = 1.0 + 3.0 * uniform01(rng);
  return p;
}

void expect_close(const std::vector<double>& a, const std::vector<double>& b, double tol)
{
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::isnan(a[k]) || std::isnan(b[k])) {
      EXPECT_EQ(std::isnan(a[k]), std::isnan(b[k])) << k;
      continue;
    }
    EXPECT_NEAR(a[k], b[k], tol * std::max(1.0, std::abs(b[k]))) << k;
  }
}

} // namespace

TEST(PairWeights, Arithmetic)
{
  const std::vector<double> m{2, 4};
  EXPECT_EQ(pair_weights(TestFunction::stoyan(), m, mark_moments(m))(0, 1), 8.0);
  EXPECT_EQ(pair_weights(TestFunction::stoyan(), m, mark_moments(m))(0, 0), 0.0);
  const std::vector<double> flat{3, 3, 3};
  for (double v : pair_weights(TestFunction::variogram(), flat, mark_moments(flat)).values)
    EXPECT_EQ(v, 0.0);
  const std::vector<double> pm{-1, 1};
  EXPECT_EQ(pair_weights(TestFunction::shimantani(), pm, mark_moments(pm))(1, 0), -1.0);
  EXPECT_THROW(pair_weights(TestFunction::shimantani(), flat, mark_moments(flat)), Error);
}

TEST(Normalization, Rules)
{
  const std::vector<double> m{2, 4};
  EXPECT_EQ(normalization(TestFunction::stoyan(), m).value, 8.0);
  EXPECT_EQ(normalization(TestFunction::variogram(), m).value, 2.0);
  EXPECT_EQ(normalization(TestFunction::beisbart_kerscher(), m).value, 6.0);
  const std::vector<double> flat{3, 3};
  EXPECT_TRUE(normalization(TestFunction::variogram(), flat).degenerate);
  EXPECT_DOUBLE_EQ(normalization(TestFunction::stoyan(), m, NormalizationRule::classical).value, 9.0);
  EXPECT_DOUBLE_EQ(normalization(TestFunction::variogram(), m, NormalizationRule::classical).value, 1.0);
  const std::vector<double> single{1};
  EXPECT_THROW(normalization(TestFunction::stoyan(), single), Error);
}

TEST(MarkCorr, TwoPointBox)
{
  MarkedPointPattern p(unit, {{Point2{0.4, 0.5}, {}, 2.0}, {Point2{0.6, 0.5}, {}, 4.0}});
  const std::vector<double> r{0.2, 0.5};
  const auto res = mark_corr(p, TestFunction::stoyan(), {SmoothingKernel::box, 0.05}, r);
  EXPECT_DOUBLE_EQ(res.curve.values[0], 1.0);
  EXPECT_DOUBLE_EQ(res.numerator.values[0], 8.0);
  EXPECT_EQ(res.normalization.value, 8.0);
  EXPECT_TRUE(std::isnan(res.curve.values[1]));
}

TEST(MarkCorr, EqualMarksDegenerateVariogram)
{
  auto p = random_marked(3, 60);
  for (auto& q : p.points())
    q.mark = 2.5;
  const auto r = uniform_r_grid(0.2, 20);
  const auto res = mark_corr(p, TestFunction::variogram(), {SmoothingKernel::epanechnikov, 0.03}, r);
  EXPECT_TRUE(res.normalization.degenerate);
  for (std::size_t k = 1; k < r.size(); ++k) {
    EXPECT_TRUE(std::isnan(res.curve.values[k]));
    EXPECT_EQ(res.numerator.values[k], 0.0);
  }
}

TEST(MarkCorr, Invariances)
{
  const auto p = random_marked(4, 80);
  const auto r = uniform_r_grid(0.25, 40);
  const SmoothingSpec1D sm{SmoothingKernel::epanechnikov, 0.03};
  auto reversed = p;
  std::reverse(reversed.points().begin(), reversed.points().end());
  auto scaled = p, shifted = p;
  for (auto& q : scaled.points())
    q.mark = *q.mark * 3.5;
  for (auto& q : shifted.points())
    q.mark = *q.mark + 11.0;
  for (const auto& tf : {TestFunction::stoyan(), TestFunction::variogram(), TestFunction::shimantani(),
                         TestFunction::beisbart_kerscher()}) {
    const auto base = mark_corr(p, tf, sm, r).curve.values;
    expect_close(mark_corr(reversed, tf, sm, r).curve.values, base, 1e-12);
    if (tf.kind == TestFunctionKind::stoyan || tf.kind == TestFunctionKind::variogram)
      expect_close(mark_corr(scaled, tf, sm, r).curve.values, base, 1e-12);
    if (tf.kind == TestFunctionKind::shimantani)
      expect_close(mark_corr(shifted, tf, sm, r).curve.values, base, 1e-10);
  }
}

TEST(MarkCorr, SuiteMatchesSingleCalls)
{
  const auto p = random_marked(5, 70);
  const auto r = uniform_r_grid(0.25, 30);
  for (auto kernel : {SmoothingKernel::epanechnikov, SmoothingKernel::gaussian, SmoothingKernel::box}) {
    const SmoothingSpec1D sm{kernel, 0.02};
    const auto s = mark_corr_suite(p, sm, r);
    EXPECT_EQ(s.stoyan.curve.values, mark_corr(p, TestFunction::stoyan(), sm, r).curve.values);
    EXPECT_EQ(s.variogram.curve.values, mark_corr(p, TestFunction::variogram(), sm, r).curve.values);
    EXPECT_EQ(s.shimantani.curve.values, mark_corr(p, TestFunction::shimantani(), sm, r).curve.values);
    EXPECT_EQ(s.beisbart_kerscher.curve.values,
              mark_corr(p, TestFunction::beisbart_kerscher(), sm, r).curve.values);
  }
}

TEST(MarkCorr, MatchesDoubleLoop)
{
  const auto p = random_marked(6, 10);
  const auto marks = p.marks();
  const auto dist = oracle::euclidean_matrix(p.planar_locations());
  const auto r = uniform_r_grid(0.5, 50);
  const SmoothingSpec1D sm{SmoothingKernel::gaussian, 0.05};
  const auto kernel = [](double t) { return std::exp(-0.5 * t * t / 0.0025) / (0.05 * std::sqrt(2 * std::acos(-1.0))); };
  expect_close(mark_corr(p, TestFunction::stoyan(), sm, r).curve.values,
               oracle::mark_corr(dist, marks, oracle::Tf::stoyan, kernel, r), 1e-12);
}

TEST(MarkCorr, Kernels)
{
  for (auto k : {SmoothingKernel::epanechnikov, SmoothingKernel::gaussian, SmoothingKernel::box}) {
    const SmoothingSpec1D sm{k, 0.3};
    double s = 0.0;
    for (int i = -150000; i < 150000; ++i)
      s += sm((i + 0.5) * 1e-4) * 1e-4;
    EXPECT_NEAR(s, 1.0, 1e-7) << to_string(k);
    EXPECT_EQ(sm(sm.support() * 1.0001), 0.0);
  }
  EXPECT_EQ(parse_smoothing_kernel("box"), SmoothingKernel::box);
  EXPECT_THROW(parse_smoothing_kernel("triangle"), Error);
  EXPECT_THROW(parse_test_function("moran"), Error);
}

TEST(MarkCorr, DefaultBandwidth)
{
  MarkedPointPattern p(PlanarWindow(0, 2, 0, 2));
  for (int k = 0; k < 16; ++k)
    p.push_back({Point2{0.1 + 0.1 * k, 1.0}, {}, 1.0});
  EXPECT_DOUBLE_EQ(default_markcorr_bandwidth(p), 0.15 / std::sqrt(4.0));
}
