#include "markedpoints/envelope.hpp"
#include "markedpoints/errors.hpp"
#include "markedpoints/parallel.hpp"
#include "markedpoints/section5.hpp"
#include "markedpoints/simulate.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numeric>

using namespace markedpoints;

TEST(Envelope, Rank)
{
  EXPECT_EQ(envelope_rank(199, 0.95), 5u);
  EXPECT_EQ(envelope_rank(39, 0.95), 1u);
  EXPECT_EQ(envelope_rank(1, 1e-10), 1u);
  EXPECT_THROW(envelope_rank(1, 0.01), Error);
  EXPECT_THROW(envelope_rank(19, 0.95), Error);
  EXPECT_THROW(envelope_rank(199, 1.0), Error);
}

TEST(Envelope, KthExtremes)
{
  std::vector<std::vector<double>> reps;
  for (int i = 0; i < 199; ++i)
    reps.push_back({static_cast<double>((i * 37) % 199), 4.0});
  const auto b = band_from_replicates("s", {0, 1}, reps, 0.95);
  EXPECT_EQ(b.rank, 5u);
  EXPECT_EQ(b.lo[0], 4.0);
  EXPECT_EQ(b.hi[0], 194.0);
  EXPECT_DOUBLE_EQ(b.mean[0], 99.0);
  EXPECT_EQ(b.lo[1], 4.0);
  EXPECT_EQ(b.hi[1], 4.0);
  EXPECT_EQ(b.mean[1], 4.0);

  auto shuffled = reps;
  std::reverse(shuffled.begin(), shuffled.end());
  const auto c = band_from_replicates("s", {0, 1}, shuffled, 0.95);
  EXPECT_EQ(c.lo, b.lo);
  EXPECT_EQ(c.hi, b.hi);
  EXPECT_EQ(c.mean, b.mean);
}

TEST(Envelope, ConstantAndSingle)
{
  const std::vector<std::vector<double>> three(3, {2.5, 2.5});
  const auto b = band_from_replicates("c", {0, 1}, three, 0.5);
  EXPECT_EQ(b.lo[0], 2.5);
  EXPECT_EQ(b.hi[0], 2.5);
  EXPECT_EQ(b.mean[0], 2.5);
  const std::vector<std::vector<double>> one{{1.0, 3.0}};
  const auto s = band_from_replicates("c", {0, 1}, one, 1e-10);
  EXPECT_EQ(s.lo, (std::vector<double>{1.0, 3.0}));
  EXPECT_EQ(s.hi, s.lo);
}

TEST(Envelope, NanPolicy)
{
  const double nan = std::nan("");
  std::vector<std::vector<double>> reps(39, {nan, 1.0, 0.0});
  for (int i = 0; i < 20; ++i)
    reps[i][2] = i;
  for (int i = 20; i < 39; ++i)
    reps[i][2] = nan;
  const auto b = band_from_replicates("h", {0, 1, 2}, reps, 0.95);
  EXPECT_EQ(b.all_nan, (std::vector<std::size_t>{0}));
  EXPECT_TRUE(std::isnan(b.lo[0]));
  EXPECT_EQ(b.n_effective, (std::vector<std::size_t>{0, 39, 20}));
  EXPECT_EQ(b.lo[2], 0.0);
  EXPECT_EQ(b.hi[2], 19.0);
  EXPECT_DOUBLE_EQ(b.mean[2], 9.5);
  std::vector<std::vector<double>> ragged{{1.0, 2.0}, {1.0}};
  EXPECT_THROW(band_from_replicates("x", {0, 1}, ragged, 0.5), Error);
}

TEST(Envelope, ThreadIndependentAndObserved)
{
  const auto w = PlanarWindow::unit_square();
  const auto r = uniform_r_grid(0.2, 10);
  const PatternGenerator gen = [&](Rng& rng) { return poisson_planar(50.0, w, rng); };
  const CurveStatistic stat = [&](const MarkedPointPattern& p) {
    return std::vector{k_inhom(p, homogeneous_intensity(p), EdgeCorrection::translation, r)};
  };
  EnvelopeOptions o;
  o.nsim = 39;
  o.master_seed = 17;
  o.threads = 1;
  const auto one = envelopes(gen, stat, o);
  o.threads = 4;
  Rng data(99);
  const auto observed = gen(data);
  const auto four = envelopes(gen, stat, o, &observed);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].lo, four[0].lo);
  EXPECT_EQ(one[0].hi, four[0].hi);
  EXPECT_EQ(one[0].mean, four[0].mean);
  ASSERT_TRUE(four[0].observed.has_value());
  EXPECT_EQ(*four[0].observed, stat(observed)[0].values);
  for (std::size_t k = 0; k < r.size(); ++k) {
    EXPECT_LE(one[0].lo[k], one[0].mean[k]);
    EXPECT_LE(one[0].mean[k], one[0].hi[k]);
  }
}

TEST(Envelope, MismatchedCurves)
{
  const auto w = PlanarWindow::unit_square();
  const PatternGenerator gen = [&](Rng& rng) { return poisson_planar(20.0, w, rng); };
  const CurveStatistic ragged = [&](const MarkedPointPattern& p) {
    const auto r = uniform_r_grid(0.1, p.size() % 2 ? 4 : 5);
    return std::vector{k_inhom(p, constant_intensity(20.0), EdgeCorrection::none, r)};
  };
  EnvelopeOptions o;
  o.nsim = 39;
  EXPECT_THROW(envelopes(gen, ragged, o), Error);
}

TEST(Parallel, CoversAllIndicesAndRethrows)
{
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), 7, [&](std::size_t i) { hits[i]++; });
  for (const auto& h : hits)
    EXPECT_EQ(h.load(), 1);
  try {
    parallel_for(100, 4, [](std::size_t i) {
      if (i == 30 || i == 80)
        throw std::runtime_error(std::to_string(i));
    });
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "30");
  }
}

TEST(Parallel, ResolveThreads)
{
  ::setenv("MARKEDPOINTS_THREADS", "3", 1);
  EXPECT_EQ(resolve_threads(0), 3u);
  EXPECT_EQ(resolve_threads(8), 3u);
  EXPECT_EQ(resolve_threads(2), 2u);
  ::unsetenv("MARKEDPOINTS_THREADS");
  EXPECT_GE(resolve_threads(0), 1u);
  EXPECT_EQ(resolve_threads(5), 5u);
}

TEST(Section5, SmallRunWritesFiles)
{
  auto tree = std::make_shared<const LinearNetwork>(synthetic_tree_network());
  Section5Options o;
  o.nsim = 39;
  o.bins = 50;
  const auto dir = std::filesystem::temp_directory_path() / "markedpoints_section5_test";
  std::filesystem::remove_all(dir);
  const auto out = reproduce_section5(tree, MarkModel::III, o, dir);
  ASSERT_EQ(out.bands.size(), 4u);
  EXPECT_EQ(out.bands[0].statistic, "stoyan");
  EXPECT_EQ(out.bands[0].rank, 1u);
  EXPECT_EQ(out.bands[0].r.back(), 250.0);
  EXPECT_EQ(out.files.size(), 5u);
  for (const auto& f : out.files)
    EXPECT_TRUE(std::filesystem::exists(f)) << f;
  std::filesystem::remove_all(dir);
}
