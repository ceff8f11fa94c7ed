#include "markedpoints/errors.hpp"
#include "markedpoints/simulate.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

using namespace markedpoints;

namespace {

struct Moments
{
  double mean = 0, var = 0;
  std::size_t n = 0;
};

Moments moments(const std::vector<double>& xs)
{
  Moments m;
  m.n = xs.size();
  for (double x : xs)
    m.mean += x / static_cast<double>(xs.size());
  for (double x : xs)
    m.var += (x - m.mean) * (x - m.mean) / static_cast<double>(xs.size() - 1);
  return m;
}

NetworkPtr path_network(double length)
{
  return std::make_shared<const LinearNetwork>(std::vector<Point2>{{0, 0}, {length / 2, 0}, {length / 2, length / 2}},
                                               std::vector<Segment>{{0, 1}, {1, 2}});
}

ErrorCode code_of(auto&& f)
{
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::parse_error;
}

double poisson_pmf(double mean, int k) { return std::exp(k * std::log(mean) - mean - std::lgamma(k + 1.0)); }

} // namespace

TEST(Seeds, DerivationIsStable)
{
  EXPECT_EQ(derive_seed(0, 0), derive_seed(0, 0));
  EXPECT_NE(derive_seed(0, 0), derive_seed(0, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(0, 0));
  auto a = make_rng({7, 3}), b = make_rng({7, 3});
  EXPECT_EQ(a(), b());
}

TEST(PoissonPlanar, CountsFollowPoisson)
{
  const auto w = PlanarWindow::unit_square();
  Rng rng(2024);
  // bins <=85, 86-90, ..., 111-115, >=116: 7 degrees of freedom
  std::vector<double> observed(8, 0.0);
  std::vector<double> counts;
  const int reps = 10000;
  for (int i = 0; i < reps; ++i) {
    const auto n = static_cast<int>(poisson_planar(100.0, w, rng).size());
    counts.push_back(n);
    observed[std::clamp((n - 81) / 5, 0, 7)] += 1;
  }
  std::vector<double> expected(8, 0.0);
  for (int k = 0; k < 400; ++k)
    expected[std::clamp((k - 81) / 5, 0, 7)] += reps * poisson_pmf(100.0, k);
  double chi2 = 0.0;
  for (int b = 0; b < 8; ++b)
    chi2 += (observed[b] - expected[b]) * (observed[b] - expected[b]) / expected[b];
  EXPECT_LT(chi2, 18.475);
  EXPECT_NEAR(moments(counts).mean, 100.0, 2.0);
}

TEST(PoissonPlanar, ZeroAndThinning)
{
  const auto w = PlanarWindow::unit_square();
  Rng rng(1);
  EXPECT_TRUE(poisson_planar(0.0, w, rng).empty());
  auto a = make_rng({5, 0}), b = make_rng({5, 0});
  const auto homogeneous = poisson_planar(80.0, w, a);
  const auto thinned = poisson_planar([](Point2) { return 80.0; }, 80.0, w, b);
  ASSERT_EQ(homogeneous.size(), thinned.size());
  for (std::size_t i = 0; i < homogeneous.size(); ++i)
    EXPECT_EQ(std::get<Point2>(homogeneous.points()[i].location), std::get<Point2>(thinned.points()[i].location));
  EXPECT_EQ(code_of([&] { poisson_planar([](Point2) { return 1.0; }, std::nullopt, w, rng); }),
            ErrorCode::missing_upper_bound);
  const auto half = poisson_planar([](Point2 u) { return u.x < 0.5 ? 100.0 : 0.0; }, 100.0, w, rng);
  for (const auto& p : half.points())
    EXPECT_LT(std::get<Point2>(p.location).x, 0.5);
}

TEST(PoissonNetwork, MeanAndIndependence)
{
  auto net = path_network(50.0);
  Rng rng(77);
  std::vector<double> total, first, second;
  for (int i = 0; i < 10000; ++i) {
    const auto p = poisson_network(1.0, net, rng);
    double c0 = 0, c1 = 0;
    for (const auto& q : p.points())
      (std::get<NetworkLocation>(q.location).segment == 0 ? c0 : c1) += 1;
    total.push_back(static_cast<double>(p.size()));
    first.push_back(c0);
    second.push_back(c1);
  }
  EXPECT_NEAR(moments(total).mean, 50.0, 1.5);
  const auto m0 = moments(first), m1 = moments(second);
  double cov = 0.0;
  for (std::size_t i = 0; i < first.size(); ++i)
    cov += (first[i] - m0.mean) * (second[i] - m1.mean) / static_cast<double>(first.size() - 1);
  const double se = std::sqrt(m0.var * m1.var / static_cast<double>(first.size()));
  EXPECT_LT(std::abs(cov), 3 * se);
  EXPECT_TRUE(poisson_network(0.0, net, rng).empty());
}

TEST(Lgcp, DegenerateFieldIsPoisson)
{
  auto net = path_network(40.0);
  GaussianFieldSpec spec{[](const NetworkLocation&) { return std::log(0.5); },
                         [](double, double) { return 0.0; }, {0, 0.0}, 0.0};
  const LgcpNetworkSampler sampler(spec, net, 1.0);
  EXPECT_EQ(sampler.cell_count(), 40u);
  Rng rng(8);
  std::vector<double> counts;
  for (int i = 0; i < 10000; ++i)
    counts.push_back(static_cast<double>(sampler.sample(rng).size()));
  const auto m = moments(counts);
  const double n = static_cast<double>(counts.size());
  EXPECT_NEAR(m.mean, 20.0, 3 * std::sqrt(20.0 / n));
  EXPECT_NEAR(m.var, 20.0, 3 * std::sqrt((20.0 + 2 * 20.0 * 20.0) / n));
}

TEST(Lgcp, ConstantFieldOverdispersed)
{
  auto net = path_network(40.0);
  GaussianFieldSpec spec{[](const NetworkLocation&) { return std::log(0.5) - 0.25; },
                         [](double, double) { return 0.5; }, {0, 0.0}, std::nullopt};
  Rng rng(9);
  std::vector<double> counts;
  for (int i = 0; i < 1000; ++i)
    counts.push_back(static_cast<double>(lgcp_network(spec, net, 2.0, rng).size()));
  const auto m = moments(counts);
  EXPECT_GT(m.var, m.mean);
  Rng z(3);
  const LgcpNetworkSampler sampler(spec, net, 2.0);
  const auto field = sampler.sample_field(z);
  for (double v : field)
    EXPECT_NEAR(v, field.front(), 1e-3);
}

TEST(Lgcp, Validation)
{
  auto net = path_network(20.0);
  GaussianFieldSpec asym{[](const NetworkLocation&) { return 0.0; },
                         [](double a, double b) { return std::exp(-std::abs(a - b)) + 0.01 * a; }, {0, 0.0}, {}};
  EXPECT_EQ(code_of([&] { LgcpNetworkSampler(asym, net, 1.0); }), ErrorCode::asymmetric_covariance);
  GaussianFieldSpec indefinite{[](const NetworkLocation&) { return 0.0; },
                               [](double a, double b) { return a == b ? 1.0 : -1.0; }, {0, 0.0}, 0.0};
  EXPECT_EQ(code_of([&] { LgcpNetworkSampler(indefinite, net, 1.0); }), ErrorCode::non_psd_covariance);
}

TEST(Irmps, Discrepancy)
{
  auto net = path_network(30.0);
  GaussianFieldSpec constant{[](const NetworkLocation&) { return 0.0; }, [](double, double) { return 2.0; },
                             {0, 0.0}, {}};
  Rng a(4);
  const auto r0 = irmps_check(constant, *net, 200, a);
  EXPECT_EQ(r0.max_discrepancy, 0.0);
  EXPECT_TRUE(r0.anchor_free);
  GaussianFieldSpec anchored{[](const NetworkLocation&) { return 0.0; },
                             [](double d1, double d2) { return std::exp(-(d1 + d2)); }, {0, 0.0}, {}};
  Rng b(4), c(4);
  const auto r1 = irmps_check(anchored, *net, 200, b);
  EXPECT_GT(r1.max_discrepancy, 1e-9);
  EXPECT_FALSE(r1.anchor_free);
  EXPECT_EQ(irmps_check(anchored, *net, 200, c).max_discrepancy, r1.max_discrepancy);
}

TEST(Cox, BalancedAndLinked)
{
  const auto w = PlanarWindow::unit_square();
  const FieldSampler half = [&](Rng&) { return Raster(w, {16, 16}, std::vector<double>(256, 50.0)); };
  Rng rng(12);
  std::vector<double> n1, n2;
  for (int i = 0; i < 400; ++i) {
    const auto c = linked_balanced_cox(CoxKind::balanced, 100.0, half, w, rng);
    for (std::size_t k = 0; k < 256; ++k)
      EXPECT_DOUBLE_EQ(c.z1.values()[k] + c.z2.values()[k], 100.0);
    const auto parts = split_by_type(c.pattern);
    n1.push_back(parts.contains("1") ? static_cast<double>(parts.at("1").size()) : 0.0);
    n2.push_back(parts.contains("2") ? static_cast<double>(parts.at("2").size()) : 0.0);
  }
  EXPECT_NEAR(moments(n1).mean, 50.0, 3 * std::sqrt(50.0 / 400));
  EXPECT_NEAR(moments(n2).mean, 50.0, 3 * std::sqrt(50.0 / 400));

  const auto field = gaussian_field_sampler(w, {16, 16}, std::log(40.0), 0.3, 0.2, FieldTransform::exponential);
  double s1 = 0, s2 = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto c = linked_balanced_cox(CoxKind::linked, 2.0, field, w, rng);
    for (const auto& p : c.pattern.points())
      (*p.type == "1" ? s1 : s2) += 1;
  }
  EXPECT_NEAR(s1 / s2, 2.0, 0.1);

  const FieldSampler high = [&](Rng&) { return Raster(w, {16, 16}, std::vector<double>(256, 5.0)); };
  EXPECT_EQ(code_of([&] { linked_balanced_cox(CoxKind::balanced, 4.0, high, w, rng); }), ErrorCode::balanced_range);
}

TEST(Models, MarkMechanisms)
{
  auto seg = std::make_shared<const LinearNetwork>(std::vector<Point2>{{0, 0}, {10, 0}}, std::vector<Segment>{{0, 1}});
  Rng rng(1);
  const MarkedPointPattern one(seg, {{NetworkLocation{0, 0.3}, {}, {}}});
  EXPECT_DOUBLE_EQ(*model_marks(MarkModel::II, one, {}, rng).points()[0].mark, 3.0);

  const MarkedPointPattern cluster(seg, {{NetworkLocation{0, 0.5}, {}, {}},
                                         {NetworkLocation{0, 0.52}, {}, {}},
                                         {NetworkLocation{0, 0.55}, {}, {}},
                                         {NetworkLocation{0, 0.45}, {}, {}},
                                         {NetworkLocation{0, 0.9}, {}, {}}});
  MarkModelParams p3;
  p3.radius = 1.0;
  EXPECT_EQ(*model_marks(MarkModel::III, cluster, p3, rng).points()[0].mark, 3.0);

  auto tree = std::make_shared<const LinearNetwork>(synthetic_tree_network());
  EXPECT_EQ(tree->segment_count(), 75u);
  EXPECT_EQ(tree->leaf_vertices().size(), 40u);
  const auto base = poisson_network(0.05, tree, rng);
  MarkModelParams noiseless;
  noiseless.noise_sd = 0.0;
  const auto m1 = model_marks(MarkModel::I, base, noiseless, rng);
  for (std::size_t i = 0; i < m1.size(); ++i)
    for (std::size_t j = 0; j < m1.size(); ++j) {
      const auto a = tree->embed(std::get<NetworkLocation>(m1.points()[i].location));
      const auto b = tree->embed(std::get<NetworkLocation>(m1.points()[j].location));
      if (a.x + a.y < b.x + b.y) {
        EXPECT_LT(*m1.points()[i].mark, *m1.points()[j].mark);
      }
    }
  const double diameter = tree->vertex_diameter();
  for (const auto& q : model_marks(MarkModel::II, base, {}, rng).points()) {
    EXPECT_GE(*q.mark, 0.0);
    EXPECT_LE(*q.mark, diameter);
  }
  auto ring = std::make_shared<const LinearNetwork>(std::vector<Point2>{{0, 0}, {1, 0}, {0, 1}},
                                                    std::vector<Segment>{{0, 1}, {1, 2}, {2, 0}});
  EXPECT_EQ(code_of([&] { model_marks(MarkModel::II, MarkedPointPattern(ring, {{NetworkLocation{0, 0.5}, {}, {}}}), {}, rng); }),
            ErrorCode::no_leaf_vertices);
}

TEST(Models, Reproducible)
{
  auto tree = std::make_shared<const LinearNetwork>(synthetic_tree_network());
  auto a = make_rng({3, 1}), b = make_rng({3, 1});
  const auto pa = model_marks(MarkModel::I, poisson_network(0.05, tree, a), {}, a);
  const auto pb = model_marks(MarkModel::I, poisson_network(0.05, tree, b), {}, b);
  ASSERT_EQ(pa.size(), pb.size());
  for (std::size_t i = 0; i < pa.size(); ++i)
    EXPECT_EQ(pa.points()[i].mark, pb.points()[i].mark);
}
