#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lzcontrol/constraints.hpp"
#include "oracles.hpp"

using namespace lzcontrol;
using std::numbers::pi;

namespace {

ControlField constant_field(double value, const TimeGrid& g = TimeGrid(), const ShapeFunction& s = ShapeFunction{}) {
  return ControlField(g, s, std::vector<double>(g.samples(), value));
}

}  // namespace

TEST(Zeta, ZeroAngle) {
  const auto v = eta(constant_field(0.0)).values;
  EXPECT_NEAR(v[0], 0.0, 1e-15);
  EXPECT_NEAR(v[1], 1.0, 1e-14);
  EXPECT_NEAR(v[2], 0.0, 1e-15);
  EXPECT_NEAR(v[3], 0.0, 1e-15);
  EXPECT_NEAR(v[4], 0.5, 1e-14);
}

TEST(Zeta, LinearAngle) {
  // theta = pi t
  const auto v = eta(constant_field(pi)).values;
  EXPECT_NEAR(v[0], 2.0 / pi, 1e-6);
  EXPECT_NEAR(v[1], 0.0, 1e-6);
  EXPECT_NEAR(v[2], 2.0 / pi, 1e-6);
  EXPECT_NEAR(v[3], 1.0 / pi, 1e-6);
  EXPECT_NEAR(v[4], -2.0 / (pi * pi), 1e-6);
}

TEST(Zeta, LinearAngleAgainstQuadrature) {
  // theta = a t, double integral reduced to int_0^1 2 (1 - u) sin(a u) du
  const double a = 2.3;
  const auto v = eta(constant_field(a)).values;
  auto q = [](const std::function<double(double)>& f) { return oracle::refined_integral(f, 1.0, 1024); };
  EXPECT_NEAR(v[0], q([&](double t) { return std::sin(a * t); }), 1e-6);
  EXPECT_NEAR(v[1], q([&](double t) { return std::cos(a * t); }), 1e-6);
  EXPECT_NEAR(v[2], q([&](double u) { return 2.0 * (1.0 - u) * std::sin(a * u); }), 1e-6);
  EXPECT_NEAR(v[3], q([&](double t) { return t * std::sin(a * t); }), 1e-6);
  EXPECT_NEAR(v[4], q([&](double t) { return t * std::cos(a * t); }), 1e-6);
}

TEST(Zeta, DoubleIntegralMatchesQuadraticSum) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const TimeGrid g(512, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> theta(g.samples());
    double acc = 0.0;
    for (auto& x : theta) x = (acc += u(rng) * g.dt() * 20.0);
    const double fast = zeta(theta, g)[2];
    const double brute = oracle::zeta3_brute(theta, g.dt());
    EXPECT_LE(std::abs(fast - brute), 1e-12 * std::max(1.0, std::abs(brute)));
  }
}

TEST(Zeta, SecondOrderInTimeStep) {
  auto field = [](double t) { return 6.0 * std::sin(pi * t) - 4.0 * std::sin(3 * pi * t) + 1.5; };
  std::vector<std::array<double, 5>> v;
  for (std::size_t n : {128u, 256u, 512u}) v.push_back(eta(oracle::sample(field, TimeGrid(n, 1.0), ShapeFunction{})).values);
  for (std::size_t i = 0; i < 5; ++i) {
    const double d1 = std::abs(v[0][i] - v[1][i]);
    const double d2 = std::abs(v[1][i] - v[2][i]);
    EXPECT_GE(std::log2(d1 / d2), 1.9) << "component " << i + 1;
  }
}

TEST(Eta, DependsOnControlOnlyThroughTheta) {
  std::mt19937_64 rng(42);
  const ControlField c = oracle::random_smooth_field(rng, TimeGrid(), ShapeFunction{});
  const auto theta = theta_profile(c);
  EXPECT_EQ(eta(c).values, zeta(theta.at_midpoints, c.grid()));
  // the shape function only enters the inner product
  const ControlField c2(c.grid(), ShapeFunction(2.0), std::vector<double>(c.samples().begin(), c.samples().end()));
  EXPECT_EQ(eta(c).values, eta(c2).values);
}

TEST(Eta, SignFlipSymmetry) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    ControlField c = oracle::random_smooth_field(rng, TimeGrid(), ShapeFunction{});
    const auto a = eta(c).values;
    c *= -1.0;
    const auto b = eta(c).values;
    EXPECT_NEAR(b[0], -a[0], 1e-14);
    EXPECT_NEAR(b[1], a[1], 1e-14);
    EXPECT_NEAR(b[2], -a[2], 1e-14);
    EXPECT_NEAR(b[3], -a[3], 1e-14);
    EXPECT_NEAR(b[4], a[4], 1e-14);
  }
}

TEST(Eta, Norms) {
  ConstraintVector v;
  v.values = {3.0, 4.0, 0.0, 12.0, 0.0};
  EXPECT_DOUBLE_EQ(v.reduced_norm(), 5.0);
  EXPECT_DOUBLE_EQ(v.full_norm(), 13.0);
  EXPECT_EQ(constraint_count(ConstraintMode::none), 0u);
  EXPECT_EQ(constraint_count(ConstraintMode::reduced), 3u);
  EXPECT_EQ(constraint_count(ConstraintMode::full), 5u);
}

TEST(GradEta, MatchesCentralDifferences) {
  std::mt19937_64 rng(44);
  for (double p : {1.0, 2.0}) {
    const ShapeFunction s(p);
    for (int trial = 0; trial < 5; ++trial) {
      const ControlField c = oracle::random_smooth_field(rng, TimeGrid(), s, 6, 12.0);
      const ControlField v = oracle::random_field(rng, c.grid(), s);
      const auto grads = grad_eta(c);
      for (std::size_t i = 0; i < 5; ++i) {
        const double fd = oracle::directional_fd([&](const ControlField& x) { return eta(x).values[i]; }, c, v, 1e-5);
        EXPECT_LE(std::abs(inner_product(grads[i], v) - fd), 1e-6 * std::max(1.0, std::abs(fd))) << "eta_" << i + 1;
      }
    }
  }
}

TEST(GradEta, DoubleIntegralGradientMatchesChainRule) {
  std::mt19937_64 rng(45);
  const TimeGrid g(256, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    const ControlField c = oracle::random_smooth_field(rng, g, ShapeFunction{});
    const auto fast = grad_eta(c)[2];
    const auto brute = oracle::eta3_gradient_brute(c);
    for (std::size_t k = 0; k < g.samples(); ++k) EXPECT_NEAR(fast[k], brute[k], 1e-12);
  }
}

TEST(GradEta, ZeroAngleProfiles) {
  const ControlField c = constant_field(0.0);
  const auto g = grad_eta(c, GradientWeighting::unweighted);
  const auto r = grad_eta(c, GradientWeighting::riesz);
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double t = c.grid().midpoint(k);
    EXPECT_NEAR(g[0][k], 1.0 - t, 1e-14);
    EXPECT_NEAR(g[1][k], 0.0, 1e-15);
    EXPECT_NEAR(r[0][k], c.weights()[k] * (1.0 - t), 1e-14);
  }
}

TEST(GradEta, ConstraintGradientsSelectByMode) {
  std::mt19937_64 rng(46);
  const ControlField c = oracle::random_smooth_field(rng, TimeGrid(), ShapeFunction{});
  EXPECT_TRUE(constraint_gradients(c, ConstraintMode::none).empty());
  EXPECT_EQ(constraint_gradients(c, ConstraintMode::reduced).size(), 3u);
  const auto full = constraint_gradients(c, ConstraintMode::full);
  const auto all = grad_eta(c);
  ASSERT_EQ(full.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t k = 0; k < c.size(); ++k) EXPECT_EQ(full[i][k], all[i][k]);
}
