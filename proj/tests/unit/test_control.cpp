#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lzcontrol/control.hpp"
#include "lzcontrol/errors.hpp"
#include "lzcontrol/units.hpp"
#include "oracles.hpp"

using namespace lzcontrol;
using std::numbers::pi;

TEST(TimeGrid, Validation) {
  EXPECT_THROW(TimeGrid(0, 1.0), InvalidArgument);
  EXPECT_THROW(TimeGrid(8, 0.0), InvalidArgument);
  EXPECT_THROW(TimeGrid(8, -1.0), InvalidArgument);
  EXPECT_THROW(TimeGrid(8, NAN), InvalidArgument);
  const TimeGrid g;
  EXPECT_EQ(g.samples(), 1024u);
  EXPECT_EQ(g.final_time(), 1.0);
  EXPECT_DOUBLE_EQ(g.midpoint(0), 0.5 / 1024);
}

TEST(ShapeFunction, Values) {
  EXPECT_DOUBLE_EQ(shape_eval(ShapeFunction(1.0), 0.5, 1.0), 1.0);
  EXPECT_NEAR(shape_eval(ShapeFunction(2.0), 0.25, 1.0), 0.5, 1e-15);
  for (double t : {0.0, 0.1, 0.77, 1.0}) EXPECT_EQ(shape_eval(ShapeFunction(0.0), t, 1.0), 1.0);
  EXPECT_NEAR(shape_eval(ShapeFunction(1.0), 1.0, 2.0), 1.0, 1e-15);
}

TEST(ShapeFunction, RejectsBadInput) {
  EXPECT_THROW(ShapeFunction(-0.5), InvalidArgument);
  EXPECT_THROW(shape_eval(ShapeFunction{}, -0.01, 1.0), InvalidArgument);
  EXPECT_THROW(shape_eval(ShapeFunction{}, 1.01, 1.0), InvalidArgument);
}

TEST(ShapeFunction, PositiveAtAllMidpoints) {
  for (double p : {0.0, 0.5, 1.0, 3.0}) {
    const ControlField c(TimeGrid(4096, 1.0), ShapeFunction(p));
    for (double w : c.weights()) EXPECT_GT(w, 0.0);
  }
}

TEST(ControlField, RejectsNonFiniteAndWrongLength) {
  EXPECT_THROW(ControlField(TimeGrid(4, 1.0), ShapeFunction{}, {1, 2, NAN, 4}), InvalidArgument);
  EXPECT_THROW(ControlField(TimeGrid(4, 1.0), ShapeFunction{}, {1, 2, 3}), InvalidArgument);
}

TEST(InnerProduct, ZeroAndShapeIntegral) {
  const TimeGrid g;
  const ShapeFunction s;
  const ControlField zero(g, s);
  const ControlField shape = oracle::sample([](double t) { return std::sin(pi * t); }, g, s);
  EXPECT_EQ(inner_product(zero, shape), 0.0);
  EXPECT_NEAR(inner_product(shape, shape), 2.0 / pi, 1e-6);
}

TEST(InnerProduct, GridMismatchThrows) {
  const ControlField a(TimeGrid(16, 1.0), ShapeFunction{});
  const ControlField b(TimeGrid(32, 1.0), ShapeFunction{});
  const ControlField c(TimeGrid(16, 1.0), ShapeFunction(2.0));
  EXPECT_THROW(inner_product(a, b), InvalidArgument);
  EXPECT_THROW(inner_product(a, c), InvalidArgument);
}

TEST(InnerProduct, AgreesWithRefinedQuadrature) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const TimeGrid g;
  const ShapeFunction s;
  for (int trial = 0; trial < 20; ++trial) {
    // f g / s carries a sin^2 factor, so the midpoint error starts at O(dt^4)
    const double a1 = u(rng), a2 = u(rng), b1 = u(rng), b2 = u(rng);
    auto f = [=](double t) { return std::pow(std::sin(pi * t), 2) * (a1 + a2 * std::cos(3 * t)); };
    auto h = [=](double t) { return std::sin(pi * t) * (b1 + b2 * t * t); };
    const double got = inner_product(oracle::sample(f, g, s), oracle::sample(h, g, s));
    const double ref = oracle::refined_integral([&](double t) { return f(t) * h(t) / std::sin(pi * t); }, 1.0, 1024);
    EXPECT_LE(oracle::rel_err(got, ref), 1e-8);
  }
}

TEST(InnerProduct, SymmetricBilinearPositive) {
  std::mt19937_64 rng(22);
  const TimeGrid g(257, 1.3);
  const ShapeFunction s(1.5);
  for (int i = 0; i < 50; ++i) {
    const ControlField f = oracle::random_field(rng, g, s), h = oracle::random_field(rng, g, s),
                       k = oracle::random_field(rng, g, s);
    EXPECT_NEAR(inner_product(f, h), inner_product(h, f), 1e-14);
    ControlField comb = f;
    comb *= 2.5;
    comb.axpy(-1.25, h);
    EXPECT_NEAR(inner_product(comb, k), 2.5 * inner_product(f, k) - 1.25 * inner_product(h, k), 1e-12);
    EXPECT_GT(inner_product(f, f), 0.0);
  }
}

TEST(ThetaProfile, ConstantField) {
  const TimeGrid g(100, 2.0);
  const ControlField c(g, ShapeFunction{}, std::vector<double>(100, 1.75));
  const ThetaProfile th = theta_profile(c);
  for (std::size_t k = 0; k < 100; ++k) EXPECT_NEAR(th.at_midpoints[k], 1.75 * g.midpoint(k), 1e-13);
  EXPECT_NEAR(th.final_angle, 1.75 * 2.0, 1e-13);
  const ThetaProfile zero = theta_profile(ControlField(g, ShapeFunction{}));
  for (double v : zero.at_midpoints) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(zero.final_angle, 0.0);
}

TEST(ThetaProfile, LinearInControl) {
  std::mt19937_64 rng(23);
  const TimeGrid g(64, 1.0);
  const ControlField a = oracle::random_field(rng, g, ShapeFunction{}), b = oracle::random_field(rng, g, ShapeFunction{});
  ControlField comb = a;
  comb *= 3.0;
  comb.axpy(-2.0, b);
  const auto ta = theta_profile(a), tb = theta_profile(b), tc = theta_profile(comb);
  for (std::size_t k = 0; k < 64; ++k) {
    EXPECT_NEAR(tc.at_midpoints[k], 3.0 * ta.at_midpoints[k] - 2.0 * tb.at_midpoints[k], 1e-14);
  }
}

TEST(Fluence, Basics) {
  const TimeGrid g(50, 3.0);
  EXPECT_NEAR(fluence(ControlField(g, ShapeFunction{}, std::vector<double>(50, 2.0))), 4.0 * 3.0, 1e-13);
  EXPECT_EQ(fluence(ControlField(g, ShapeFunction{})), 0.0);
  std::mt19937_64 rng(24);
  EXPECT_GT(fluence(oracle::random_field(rng, g, ShapeFunction{})), 0.0);
}

TEST(InitialSquarePulse, AreaAndShape) {
  for (std::size_t n : {64u, 100u, 1024u, 4096u}) {
    for (double area : {0.0, pi / 2, pi, -2.0}) {
      const ControlField c = initial_square_pulse(area, TimeGrid(n, 1.0), ShapeFunction{});
      EXPECT_NEAR(theta_profile(c).final_angle, area, 1e-10);
    }
  }
  const ControlField zero = initial_square_pulse(0.0, TimeGrid(), ShapeFunction{});
  EXPECT_EQ(max_abs(zero), 0.0);
  const ControlField c = initial_square_pulse(pi, TimeGrid(), ShapeFunction{});
  EXPECT_GE(max_abs(c), pi);
  EXPECT_LE(max_abs(c), 2 * pi);
  // ramps start near zero
  EXPECT_LT(std::abs(c[0]), 1e-3 * max_abs(c));
  EXPECT_LT(std::abs(c[c.size() - 1]), 1e-3 * max_abs(c));
}

TEST(Units, TableFactors) {
  EXPECT_EQ(units::convert(1.0, units::Quantity::time, units::Direction::scaled_to_si), 2.0e-8);
  EXPECT_EQ(units::convert(1.0, units::Quantity::energy, units::Direction::scaled_to_si), 5.273e-27);
  EXPECT_EQ(units::convert(1.0, units::Quantity::angular_momentum, units::Direction::scaled_to_si), 1.055e-34);
}

TEST(Units, RoundTrip) {
  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (auto q : {units::Quantity::time, units::Quantity::energy, units::Quantity::angular_momentum}) {
    for (int i = 0; i < 1000; ++i) {
      const double x = u(rng);
      const double back =
          units::convert(units::convert(x, q, units::Direction::scaled_to_si), q, units::Direction::si_to_scaled);
      EXPECT_LE(oracle::rel_err(back, x), 1e-15);
    }
  }
}

TEST(Units, ParseQuantity) {
  EXPECT_EQ(units::parse_quantity("time"), units::Quantity::time);
  EXPECT_EQ(units::parse_quantity("energy"), units::Quantity::energy);
  EXPECT_EQ(units::parse_quantity("angular-momentum"), units::Quantity::angular_momentum);
  EXPECT_EQ(units::parse_quantity("hbar"), units::Quantity::angular_momentum);
  EXPECT_THROW(units::parse_quantity("length"), InvalidArgument);
}
