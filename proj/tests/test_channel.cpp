#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "uavcov/channel.hpp"
#include "uavcov/errors.hpp"

namespace uavcov {
namespace {

using testing::oracle_los;
using testing::oracle_mean_loss;

LinkGeometry at_angle(double theta_deg, double h = 100.0) {
  const double t = theta_deg * std::acos(-1.0) / 180.0;
  const double r = h / std::tan(t);
  return LinkGeometry::from(r * r, h);
}

TEST(LosProbability, OverheadMatchesOracle) {
  const Environment env;
  const double expected = oracle_los(11.9, 0.13, 90.0);
  EXPECT_NEAR(expected, 0.999537, 5e-7);
  EXPECT_NEAR(los_probability(env, LinkGeometry::from(0.0, 100.0)), expected, 1e-12);
}

TEST(LosProbability, ExponentVanishesAtThetaEqualC) {
  const Environment env;
  EXPECT_NEAR(los_probability(env, at_angle(11.9)), 1.0 / 12.9, 1e-12);
}

TEST(LosProbability, FlatWhenSlopeIsZero) {
  Environment env;
  env.d_env = 0.0;
  for (double th : {5.0, 30.0, 60.0, 89.0}) {
    EXPECT_DOUBLE_EQ(los_probability(env, at_angle(th)), 1.0 / 12.9);
  }
}

// Draws are limited to D(theta - C) <= 25; beyond that P_LOS rounds to 1.
TEST(LosProbability, BoundedAndIncreasingInElevation) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uc(1.0, 30.0), ud(0.01, 1.0), uth(0.5, 89.5);
  for (int n = 0; n < 10000; ++n) {
    Environment env;
    double a = 0.0;
    do {
      env.c_env = uc(rng);
      env.d_env = ud(rng);
      a = uth(rng);
    } while (env.d_env * (a + 0.25 - env.c_env) > 25.0);
    const double b = a + 0.25;
    const double pa = los_probability(env, at_angle(a));
    const double pb = los_probability(env, at_angle(b));
    ASSERT_GT(pa, 0.0);
    ASSERT_LT(pa, 1.0);
    ASSERT_LT(pa, pb) << "theta " << a << " c " << env.c_env << " d " << env.d_env;
  }
}

TEST(MeanPathLoss, EtaOneIsFreeSpace) {
  Environment env;
  env.eta = 1.0;
  const auto g = LinkGeometry::from(300.0 * 300.0, 250.0);
  EXPECT_DOUBLE_EQ(mean_path_loss(env, g), g.d * g.d);
}

TEST(MeanPathLoss, OverheadAtHundredMetres) {
  const Environment env;
  const double expected = oracle_mean_loss(env, 0.0, 100.0);
  EXPECT_NEAR(expected, 1.0459e4, 1.0);
  EXPECT_NEAR(mean_path_loss(env, LinkGeometry::from(0.0, 100.0)), expected, 1e-9 * expected);
}

TEST(MeanPathLoss, BetweenLosAndNlosBounds) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ur(0.0, 1500.0), uh(10.0, 2000.0), ua(2.0, 4.0);
  for (int n = 0; n < 2000; ++n) {
    Environment env;
    env.alpha = ua(rng);
    const double r = ur(rng);
    const auto g = LinkGeometry::from(r * r, uh(rng));
    const double da = std::pow(g.d, env.alpha);
    const double l = mean_path_loss(env, g);
    ASSERT_GE(l, da * (1 - 1e-12));
    ASSERT_LE(l, env.eta * da * (1 + 1e-12));
    ASSERT_NEAR(l, oracle_mean_loss(env, g.r2, g.h), 1e-9 * l);
  }
}

TEST(LosSurrogate, PolynomialValues) {
  EXPECT_NEAR(los_surrogate_slope(1000.0), -7e-7, 1e-18);
  EXPECT_NEAR(los_surrogate_intercept(1000.0), 1.033, 1e-12);
  EXPECT_NEAR(los_probability_approx(1000.0, 0.0), 1.033, 1e-12);
  EXPECT_NEAR(los_probability_approx(100.0, 0.0), 2.37e-3 - 5.24e-2 + 1.32, 1e-12);
  EXPECT_NEAR(los_probability_approx(100.0, 0.0), 1.26997, 1e-9);
}

TEST(LosSurrogate, RejectsOutsideFitDomain) {
  EXPECT_THROW(los_probability_approx(99.0, 0.0), DomainError);
  EXPECT_THROW(los_probability_approx(2001.0, 0.0), DomainError);
  EXPECT_THROW(los_probability_approx(500.0, 1001.0 * 1001.0), DomainError);
  EXPECT_NO_THROW(los_probability_approx(2000.0, 1000.0 * 1000.0));
}

TEST(LosSurrogate, ErrorBoundOverFitDomain) {
  const Environment env;
  double worst_oracle = 0.0;
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    for (int j = 0; j < 50; ++j) {
      const double h = 100.0 + 1900.0 * i / 49.0;
      const double r = 1000.0 * j / 49.0;
      const double f1 = -1e-11 * h * h + 15e-9 * h - 57e-7;
      const double f2 = 2.37e-7 * h * h - 5.24e-4 * h + 1.32;
      const double exact = oracle_los(11.9, 0.13, testing::oracle_elevation_deg(r * r, h));
      worst_oracle = std::max(worst_oracle, std::fabs(f1 * r * r + f2 - exact));
      worst = std::max(worst, std::fabs(los_probability_approx(h, r * r) -
                                        los_probability(env, LinkGeometry::from(r * r, h))));
    }
  }
  EXPECT_NEAR(worst, worst_oracle, 1e-9);
  EXPECT_NEAR(worst, 15.465557111759555, 1e-9);
}

TEST(MinPower, Examples) {
  const Environment env;
  EXPECT_EQ(min_power_per_user(env, 5e5, 0.0, 1e4), 0.0);
  EXPECT_EQ(min_power_per_user(env, 5e5, 5e5, 1e4), env.n0 * 1e4);
  EXPECT_NEAR(min_power_per_user(env, 5e5, 1e6, 1e4), 3e-9, 1e-21);
}

TEST(MinPower, LinearInNoise) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (int n = 0; n < 1000; ++n) {
    Environment a, b;
    const double k = u(rng);
    b.n0 = a.n0 * k;
    const double w = 1e5 * u(rng), beta = 1e5 * u(rng), l = 1e4 * u(rng);
    const double pa = min_power_per_user(a, w, beta, l);
    ASSERT_NEAR(min_power_per_user(b, w, beta, l), k * pa, 1e-12 * k * pa);
  }
}

}  // namespace
}  // namespace uavcov
