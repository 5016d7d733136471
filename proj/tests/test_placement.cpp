#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "uavcov/errors.hpp"
#include "uavcov/placement.hpp"

namespace uavcov {
namespace {

const Region kRegion{-500.0, 500.0, -250.0, 250.0};
const Region kLeft{-500.0, 0.0, -250.0, 250.0};

double loss_at(const Environment& env, const DensityField& f, const Cell& cell, double h,
               double x, double y) {
  return cell_loss_integral(env, UavState{0, x, y, h, 5e7}, cell, f);
}

TEST(Centroid, UniformRectangleCentre) {
  const DensityField f(DensitySpec::uniform(), {0.0, 1000.0, 0.0, 500.0}, {200, 100});
  const Point2 c = centroid_location(f, Cell::whole(f.lattice()));
  EXPECT_NEAR(c.x, 500.0, 1e-9);
  EXPECT_NEAR(c.y, 250.0, 1e-9);
}

TEST(Centroid, CentredHotspot) {
  const DensityField f(DensitySpec::hotspot(-250.0, 0.0, 0.01), kRegion, {200, 100});
  const Point2 c = centroid_location(f, Cell::inside(f.lattice(), kLeft));
  EXPECT_NEAR(c.x, -250.0, 1e-9);
  EXPECT_NEAR(c.y, 0.0, 1e-9);
}

TEST(Centroid, HotspotMatchesFineGrid) {
  const DensityField f(DensitySpec::hotspot(-100.0, 100.0, 0.01), kRegion, {200, 100});
  const Point2 c = centroid_location(f, Cell::inside(f.lattice(), kLeft));
  double m0 = 0.0, mx = 0.0, my = 0.0;
  for (int i = 0; i < 5000; ++i) {
    for (int j = 0; j < 1000; ++j) {
      const double x = -500.0 + 0.1 * (i + 0.5), y = -250.0 + 0.5 * (j + 0.5);
      const double w = std::exp(-((x + 100.0) * (x + 100.0) + (y - 100.0) * (y - 100.0)) / 2e4);
      m0 += w;
      mx += w * x;
      my += w * y;
    }
  }
  EXPECT_NEAR(c.x, mx / m0, 0.5);
  EXPECT_NEAR(c.y, my / m0, 0.5);
}

TEST(Centroid, EmptyCellThrows) {
  const DensityField f(DensitySpec::uniform(), kRegion, {20, 10});
  EXPECT_THROW(centroid_location(f, Cell{}), EmptyCell);
}

TEST(ExpectedPower, ZeroRateAndNoiseLinearity) {
  const DensityField f(DensitySpec::hotspot(-100.0, 100.0, 0.01), kRegion, {200, 100});
  const Cell cell = Cell::inside(f.lattice(), kLeft);
  Environment env;
  const UavState uav{0, -250.0, 0.0, 200.0, 5e7};
  EXPECT_EQ(expected_power_over_cell(env, uav, cell, f, 5e5, 0.0), 0.0);
  const double p = expected_power_over_cell(env, uav, cell, f, 5e5, 1e6);
  env.n0 *= 2.0;
  EXPECT_EQ(expected_power_over_cell(env, uav, cell, f, 5e5, 1e6), 2.0 * p);
}

TEST(ExpectedPower, ReferenceFixture) {
  const Environment env;
  const DensityField f(DensitySpec::hotspot(-100.0, 100.0, 0.01), kRegion, {200, 100});
  const Cell cell = Cell::inside(f.lattice(), kLeft);
  const double users = expected_users(f, cell, 200.0);

  // Oracle: direct midpoint sum with its own channel and normalizer.
  double norm = 0.0, mass = 0.0, loss = 0.0;
  auto shape = [](double x, double y) {
    return std::exp(-(x + 100.0) * (x + 100.0) / 2e4) * std::exp(-(y - 100.0) * (y - 100.0) / 2e4);
  };
  for (int i = 0; i < 200; ++i) {
    for (int j = 0; j < 100; ++j) norm += shape(-497.5 + 5.0 * i, -247.5 + 5.0 * j) * 25.0;
  }
  for (int i = 0; i < 100; ++i) {
    for (int j = 0; j < 100; ++j) {
      const double x = -497.5 + 5.0 * i, y = -247.5 + 5.0 * j;
      const double m = shape(x, y) / norm * 25.0;
      const double r2 = (x + 250.0) * (x + 250.0) + y * y;
      mass += m;
      loss += testing::oracle_mean_loss(env, r2, 200.0) * m;
    }
  }
  EXPECT_NEAR(users, 200.0 * mass, 1e-9);
  const double w = 5e7 / users;
  const double oracle = (std::exp2(1e6 / w) - 1.0) * env.n0 * loss;
  const double got =
      expected_power_over_cell(env, UavState{0, -250.0, 0.0, 200.0, 5e7}, cell, f, w, 1e6);
  EXPECT_NEAR(got, oracle, 1e-9 * oracle);
  EXPECT_NEAR(got, 1.0465895098474772e-06, 1e-9 * got);
}

TEST(Newton, SymmetricDensityGivesCentre) {
  const Environment env;
  const DensityField f(DensitySpec::hotspot(-250.0, 0.0, 0.01), kRegion, {200, 100});
  const Cell cell = Cell::inside(f.lattice(), kLeft);
  for (double h : {200.0, 500.0, 1000.0}) {
    const PlacementResult r = newton_raphson_location(env, f, cell, h);
    EXPECT_NEAR(r.x_opt, -250.0, 1e-6) << h;
    EXPECT_NEAR(r.y_opt, 0.0, 1e-6) << h;
    EXPECT_LT(r.residual, 1e-8);
    EXPECT_EQ(r.method, PlacementMethod::kNewtonRaphson);
  }
}

TEST(Newton, HighAltitudeUniformNearCentroid) {
  const Environment env;
  const DensityField f(DensitySpec::uniform(), kRegion, {200, 100});
  const Cell cell = Cell::inside(f.lattice(), {-500.0, 100.0, -250.0, 250.0});
  const Point2 c = centroid_location(f, cell);
  const PlacementResult r = newton_raphson_location(env, f, cell, 2000.0);
  EXPECT_LT(std::hypot(r.x_opt - c.x, r.y_opt - c.y), 5.0);
}

TEST(Newton, ZeroSlopeReducesToCentroid) {
  const Environment env;
  const DensityField f(DensitySpec::hotspot(-100.0, 100.0, 0.01), kRegion, {200, 100});
  const Cell cell = Cell::inside(f.lattice(), kLeft);
  NewtonOptions opts;
  opts.zero_slope = true;
  const PlacementResult r = newton_raphson_location(env, f, cell, 300.0, opts);
  const Point2 c = centroid_location(f, cell);
  EXPECT_NEAR(r.x_opt, c.x, 1e-6);
  EXPECT_NEAR(r.y_opt, c.y, 1e-6);
}

TEST(Newton, ResidualAtReturnedRoot) {
  const Environment env;
  std::mt19937_64 rng(21);
  for (int n = 0; n < 10; ++n) {
    const Scenario s = testing::random_scenario(rng, {100, 50});
    const DensityField f(s.density, s.region, s.grid);
    const Cell cell = Cell::inside(f.lattice(), s.subareas[s.density.mu_x < 0.0 ? 0 : 1]);
    for (double h : {500.0, 1000.0}) {
      const PlacementResult r = newton_raphson_location(env, f, cell, h);
      const CubicSystemValue v = evaluate_cubic_system(env, f, cell, h, r.x_opt, r.y_opt);
      EXPECT_LT(v.residual, 1e-8);
      EXPECT_NEAR(v.residual, r.residual, 1e-9);
    }
  }
}

TEST(Newton, TranslationEquivariant) {
  const Environment env;
  const double ox = 300.0, oy = -200.0;
  const DensityField a(DensitySpec::hotspot(-100.0, 100.0, 0.01), kRegion, {200, 100});
  const Region shifted{kRegion.x_lo + ox, kRegion.x_hi + ox, kRegion.y_lo + oy, kRegion.y_hi + oy};
  const DensityField b(DensitySpec::hotspot(-100.0 + ox, 100.0 + oy, 0.01), shifted, {200, 100});
  const Region left_b{kLeft.x_lo + ox, kLeft.x_hi + ox, kLeft.y_lo + oy, kLeft.y_hi + oy};
  const PlacementResult ra = newton_raphson_location(env, a, Cell::inside(a.lattice(), kLeft), 400.0);
  const PlacementResult rb =
      newton_raphson_location(env, b, Cell::inside(b.lattice(), left_b), 400.0);
  EXPECT_NEAR(rb.x_opt - ox, ra.x_opt, 1e-6);
  EXPECT_NEAR(rb.y_opt - oy, ra.y_opt, 1e-6);
}

TEST(Newton, AltitudeOutsideFitDomain) {
  const Environment env;
  const DensityField f(DensitySpec::uniform(), kRegion, {20, 10});
  EXPECT_THROW(newton_raphson_location(env, f, Cell::whole(f.lattice()), 50.0), DomainError);
  EXPECT_THROW(newton_raphson_location(env, f, Cell::whole(f.lattice()), 2500.0), DomainError);
}

TEST(BruteForce, UniformHighAltitudeCentre) {
  const Environment env;
  const DensityField f(DensitySpec::uniform(), kRegion, {200, 100});
  const Cell cell = Cell::inside(f.lattice(), kLeft);
  const Region box = bounding_box(f.lattice(), cell);
  const PlacementResult r = brute_force_location(env, f, cell, 1500.0, 16);
  const double pitch = box.width() / 15.0 / 4.0;
  EXPECT_LE(std::fabs(r.x_opt + 250.0), pitch);
  EXPECT_LE(std::fabs(r.y_opt), box.height() / 15.0 / 4.0);
  EXPECT_EQ(r.method, PlacementMethod::kBruteForce);
}

TEST(BruteForce, NoWorseThanCentroid) {
  const Environment env;
  std::mt19937_64 rng(8);
  for (int n = 0; n < 10; ++n) {
    const Scenario s = testing::random_scenario(rng, {100, 50});
    const DensityField f(s.density, s.region, s.grid);
    const Cell cell = Cell::inside(f.lattice(), s.subareas[s.density.mu_x < 0.0 ? 0 : 1]);
    const double h = s.uavs[0].h;
    const PlacementResult r = brute_force_location(env, f, cell, h);
    const Point2 c = centroid_location(f, cell);
    EXPECT_LE(loss_at(env, f, cell, h, r.x_opt, r.y_opt), loss_at(env, f, cell, h, c.x, c.y));
  }
}

TEST(BruteForce, PulledTowardHotspot) {
  const Environment env;
  const DensityField f(DensitySpec::hotspot(-100.0, 100.0, 0.01), kRegion, {200, 100});
  const PlacementResult r = brute_force_location(env, f, Cell::inside(f.lattice(), kLeft), 200.0);
  EXPECT_GT(r.x_opt, -250.0);
  EXPECT_GT(r.y_opt, 0.0);
}

TEST(BruteForce, ResolutionTooSmall) {
  const Environment env;
  const DensityField f(DensitySpec::uniform(), kRegion, {20, 10});
  EXPECT_THROW(brute_force_location(env, f, Cell::whole(f.lattice()), 200.0, 7), DomainError);
}

TEST(PlaceUav, DispatchesByMethod) {
  const Environment env;
  const DensityField f(DensitySpec::hotspot(-100.0, 100.0, 0.01), kRegion, {100, 50});
  const Cell cell = Cell::inside(f.lattice(), kLeft);
  const UavState uav{0, -250.0, 0.0, 300.0, 5e7};
  EXPECT_EQ(place_uav(env, f, cell, uav, PlacementMethod::kCentroid).method,
            PlacementMethod::kCentroid);
  EXPECT_EQ(place_uav(env, f, cell, uav, PlacementMethod::kBruteForce).method,
            PlacementMethod::kBruteForce);
  const UavState low{0, -250.0, 0.0, 80.0, 5e7};
  EXPECT_EQ(place_uav(env, f, cell, low, PlacementMethod::kNewtonRaphson).method,
            PlacementMethod::kBruteForce);
}

}  // namespace
}  // namespace uavcov
