#include <gtest/gtest.h>

#include "uavcov/errors.hpp"
#include "uavcov/model.hpp"

namespace uavcov {
namespace {

TEST(ValidateScenario, ReferenceSetupAccepted) {
  const Scenario s = reference_scenario();
  EXPECT_EQ(s.uav_count(), 2u);
  EXPECT_EQ(s.n_users, 200.0);
  EXPECT_EQ(s.rate_req, 1e6);
  EXPECT_EQ(s.region.area(), 1000.0 * 500.0);
  EXPECT_EQ(s.uavs[0].bandwidth, 50e6);
  EXPECT_EQ(s.env.c_env, 11.9);
  EXPECT_EQ(s.env.d_env, 0.13);
  EXPECT_EQ(s.env.eta, 100.0);
  EXPECT_EQ(validate_scenario(s), s);
}

TEST(ValidateScenario, DegenerateRegion) {
  Scenario s = reference_scenario();
  s.region.x_hi = s.region.x_lo;
  EXPECT_THROW(validate_scenario(s), InvalidScenario);
}

TEST(ValidateScenario, ZeroAltitude) {
  Scenario s = reference_scenario();
  s.uavs[1].h = 0.0;
  EXPECT_THROW(validate_scenario(s), InvalidScenario);
}

TEST(ValidateScenario, RejectsBadFields) {
  auto expect_bad = [](auto mutate) {
    Scenario s = reference_scenario();
    mutate(s);
    EXPECT_THROW(validate_scenario(s), InvalidScenario);
  };
  expect_bad([](Scenario& s) { s.uavs[0].bandwidth = 0.0; });
  expect_bad([](Scenario& s) { s.uavs[0].x = 900.0; });
  expect_bad([](Scenario& s) { s.uavs[1].id = 7; });
  expect_bad([](Scenario& s) { s.density.sigma_x = 0.0; });
  expect_bad([](Scenario& s) { s.n_users = 0.0; });
  expect_bad([](Scenario& s) { s.rate_req = -1.0; });
  expect_bad([](Scenario& s) { s.grid.nx = 1; });
  expect_bad([](Scenario& s) { s.env.eta = 0.5; });
  expect_bad([](Scenario& s) { s.subareas.pop_back(); });
  expect_bad([](Scenario& s) { s.subareas[0].x_hi = 100.0; });
  expect_bad([](Scenario& s) { s.subareas[1].x_lo = 10.0; });
}

TEST(ReferenceScenario, HotspotWidthIsInverseDensity) {
  const Scenario s = reference_scenario(0.02, 300.0);
  EXPECT_EQ(s.density.kind, DensityKind::kTruncatedGaussian);
  EXPECT_EQ(s.density.sigma_x, 50.0);
  EXPECT_EQ(s.density.mu_x, -100.0);
  EXPECT_EQ(s.density.mu_y, 100.0);
  for (const auto& u : s.uavs) EXPECT_EQ(u.h, 300.0);
}

}  // namespace
}  // namespace uavcov
