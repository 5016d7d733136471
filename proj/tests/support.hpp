#pragma once

#include <cmath>
#include <random>

#include "uavcov/model.hpp"

namespace uavcov::testing {

// Reference channel written out from scratch, used as an oracle.
inline double oracle_los(double c, double d, double theta_deg) {
  return 1.0 / (1.0 + c * std::exp(-d * (theta_deg - c)));
}

inline double oracle_elevation_deg(double r2, double h) {
  return 180.0 / std::acos(-1.0) * std::asin(h / std::sqrt(r2 + h * h));
}

inline double oracle_mean_loss(const Environment& env, double r2, double h) {
  const double p = oracle_los(env.c_env, env.d_env, oracle_elevation_deg(r2, h));
  const double dist_a = std::pow(std::sqrt(r2 + h * h), env.alpha);
  return p * dist_a + env.eta * (1.0 - p) * dist_a;
}

inline Scenario two_uav_uniform(double h = 200.0, GridSpec grid = {80, 40}) {
  Scenario s = reference_scenario(0.01, h);
  s.density = DensitySpec::uniform();
  s.grid = grid;
  return s;
}

// Random two-UAV hotspot scenario on the reference region.
inline Scenario random_scenario(std::mt19937_64& rng, GridSpec grid = {80, 40}) {
  std::uniform_real_distribution<double> ux(-400.0, 400.0);
  std::uniform_real_distribution<double> uy(-200.0, 200.0);
  std::uniform_real_distribution<double> urho(0.005, 0.05);
  std::uniform_real_distribution<double> uh(150.0, 600.0);
  Scenario s = reference_scenario();
  s.grid = grid;
  s.density = DensitySpec::hotspot(ux(rng), uy(rng), urho(rng));
  s.uavs[0].x = std::uniform_real_distribution<double>(-450.0, -50.0)(rng);
  s.uavs[1].x = std::uniform_real_distribution<double>(50.0, 450.0)(rng);
  for (auto& u : s.uavs) {
    u.y = uy(rng);
    u.h = uh(rng);
  }
  return s;
}

}  // namespace uavcov::testing
