#pragma once

#include "uavcov/model.hpp"

namespace uavcov {

/// Horizontal-offset / altitude pair for one UAV-user link.
struct LinkGeometry {
  double r2 = 0.0;         // squared horizontal distance, m^2
  double h = 0.0;          // UAV altitude, m
  double d = 0.0;          // 3D distance, m
  double theta_deg = 0.0;  // elevation angle, degrees

  static LinkGeometry from(double r2, double h);
  static LinkGeometry between(const UavState& uav, double x, double y);
};

/// Probability of a line-of-sight link at the given elevation angle.
double los_probability(const Environment& env, const LinkGeometry& geo);

/// LOS/NLOS-averaged path loss, P_LOS d^alpha + eta (1 - P_LOS) d^alpha.
double mean_path_loss(const Environment& env, const LinkGeometry& geo);

// Quadratic-in-radius LOS surrogate, P_LOS ~ slope(h) r^2 + intercept(h),
// fitted for 100 m <= h <= 2000 m and r <= 1000 m.
double los_surrogate_slope(double h);
double los_surrogate_intercept(double h);

/// Unclamped surrogate value. Throws DomainError outside the fit domain.
double los_probability_approx(double h, double r2);

/// Smallest transmit power meeting rate `beta` on bandwidth `w` through
/// average loss `lbar`: (2^(beta/w) - 1) N0 lbar.
double min_power_per_user(const Environment& env, double w, double beta, double lbar);

}  // namespace uavcov
