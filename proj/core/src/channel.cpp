#include "uavcov/channel.hpp"

#include <cmath>
#include <numbers>

#include "uavcov/errors.hpp"

namespace uavcov {

LinkGeometry LinkGeometry::from(double r2, double h) {
  LinkGeometry g;
  g.r2 = r2;
  g.h = h;
  g.d = std::sqrt(r2 + h * h);
  g.theta_deg = (180.0 / std::numbers::pi) * std::asin(h / g.d);
  return g;
}

LinkGeometry LinkGeometry::between(const UavState& uav, double x, double y) {
  const double dx = x - uav.x;
  const double dy = y - uav.y;
  return from(dx * dx + dy * dy, uav.h);
}

double los_probability(const Environment& env, const LinkGeometry& geo) {
  return 1.0 / (1.0 + env.c_env * std::exp(-env.d_env * (geo.theta_deg - env.c_env)));
}

double mean_path_loss(const Environment& env, const LinkGeometry& geo) {
  const double p = los_probability(env, geo);
  // d^alpha with r2 + h^2 directly for the common alpha = 2 case
  const double d2 = geo.r2 + geo.h * geo.h;
  const double loss = env.alpha == 2.0 ? d2 : std::pow(geo.d, env.alpha);
  return p * loss + env.eta * (1.0 - p) * loss;
}

double los_surrogate_slope(double h) { return -1e-11 * h * h + 15e-9 * h - 57e-7; }

double los_surrogate_intercept(double h) { return 2.37e-7 * h * h - 5.24e-4 * h + 1.32; }

double los_probability_approx(double h, double r2) {
  if (!(h >= 100.0 && h <= 2000.0)) {
    throw DomainError("los_probability_approx: h outside [100, 2000] m");
  }
  if (!(r2 >= 0.0 && r2 <= 1000.0 * 1000.0)) {
    throw DomainError("los_probability_approx: horizontal distance outside [0, 1000] m");
  }
  return los_surrogate_slope(h) * r2 + los_surrogate_intercept(h);
}

double min_power_per_user(const Environment& env, double w, double beta, double lbar) {
  return (std::exp2(beta / w) - 1.0) * env.n0 * lbar;
}

}  // namespace uavcov
