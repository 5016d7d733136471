#include "uavcov/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uavcov/errors.hpp"

namespace uavcov {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidScenario(what);
}

bool finite(double v) { return std::isfinite(v); }

void check_region(const Region& r, const std::string& name) {
  require(finite(r.x_lo) && finite(r.x_hi) && finite(r.y_lo) && finite(r.y_hi),
          name + ": bounds must be finite");
  require(r.x_lo < r.x_hi, name + ": x_lo < x_hi");
  require(r.y_lo < r.y_hi, name + ": y_lo < y_hi");
}

double overlap_area(const Region& a, const Region& b) {
  const double w = std::min(a.x_hi, b.x_hi) - std::max(a.x_lo, b.x_lo);
  const double h = std::min(a.y_hi, b.y_hi) - std::max(a.y_lo, b.y_lo);
  return (w > 0.0 && h > 0.0) ? w * h : 0.0;
}

}  // namespace

std::vector<double> Scenario::bandwidths() const {
  std::vector<double> b;
  b.reserve(uavs.size());
  for (const auto& u : uavs) b.push_back(u.bandwidth);
  return b;
}

Scenario validate_scenario(const Scenario& s) {
  const auto& e = s.env;
  require(finite(e.c_env) && e.c_env > 0.0, "env.c > 0");
  require(finite(e.d_env) && e.d_env >= 0.0, "env.d >= 0");
  require(finite(e.eta) && e.eta >= 1.0, "env.eta >= 1");
  require(finite(e.alpha) && e.alpha > 0.0, "env.alpha > 0");
  require(finite(e.n0) && e.n0 > 0.0, "env.n0 > 0");

  check_region(s.region, "region");

  require(!s.uavs.empty(), "uavs: at least one UAV");
  for (std::size_t i = 0; i < s.uavs.size(); ++i) {
    const auto& u = s.uavs[i];
    const std::string name = "uavs[" + std::to_string(i) + "]";
    require(u.id == i, name + ": id equals its index");
    require(finite(u.x) && finite(u.y), name + ": position must be finite");
    require(finite(u.h) && u.h > 0.0, name + ": h > 0");
    require(finite(u.bandwidth) && u.bandwidth > 0.0, name + ": bandwidth > 0");
    require(s.region.contains(u.x, u.y), name + ": inside region footprint");
  }

  if (s.density.kind == DensityKind::kTruncatedGaussian) {
    const auto& d = s.density;
    require(finite(d.mu_x) && finite(d.mu_y), "density: mean must be finite");
    require(finite(d.sigma_x) && d.sigma_x > 0.0, "density: sigma_x > 0");
    require(finite(d.sigma_y) && d.sigma_y > 0.0, "density: sigma_y > 0");
  }

  require(finite(s.n_users) && s.n_users >= 1.0, "n_users >= 1");
  require(finite(s.rate_req) && s.rate_req >= 0.0, "rate_req >= 0");
  require(s.grid.nx >= 2 && s.grid.ny >= 2, "grid: nx >= 2 and ny >= 2");

  require(s.subareas.size() == s.uavs.size(), "subareas: one per UAV");
  double covered = 0.0;
  const double tol = 1e-9 * s.region.area();
  for (std::size_t i = 0; i < s.subareas.size(); ++i) {
    const auto& a = s.subareas[i];
    const std::string name = "subareas[" + std::to_string(i) + "]";
    check_region(a, name);
    require(a.x_lo >= s.region.x_lo && a.x_hi <= s.region.x_hi &&
                a.y_lo >= s.region.y_lo && a.y_hi <= s.region.y_hi,
            name + ": inside region");
    for (std::size_t j = 0; j < i; ++j) {
      require(overlap_area(a, s.subareas[j]) <= tol,
              name + ": overlaps subareas[" + std::to_string(j) + "]");
    }
    covered += a.area();
  }
  require(std::abs(covered - s.region.area()) <= tol, "subareas: must tile the region");
  return s;
}

Scenario reference_scenario(double rho, double altitude) {
  Scenario s;
  s.region = {-500.0, 500.0, -250.0, 250.0};
  s.uavs = {{0, -250.0, 0.0, altitude, 50e6}, {1, 250.0, 0.0, altitude, 50e6}};
  s.density = DensitySpec::hotspot(-100.0, 100.0, rho);
  s.n_users = 200.0;
  s.rate_req = 1e6;
  s.grid = {200, 100};
  s.subareas = {{-500.0, 0.0, -250.0, 250.0}, {0.0, 500.0, -250.0, 250.0}};
  return s;
}

}  // namespace uavcov
