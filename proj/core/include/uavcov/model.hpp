#pragma once

#include <cstddef>
#include <vector>

namespace uavcov {

/// Air-to-ground channel constants and receiver noise.
///
/// `c_env`/`d_env` shape the LOS-probability S-curve, `eta` is the NLOS
/// excess attenuation and `alpha` the path-loss exponent. Defaults are the
/// dense-urban values; `n0` has no published value and only scales watts.
struct Environment {
  double c_env = 11.9;
  double d_env = 0.13;
  double eta = 100.0;
  double alpha = 2.0;
  double n0 = 1e-13;  // W

  friend bool operator==(const Environment&, const Environment&) = default;
};

/// Axis-aligned rectangle in meters.
struct Region {
  double x_lo = 0.0;
  double x_hi = 0.0;
  double y_lo = 0.0;
  double y_hi = 0.0;

  double width() const { return x_hi - x_lo; }
  double height() const { return y_hi - y_lo; }
  double area() const { return width() * height(); }
  bool contains(double x, double y) const {
    return x >= x_lo && x <= x_hi && y >= y_lo && y <= y_hi;
  }

  friend bool operator==(const Region&, const Region&) = default;
};

struct UavState {
  std::size_t id = 0;
  double x = 0.0;
  double y = 0.0;
  double h = 0.0;          // altitude, m
  double bandwidth = 0.0;  // B_i, Hz

  friend bool operator==(const UavState&, const UavState&) = default;
};

/// Cell counts of the uniform lattice used for quadrature and assignment.
struct GridSpec {
  std::size_t nx = 200;
  std::size_t ny = 100;

  std::size_t size() const { return nx * ny; }
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

enum class DensityKind { kUniform, kTruncatedGaussian };

/// Parameters of a user-density family. Gaussian fields are truncated to the
/// scenario region and normalized there.
struct DensitySpec {
  DensityKind kind = DensityKind::kUniform;
  double mu_x = 0.0;
  double mu_y = 0.0;
  double sigma_x = 1.0;
  double sigma_y = 1.0;

  static DensitySpec uniform() { return {}; }
  static DensitySpec hotspot(double mu_x, double mu_y, double rho) {
    return {DensityKind::kTruncatedGaussian, mu_x, mu_y, 1.0 / rho, 1.0 / rho};
  }

  friend bool operator==(const DensitySpec&, const DensitySpec&) = default;
};

struct Scenario {
  Environment env;
  Region region;
  std::vector<UavState> uavs;
  DensitySpec density;
  double n_users = 200.0;
  double rate_req = 1e6;  // beta, bit/s
  GridSpec grid;
  std::vector<Region> subareas;  // initial cell per UAV

  std::size_t uav_count() const { return uavs.size(); }
  std::vector<double> bandwidths() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Returns `s` unchanged if every invariant holds, otherwise throws
/// InvalidScenario naming the first violation. Idempotent.
Scenario validate_scenario(const Scenario& s);

/// The two-UAV hotspot layout the reference experiments use: 1000 m x 500 m
/// centred region split in two, UAVs at the subarea centres.
Scenario reference_scenario(double rho = 0.01, double altitude = 200.0);

}  // namespace uavcov
