#pragma once

#include <array>
#include <cstddef>

#include "uavcov/density.hpp"
#include "uavcov/model.hpp"

namespace uavcov {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

enum class PlacementMethod { kCentroid, kNewtonRaphson, kBruteForce };

struct PlacementResult {
  double x_opt = 0.0;
  double y_opt = 0.0;
  PlacementMethod method = PlacementMethod::kCentroid;
  int iterations = 0;
  double residual = 0.0;  // normalized max(|g1|, |g2|); zero for non-Newton methods
};

/// Axis-aligned box spanned by the cell's lattice points.
Region bounding_box(const Lattice& lattice, const Cell& cell);

/// Int_cell Lbar(x, y) f(x, y) dA for a UAV, exact channel. Power over the
/// cell is this times (2^(beta/w) - 1) N0.
double cell_loss_integral(const Environment& env, const UavState& uav, const Cell& cell,
                          const DensityField& f);

/// Average transmit power of `uav` over its cell with per-user bandwidth `w`.
double expected_power_over_cell(const Environment& env, const UavState& uav, const Cell& cell,
                                const DensityField& f, double w, double beta);

/// Density-weighted centroid of the cell. Throws EmptyCell on mass < 1e-12.
Point2 centroid_location(const DensityField& f, const Cell& cell);

/// Which coefficient set to use for the stationarity cubics.
///
/// kDerived expands d/dx_i Int (r^2 + h^2)(q + lambda r^2) f exactly.
/// kPrinted reproduces the published a3/a4 (and b3/b4) verbatim; it does not
/// reduce to the centroid as lambda -> 0 and is kept for comparison only.
enum class CoefficientForm { kDerived, kPrinted };

struct NewtonOptions {
  int max_iterations = 50;
  double tolerance = 1e-8;
  CoefficientForm form = CoefficientForm::kDerived;
  bool zero_slope = false;  // force lambda = 0 (constant-LOS surrogate)
};

/// The coupled cubic system g1(x_i, y_i) = 0, g2(x_i, y_i) = 0 evaluated at a
/// candidate position, with its analytic Jacobian.
struct CubicSystemValue {
  std::array<double, 4> a{};  // g1 = a0 x^3 + a1 x^2 + a2 x + a3 (local frame)
  std::array<double, 4> b{};
  double g1 = 0.0;
  double g2 = 0.0;
  std::array<double, 4> jacobian{};  // row-major d(g1,g2)/d(x,y)
  double residual = 0.0;             // max of the two normalized |g|
};

/// Evaluates the system at global position (x, y) from fresh cell moments.
/// Throws DomainError if h is outside [100, 2000] m and EmptyCell on a
/// massless cell.
CubicSystemValue evaluate_cubic_system(const Environment& env, const DensityField& f,
                                       const Cell& cell, double h, double x, double y,
                                       const NewtonOptions& opts = {});

/// Damped 2D Newton iteration on the cubic system, started at the centroid.
/// Steps leaving the cell bounding box are halved. Throws NoConvergence after
/// max_iterations, DomainError on h outside [100, 2000] m.
PlacementResult newton_raphson_location(const Environment& env, const DensityField& f,
                                        const Cell& cell, double h,
                                        const NewtonOptions& opts = {});

/// Exact-channel grid search over the cell bounding box (resolution^2
/// candidates plus the cell centroid), refined once at 4x finer pitch around
/// the best candidate.
PlacementResult brute_force_location(const Environment& env, const DensityField& f,
                                     const Cell& cell, double h, std::size_t resolution = 16);

/// Position for `uav` over `cell` using `method`. Newton falls back to brute
/// force on NoConvergence or an altitude outside its fit domain.
PlacementResult place_uav(const Environment& env, const DensityField& f, const Cell& cell,
                          const UavState& uav, PlacementMethod method);

}  // namespace uavcov
