#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "uavcov/density.hpp"
#include "uavcov/model.hpp"
#include "uavcov/partition.hpp"
#include "uavcov/placement.hpp"

namespace uavcov {

struct TrajectoryPoint {
  int iteration = 0;
  double total_power = 0.0;
};

struct PowerReport {
  std::vector<double> per_uav_power;  // W
  double total_power = 0.0;           // W
  std::vector<double> masses;         // M_i
  int iterations = 0;
  std::vector<TrajectoryPoint> trajectory;
  bool converged = true;
};

/// Sum over cells of Int (2^(beta M_i / B_i) - 1) N0 Lbar_i f, exact channel.
PowerReport total_power(const Environment& env, std::span<const UavState> uavs,
                        const CellPartition& partition, const DensityField& f, double beta,
                        std::span<const double> b_list, double n_users);

enum class Association { kOptimalTransport, kVoronoi };

/// Cell association for fixed UAVs; ot falls back to the single cell when K = 1.
CellPartition associate(const Environment& env, std::span<const UavState> uavs,
                        const DensityField& f, double beta, std::span<const double> b_list,
                        double n_users, Association association,
                        const PartitionOptions& opts = {});

enum class InitialCells { kSubareas, kVoronoi };

struct AlternateOptions {
  int max_rounds = 20;
  double tol = 1e-4;
  PlacementMethod placement_method = PlacementMethod::kNewtonRaphson;
  Association association = Association::kOptimalTransport;
  InitialCells initial_cells = InitialCells::kSubareas;
  PartitionOptions partition;
};

struct Deployment {
  std::vector<UavState> uavs;
  CellPartition partition;
  PowerReport report;
};

/// Alternates UAV placement (cells fixed) and cell association (UAVs fixed).
///
/// A placement is kept per UAV only if it does not raise that UAV's cell
/// power; a new partition is kept only if it does not raise the total, so the
/// recorded trajectory is non-increasing. Stops when a round improves the
/// total by less than `tol` (relative) or after `max_rounds`; in the latter
/// case the report says converged = false.
Deployment alternate_optimize(const Scenario& scenario, const AlternateOptions& opts = {});

/// The deployment strategies compared in the experiments.
enum class Method {
  kVoronoiFixed,  // UAVs as given, nearest-UAV cells
  kOtFixed,       // UAVs as given, optimal cells ("association-only")
  kLocationOnly,  // optimal placement with nearest-UAV cells
  kCombined,      // optimal placement with optimal cells
};

std::string_view method_name(Method m);
Method parse_method(std::string_view name);  // throws DomainError

Deployment evaluate_method(const Scenario& scenario, Method method,
                           const AlternateOptions& opts = {});

enum class SweepMode { kJointEqual, kPerUavGrid };

struct SweepPoint {
  std::vector<double> altitudes;  // one per UAV
  PowerReport report;
};

struct SweepResult {
  SweepMode mode = SweepMode::kJointEqual;
  Association association = Association::kOptimalTransport;
  std::vector<double> axis;  // the swept altitude values
  std::vector<SweepPoint> points;
  std::size_t argmin = 0;  // index into points

  // Joint sweeps only. individual_curves[i][k] is the total power with UAV i
  // at axis[k] and every other UAV at the joint argmin altitude.
  std::vector<std::vector<double>> individual_curves;
  std::vector<double> individual_argmin;  // per UAV, altitude

  // Joint sweeps only: altitude minimizing each UAV's own power along the
  // joint sweep.
  std::vector<double> per_uav_argmin_along_joint;
};

/// Total power over altitudes with UAV positions held at the scenario's and
/// cells re-solved at every point. Throws DomainError on altitudes outside
/// [100, 2000] m or an oversized per-UAV grid.
SweepResult altitude_sweep(const Scenario& scenario, std::span<const double> h_values,
                           SweepMode mode, Association association);

struct DensitySweepRow {
  double rho = 0.0;
  Method method = Method::kVoronoiFixed;
  PowerReport report;
};

/// Rebuilds the hotspot with sigma_x = sigma_y = 1 / rho for every rho and
/// evaluates each method. Rows are ordered by rho, then by `methods` order.
std::vector<DensitySweepRow> density_sweep(const Scenario& scenario,
                                           std::span<const double> rho_values,
                                           std::span<const Method> methods,
                                           const AlternateOptions& opts = {});

/// Copy of `scenario` with the hotspot density parameter rho.
Scenario with_density(const Scenario& scenario, double rho);

/// Copy of `scenario` with every UAV at altitude h.
Scenario with_altitude(const Scenario& scenario, double h);

}  // namespace uavcov
