#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "uavcov/density.hpp"
#include "uavcov/model.hpp"

namespace uavcov {

/// Owner map over the density lattice plus per-UAV loads.
struct CellPartition {
  GridSpec grid;
  std::vector<std::size_t> owner;  // per lattice point, in [0, K)
  std::vector<double> masses;      // M_i, expected users
  std::vector<double> t_terms;     // T_i, W; zero unless produced by ot_partition
  int iterations = 0;
  bool converged = true;

  std::size_t uav_count() const { return masses.size(); }
  Cell cell(std::size_t i) const;
};

/// Builds a partition from an owner map, computing M_i from the density.
CellPartition partition_from_owner(std::vector<std::size_t> owner, std::size_t uav_count,
                                   const DensityField& f, double n_users);

/// Each lattice point goes to the first rectangle containing it (nearest
/// rectangle if none does).
CellPartition partition_from_regions(std::span<const Region> rects, const DensityField& f,
                                     double n_users);

/// Nearest UAV by 3D distance; ties to the lowest index.
CellPartition voronoi_partition(std::span<const UavState> uavs, const DensityField& f,
                                double n_users);

/// Transport cost per user at (x, y): N0 times the average path loss.
double cost_kernel(const Environment& env, const UavState& uav, double x, double y);

/// Load penalty S'(M_i) Int_cell F f with S(M) = 2^(beta M / b) - 1.
double t_term(const Environment& env, const UavState& uav, const Cell& cell,
              const DensityField& f, double beta, double b, double n_users);

struct PartitionOptions {
  int max_iterations = 100;
  double converged_fraction = 1e-3;  // allowed share of points a re-assignment may flip
  std::optional<std::vector<std::size_t>> warm_start;  // default: Voronoi
};

/// Load-aware optimal cell association.
///
/// A point belongs to the UAV minimizing S(M_i) F_i(x, y) + N T_i, the
/// first-order optimality condition of sum_i S(M_i) Int_Ci F_i f. The fixed
/// point is reached by monotone descent: the synchronous re-assignment is
/// computed from the current loads, zero-density points follow it directly,
/// and the remaining flips are ranked by their exact effect on the objective
/// and applied as the longest improving prefix (halving on failure).
///
/// Requires K >= 2. Never throws on non-convergence; `converged` is false if
/// re-assigning against the final loads would still flip at least
/// `converged_fraction` of the points.
CellPartition ot_partition(const Environment& env, std::span<const UavState> uavs,
                           const DensityField& f, double beta, std::span<const double> b_list,
                           double n_users, const PartitionOptions& opts = {});

}  // namespace uavcov
