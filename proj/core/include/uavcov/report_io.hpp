#pragma once

#include <ostream>
#include <span>
#include <string>

#include "uavcov/density.hpp"
#include "uavcov/optimizer.hpp"
#include "uavcov/partition.hpp"

namespace uavcov {

// All CSV output: header row, '.' decimal separator, '\n' line ends, numbers
// in shortest round-trip form.

std::string format_number(double v);

/// Columns: x,y,owner,density.
void write_partition_csv(std::ostream& out, const CellPartition& partition,
                         const DensityField& f);

/// JSON mirror of a PowerReport with the UAV positions it refers to.
std::string deployment_to_json(const Deployment& d);

/// One row per sweep point: h_0..h_{K-1},association,total_w,p_*,m_*,iterations,converged,is_argmin.
void write_altitude_sweep_csv(std::ostream& out, const SweepResult& sweep);

/// Per-UAV individual-altitude curves of a joint sweep: h,uav,total_w,is_argmin.
void write_individual_curves_csv(std::ostream& out, const SweepResult& sweep);

/// One row per (rho, method): rho,method,total_w,p_*,m_*,iterations,converged.
void write_density_sweep_csv(std::ostream& out, std::span<const DensitySweepRow> rows);

struct MethodRow {
  Method method;
  Deployment deployment;
};

/// method,total_w,ratio_to_best,p_*,m_*,x_*,y_*,iterations,converged.
void write_method_table_csv(std::ostream& out, std::span<const MethodRow> rows);

}  // namespace uavcov
