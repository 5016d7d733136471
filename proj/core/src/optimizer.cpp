#include "uavcov/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "uavcov/channel.hpp"
#include "uavcov/errors.hpp"

namespace uavcov {
namespace {

constexpr double kMinCellMass = 1e-12;

// Per-UAV power in units of N0, plus masses, for an owner map.
struct CellPowers {
  std::vector<double> power;
  std::vector<double> masses;
  double total = 0.0;
};

CellPowers cell_powers(const Environment& env, std::span<const UavState> uavs,
                       std::span<const std::size_t> owner, const DensityField& f, double beta,
                       std::span<const double> b_list, double n_users) {
  const std::size_t k = uavs.size();
  const auto& lat = f.lattice();
  std::vector<double> mass(k, 0.0), loss(k, 0.0);
  for (std::size_t p = 0; p < owner.size(); ++p) {
    const std::size_t i = owner[p];
    const double w = f.mass(p);
    if (w == 0.0) continue;
    mass[i] += w;
    loss[i] += mean_path_loss(env, LinkGeometry::between(uavs[i], lat.x(p), lat.y(p))) * w;
  }
  CellPowers out;
  out.power.resize(k);
  out.masses.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    out.masses[i] = n_users * mass[i];
    out.power[i] = (std::exp2(beta * out.masses[i] / b_list[i]) - 1.0) * loss[i];
    out.total += out.power[i];
  }
  return out;
}

PowerReport to_report(const CellPowers& cp, double n0) {
  PowerReport r;
  r.per_uav_power.reserve(cp.power.size());
  for (double p : cp.power) {
    r.per_uav_power.push_back(p * n0);
    r.total_power += p * n0;
  }
  r.masses = cp.masses;
  return r;
}

void check_altitudes(std::span<const double> h_values) {
  if (h_values.empty()) throw DomainError("altitude_sweep: no altitudes given");
  for (double h : h_values) {
    if (!(h >= 100.0 && h <= 2000.0)) {
      throw DomainError("altitude_sweep: altitude " + std::to_string(h) +
                        " outside [100, 2000] m");
    }
  }
}

struct FixedEvaluation {
  PowerReport report;
  double normalized_total;
};

FixedEvaluation evaluate_at(const Scenario& s, const DensityField& f,
                            std::span<const double> altitudes, Association association) {
  std::vector<UavState> uavs = s.uavs;
  for (std::size_t i = 0; i < uavs.size(); ++i) uavs[i].h = altitudes[i];
  const auto b = s.bandwidths();
  const CellPartition part = associate(s.env, uavs, f, s.rate_req, b, s.n_users, association);
  const CellPowers cp = cell_powers(s.env, uavs, part.owner, f, s.rate_req, b, s.n_users);
  FixedEvaluation out{to_report(cp, s.env.n0), cp.total};
  out.report.iterations = part.iterations;
  out.report.converged = part.converged;
  out.report.trajectory = {{0, out.report.total_power}};
  return out;
}

std::size_t argmin_of(std::span<const double> v) {
  return static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
}

}  // namespace

PowerReport total_power(const Environment& env, std::span<const UavState> uavs,
                        const CellPartition& partition, const DensityField& f, double beta,
                        std::span<const double> b_list, double n_users) {
  if (partition.owner.size() != f.lattice().size()) {
    throw DomainError("total_power: partition does not cover the lattice");
  }
  if (b_list.size() != uavs.size()) {
    throw DomainError("total_power: one bandwidth per UAV required");
  }
  PowerReport r =
      to_report(cell_powers(env, uavs, partition.owner, f, beta, b_list, n_users), env.n0);
  r.iterations = partition.iterations;
  r.converged = partition.converged;
  r.trajectory = {{0, r.total_power}};
  return r;
}

CellPartition associate(const Environment& env, std::span<const UavState> uavs,
                        const DensityField& f, double beta, std::span<const double> b_list,
                        double n_users, Association association, const PartitionOptions& opts) {
  if (association == Association::kVoronoi || uavs.size() < 2) {
    return voronoi_partition(uavs, f, n_users);
  }
  return ot_partition(env, uavs, f, beta, b_list, n_users, opts);
}

Deployment alternate_optimize(const Scenario& scenario, const AlternateOptions& opts) {
  const Scenario s = validate_scenario(scenario);
  const DensityField f(s.density, s.region, s.grid);
  const auto b = s.bandwidths();
  const std::size_t k = s.uavs.size();

  std::vector<UavState> uavs = s.uavs;
  CellPartition part = opts.initial_cells == InitialCells::kSubareas
                           ? partition_from_regions(s.subareas, f, s.n_users)
                           : voronoi_partition(uavs, f, s.n_users);
  CellPowers current = cell_powers(s.env, uavs, part.owner, f, s.rate_req, b, s.n_users);

  std::vector<TrajectoryPoint> trajectory{{0, current.total * s.env.n0}};
  bool converged = false;
  int round = 0;
  while (round < opts.max_rounds) {
    ++round;
    const double round_start = current.total;

    // Placement half-step: each UAV independently over its own cell.
    bool moved = false;
    for (std::size_t i = 0; i < k; ++i) {
      const Cell cell = part.cell(i);
      if (cell.empty() || part.masses[i] < kMinCellMass * s.n_users) continue;
      const PlacementResult pr = place_uav(s.env, f, cell, uavs[i], opts.placement_method);
      UavState candidate = uavs[i];
      candidate.x = pr.x_opt;
      candidate.y = pr.y_opt;
      if (candidate == uavs[i]) continue;
      if (cell_loss_integral(s.env, candidate, cell, f) <=
          cell_loss_integral(s.env, uavs[i], cell, f)) {
        uavs[i] = candidate;
        moved = true;
      }
    }
    if (moved) {
      current = cell_powers(s.env, uavs, part.owner, f, s.rate_req, b, s.n_users);
      trajectory.push_back({round, current.total * s.env.n0});
    }

    // Association half-step.
    CellPartition next =
        associate(s.env, uavs, f, s.rate_req, b, s.n_users, opts.association, opts.partition);
    CellPowers next_powers = cell_powers(s.env, uavs, next.owner, f, s.rate_req, b, s.n_users);
    if (next_powers.total > current.total && opts.association == Association::kOptimalTransport &&
        k >= 2) {
      PartitionOptions warm = opts.partition;
      warm.warm_start = part.owner;
      CellPartition alt = ot_partition(s.env, uavs, f, s.rate_req, b, s.n_users, warm);
      CellPowers alt_powers = cell_powers(s.env, uavs, alt.owner, f, s.rate_req, b, s.n_users);
      if (alt_powers.total < next_powers.total) {
        next = std::move(alt);
        next_powers = std::move(alt_powers);
      }
    }
    if (next_powers.total > current.total) {
      converged = true;  // no improving association exists; keep the previous cells
      break;
    }
    if (next.owner != part.owner) {
      part = std::move(next);
      current = std::move(next_powers);
      trajectory.push_back({round, current.total * s.env.n0});
    } else {
      part.iterations = next.iterations;
      part.converged = next.converged;
    }

    if (round_start - current.total <= opts.tol * round_start) {
      converged = true;
      break;
    }
  }

  Deployment d;
  d.uavs = std::move(uavs);
  d.report = to_report(current, s.env.n0);
  d.report.iterations = round;
  d.report.trajectory = std::move(trajectory);
  d.report.converged = converged && part.converged;
  d.partition = std::move(part);
  return d;
}

std::string_view method_name(Method m) {
  switch (m) {
    case Method::kVoronoiFixed:
      return "voronoi";
    case Method::kOtFixed:
      return "ot";
    case Method::kLocationOnly:
      return "location";
    case Method::kCombined:
      return "combined";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "voronoi" || name == "voronoi-fixed") return Method::kVoronoiFixed;
  if (name == "ot" || name == "ot-fixed" || name == "association-only") return Method::kOtFixed;
  if (name == "location" || name == "location-only") return Method::kLocationOnly;
  if (name == "combined") return Method::kCombined;
  throw DomainError("unknown method '" + std::string(name) + "'");
}

Deployment evaluate_method(const Scenario& scenario, Method method,
                           const AlternateOptions& opts) {
  switch (method) {
    case Method::kVoronoiFixed:
    case Method::kOtFixed: {
      const Scenario s = validate_scenario(scenario);
      const DensityField f(s.density, s.region, s.grid);
      const auto b = s.bandwidths();
      const Association a = method == Method::kVoronoiFixed ? Association::kVoronoi
                                                            : Association::kOptimalTransport;
      Deployment d;
      d.uavs = s.uavs;
      d.partition = associate(s.env, s.uavs, f, s.rate_req, b, s.n_users, a, opts.partition);
      d.report = total_power(s.env, s.uavs, d.partition, f, s.rate_req, b, s.n_users);
      return d;
    }
    case Method::kLocationOnly: {
      AlternateOptions o = opts;
      o.association = Association::kVoronoi;
      o.initial_cells = InitialCells::kVoronoi;
      return alternate_optimize(scenario, o);
    }
    case Method::kCombined: {
      AlternateOptions o = opts;
      o.association = Association::kOptimalTransport;
      o.initial_cells = InitialCells::kSubareas;
      return alternate_optimize(scenario, o);
    }
  }
  throw DomainError("evaluate_method: unknown method");
}

SweepResult altitude_sweep(const Scenario& scenario, std::span<const double> h_values,
                           SweepMode mode, Association association) {
  check_altitudes(h_values);
  const Scenario s = validate_scenario(scenario);
  const DensityField f(s.density, s.region, s.grid);
  const std::size_t k = s.uavs.size();
  const std::size_t n = h_values.size();

  SweepResult out;
  out.mode = mode;
  out.association = association;
  out.axis.assign(h_values.begin(), h_values.end());
  std::vector<double> totals;

  if (mode == SweepMode::kJointEqual) {
    for (double h : h_values) {
      const std::vector<double> alt(k, h);
      FixedEvaluation e = evaluate_at(s, f, alt, association);
      totals.push_back(e.normalized_total);
      out.points.push_back({alt, std::move(e.report)});
    }
    out.argmin = argmin_of(totals);

    out.per_uav_argmin_along_joint.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<double> own(n);
      for (std::size_t j = 0; j < n; ++j) own[j] = out.points[j].report.per_uav_power[i];
      out.per_uav_argmin_along_joint[i] = out.axis[argmin_of(own)];
    }

    const double h_star = out.axis[out.argmin];
    out.individual_curves.assign(k, std::vector<double>(n));
    out.individual_argmin.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<double> normalized(n);
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> alt(k, h_star);
        alt[i] = h_values[j];
        const FixedEvaluation e = evaluate_at(s, f, alt, association);
        out.individual_curves[i][j] = e.report.total_power;
        normalized[j] = e.normalized_total;
      }
      out.individual_argmin[i] = out.axis[argmin_of(normalized)];
    }
    return out;
  }

  double combos = std::pow(static_cast<double>(n), static_cast<double>(k));
  if (combos > 1e6) throw DomainError("altitude_sweep: per-UAV grid too large");
  std::vector<std::size_t> digit(k, 0);
  const auto total = static_cast<std::size_t>(combos);
  for (std::size_t c = 0; c < total; ++c) {
    std::vector<double> alt(k);
    for (std::size_t i = 0; i < k; ++i) alt[i] = h_values[digit[i]];
    FixedEvaluation e = evaluate_at(s, f, alt, association);
    totals.push_back(e.normalized_total);
    out.points.push_back({std::move(alt), std::move(e.report)});
    // last UAV varies fastest
    for (std::size_t i = k; i-- > 0;) {
      if (++digit[i] < n) break;
      digit[i] = 0;
    }
  }
  out.argmin = argmin_of(totals);
  return out;
}

Scenario with_density(const Scenario& scenario, double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("density rho must be positive");
  Scenario s = scenario;
  s.density.kind = DensityKind::kTruncatedGaussian;
  s.density.sigma_x = 1.0 / rho;
  s.density.sigma_y = 1.0 / rho;
  return s;
}

Scenario with_altitude(const Scenario& scenario, double h) {
  Scenario s = scenario;
  for (auto& u : s.uavs) u.h = h;
  return s;
}

std::vector<DensitySweepRow> density_sweep(const Scenario& scenario,
                                           std::span<const double> rho_values,
                                           std::span<const Method> methods,
                                           const AlternateOptions& opts) {
  std::vector<DensitySweepRow> rows;
  rows.reserve(rho_values.size() * methods.size());
  for (double rho : rho_values) {
    const Scenario s = with_density(scenario, rho);
    for (Method m : methods) {
      rows.push_back({rho, m, evaluate_method(s, m, opts).report});
    }
  }
  return rows;
}

}  // namespace uavcov
