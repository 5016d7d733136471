#include "uavcov/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "uavcov/channel.hpp"
#include "uavcov/errors.hpp"

namespace uavcov {
namespace {

// Points with density below this carry no power; they follow the proposal.
constexpr double kNegligibleDensity = 1e-15;

double load_factor(double beta, double m, double b) { return std::exp2(beta * m / b) - 1.0; }

double load_slope(double beta, double m, double b) {
  return beta * std::numbers::ln2 / b * std::exp2(beta * m / b);
}

// Average path loss of every UAV at every lattice point, row per UAV.
// Kept in units of N0 so assignment decisions never depend on N0.
struct LossTable {
  std::size_t points;
  std::vector<double> values;
  double at(std::size_t i, std::size_t p) const { return values[i * points + p]; }
};

LossTable loss_table(const Environment& env, std::span<const UavState> uavs, const Lattice& lat) {
  LossTable t{lat.size(), std::vector<double>(uavs.size() * lat.size())};
  for (std::size_t i = 0; i < uavs.size(); ++i) {
    for (std::size_t p = 0; p < lat.size(); ++p) {
      t.values[i * lat.size() + p] =
          mean_path_loss(env, LinkGeometry::between(uavs[i], lat.x(p), lat.y(p)));
    }
  }
  return t;
}

struct Loads {
  std::vector<double> m;  // users
  std::vector<double> a;  // Int_Ci Lbar f, units of N0
};

class LoadModel {
 public:
  LoadModel(const LossTable& table, const DensityField& f, double beta,
            std::span<const double> b_list, double n_users)
      : table_(table), f_(f), beta_(beta), b_(b_list), n_(n_users) {}

  std::size_t uavs() const { return b_.size(); }

  Loads loads(std::span<const std::size_t> owner) const {
    Loads l{std::vector<double>(uavs(), 0.0), std::vector<double>(uavs(), 0.0)};
    for (std::size_t p = 0; p < owner.size(); ++p) {
      const std::size_t i = owner[p];
      l.m[i] += f_.mass(p);
      l.a[i] += table_.at(i, p) * f_.mass(p);
    }
    for (double& m : l.m) m *= n_;
    return l;
  }

  double objective(const Loads& l) const {
    double s = 0.0;
    for (std::size_t i = 0; i < uavs(); ++i) s += load_factor(beta_, l.m[i], b_[i]) * l.a[i];
    return s;
  }

  // Marginal-cost comparator with the density factor divided out.
  void propose(const Loads& l, std::vector<std::size_t>& out) const {
    const std::size_t k = uavs();
    std::vector<double> s(k), t(k);
    for (std::size_t i = 0; i < k; ++i) {
      s[i] = load_factor(beta_, l.m[i], b_[i]);
      t[i] = n_ * load_slope(beta_, l.m[i], b_[i]) * l.a[i];
    }
    out.resize(table_.points);
    for (std::size_t p = 0; p < table_.points; ++p) {
      std::size_t best = 0;
      double best_cost = s[0] * table_.at(0, p) + t[0];
      for (std::size_t i = 1; i < k; ++i) {
        const double c = s[i] * table_.at(i, p) + t[i];
        if (c < best_cost) {
          best_cost = c;
          best = i;
        }
      }
      out[p] = best;
    }
  }

  // Exact objective change from moving point p from cell i to cell j.
  double move_delta(const Loads& l, std::size_t p, std::size_t i, std::size_t j) const {
    const double m = n_ * f_.mass(p);
    const double ai = table_.at(i, p) * f_.mass(p);
    const double aj = table_.at(j, p) * f_.mass(p);
    return load_factor(beta_, l.m[i] - m, b_[i]) * (l.a[i] - ai) -
           load_factor(beta_, l.m[i], b_[i]) * l.a[i] +
           load_factor(beta_, l.m[j] + m, b_[j]) * (l.a[j] + aj) -
           load_factor(beta_, l.m[j], b_[j]) * l.a[j];
  }

  void apply_move(Loads& l, std::size_t p, std::size_t i, std::size_t j) const {
    const double m = n_ * f_.mass(p);
    l.m[i] -= m;
    l.m[j] += m;
    l.a[i] -= table_.at(i, p) * f_.mass(p);
    l.a[j] += table_.at(j, p) * f_.mass(p);
  }

  double t_term(const Loads& l, std::size_t i, double n0) const {
    return load_slope(beta_, l.m[i], b_[i]) * n0 * l.a[i];
  }

 private:
  const LossTable& table_;
  const DensityField& f_;
  double beta_;
  std::span<const double> b_;
  double n_;
};

std::size_t count_differences(std::span<const std::size_t> a, std::span<const std::size_t> b) {
  std::size_t n = 0;
  for (std::size_t p = 0; p < a.size(); ++p) n += a[p] != b[p] ? 1 : 0;
  return n;
}

}  // namespace

Cell CellPartition::cell(std::size_t i) const {
  Cell c;
  for (std::size_t p = 0; p < owner.size(); ++p) {
    if (owner[p] == i) c.points.push_back(p);
  }
  return c;
}

CellPartition partition_from_owner(std::vector<std::size_t> owner, std::size_t uav_count,
                                   const DensityField& f, double n_users) {
  if (owner.size() != f.lattice().size()) {
    throw DomainError("partition_from_owner: owner map does not match the lattice");
  }
  CellPartition part;
  part.grid = f.lattice().grid();
  part.masses.assign(uav_count, 0.0);
  part.t_terms.assign(uav_count, 0.0);
  for (std::size_t p = 0; p < owner.size(); ++p) {
    if (owner[p] >= uav_count) throw DomainError("partition_from_owner: owner out of range");
    part.masses[owner[p]] += f.mass(p);
  }
  for (double& m : part.masses) m *= n_users;
  part.owner = std::move(owner);
  return part;
}

CellPartition partition_from_regions(std::span<const Region> rects, const DensityField& f,
                                     double n_users) {
  if (rects.empty()) throw DomainError("partition_from_regions: no regions");
  const auto& lat = f.lattice();
  std::vector<std::size_t> owner(lat.size());
  for (std::size_t p = 0; p < lat.size(); ++p) {
    const double x = lat.x(p);
    const double y = lat.y(p);
    std::size_t best = 0;
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rects.size(); ++i) {
      const double gx = std::max({rects[i].x_lo - x, 0.0, x - rects[i].x_hi});
      const double gy = std::max({rects[i].y_lo - y, 0.0, y - rects[i].y_hi});
      const double gap = gx * gx + gy * gy;
      if (gap < best_gap) {
        best_gap = gap;
        best = i;
      }
      if (gap == 0.0) break;
    }
    owner[p] = best;
  }
  return partition_from_owner(std::move(owner), rects.size(), f, n_users);
}

CellPartition voronoi_partition(std::span<const UavState> uavs, const DensityField& f,
                                double n_users) {
  if (uavs.empty()) throw DomainError("voronoi_partition: no UAVs");
  const auto& lat = f.lattice();
  std::vector<std::size_t> owner(lat.size());
  for (std::size_t p = 0; p < lat.size(); ++p) {
    std::size_t best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < uavs.size(); ++i) {
      const double dx = lat.x(p) - uavs[i].x;
      const double dy = lat.y(p) - uavs[i].y;
      const double d2 = dx * dx + dy * dy + uavs[i].h * uavs[i].h;
      if (d2 < best_d2) {
        best_d2 = d2;
        best = i;
      }
    }
    owner[p] = best;
  }
  return partition_from_owner(std::move(owner), uavs.size(), f, n_users);
}

double cost_kernel(const Environment& env, const UavState& uav, double x, double y) {
  return env.n0 * mean_path_loss(env, LinkGeometry::between(uav, x, y));
}

double t_term(const Environment& env, const UavState& uav, const Cell& cell,
              const DensityField& f, double beta, double b, double n_users) {
  if (cell.empty()) return 0.0;
  const auto& lat = f.lattice();
  std::vector<double> terms;
  terms.reserve(cell.points.size());
  double mass = 0.0;
  for (std::size_t p : cell.points) {
    terms.push_back(cost_kernel(env, uav, lat.x(p), lat.y(p)) * f.mass(p));
    mass += f.mass(p);
  }
  return load_slope(beta, n_users * mass, b) * pairwise_sum(terms);
}

CellPartition ot_partition(const Environment& env, std::span<const UavState> uavs,
                           const DensityField& f, double beta, std::span<const double> b_list,
                           double n_users, const PartitionOptions& opts) {
  const std::size_t k = uavs.size();
  if (k < 2) throw DomainError("ot_partition: needs at least two UAVs");
  if (b_list.size() != k) throw DomainError("ot_partition: one bandwidth per UAV required");

  const auto& lat = f.lattice();
  const std::size_t n_points = lat.size();
  const LossTable table = loss_table(env, uavs, lat);
  const LoadModel model(table, f, beta, b_list, n_users);

  std::vector<std::size_t> owner;
  if (opts.warm_start) {
    owner = *opts.warm_start;
    if (owner.size() != n_points) throw DomainError("ot_partition: warm start size mismatch");
    for (std::size_t o : owner) {
      if (o >= k) throw DomainError("ot_partition: warm start owner out of range");
    }
  } else {
    owner = voronoi_partition(uavs, f, n_users).owner;
  }

  std::vector<bool> negligible(n_points);
  for (std::size_t p = 0; p < n_points; ++p) {
    negligible[p] = f.mass(p) / lat.cell_area() < kNegligibleDensity;
  }

  std::vector<std::size_t> proposal;
  std::vector<std::pair<double, std::size_t>> moves;
  int iterations = 0;
  for (; iterations < opts.max_iterations; ++iterations) {
    Loads loads = model.loads(owner);
    model.propose(loads, proposal);
    bool moved_free = false;
    for (std::size_t p = 0; p < n_points; ++p) {
      if (negligible[p] && owner[p] != proposal[p]) {
        owner[p] = proposal[p];
        moved_free = true;
      }
    }
    if (moved_free) {
      loads = model.loads(owner);
      model.propose(loads, proposal);
    }

    moves.clear();
    bool any_flip = false;
    for (std::size_t p = 0; p < n_points; ++p) {
      if (owner[p] == proposal[p] || negligible[p]) continue;
      any_flip = true;
      const double d = model.move_delta(loads, p, owner[p], proposal[p]);
      if (d < 0.0) moves.emplace_back(d, p);
    }
    if (!any_flip || moves.empty()) break;
    std::sort(moves.begin(), moves.end());

    const double current = model.objective(loads);
    bool accepted = false;
    for (std::size_t n = moves.size(); n >= 1; n /= 2) {
      Loads trial = loads;
      for (std::size_t r = 0; r < n; ++r) {
        const std::size_t p = moves[r].second;
        model.apply_move(trial, p, owner[p], proposal[p]);
      }
      if (model.objective(trial) < current) {
        for (std::size_t r = 0; r < n; ++r) {
          const std::size_t p = moves[r].second;
          owner[p] = proposal[p];
        }
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }

  const Loads final_loads = model.loads(owner);
  model.propose(final_loads, proposal);
  const std::size_t flips = count_differences(owner, proposal);

  CellPartition part = partition_from_owner(std::move(owner), k, f, n_users);
  for (std::size_t i = 0; i < k; ++i) part.t_terms[i] = model.t_term(final_loads, i, env.n0);
  part.iterations = iterations;
  part.converged = static_cast<double>(flips) <
                   opts.converged_fraction * static_cast<double>(n_points);
  return part;
}

}  // namespace uavcov
