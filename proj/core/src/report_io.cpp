#include "uavcov/report_io.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

#include <nlohmann/json.hpp>

namespace uavcov {
namespace {

void per_uav_header(std::ostream& out, const char* prefix, std::size_t k) {
  for (std::size_t i = 0; i < k; ++i) out << ',' << prefix << i;
}

void per_uav_values(std::ostream& out, std::span<const double> v) {
  for (double x : v) out << ',' << format_number(x);
}

const char* association_name(Association a) {
  return a == Association::kVoronoi ? "voronoi" : "ot";
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_partition_csv(std::ostream& out, const CellPartition& partition,
                         const DensityField& f) {
  const auto& lat = f.lattice();
  out << "x,y,owner,density\n";
  for (std::size_t p = 0; p < partition.owner.size(); ++p) {
    out << format_number(lat.x(p)) << ',' << format_number(lat.y(p)) << ','
        << partition.owner[p] << ',' << format_number(f.mass(p) / lat.cell_area()) << '\n';
  }
}

std::string deployment_to_json(const Deployment& d) {
  using nlohmann::ordered_json;
  ordered_json j;
  const PowerReport& r = d.report;
  j["total_power"] = r.total_power;
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  j["uavs"] = ordered_json::array();
  for (std::size_t i = 0; i < d.uavs.size(); ++i) {
    const auto& u = d.uavs[i];
    j["uavs"].push_back({{"id", u.id},
                         {"x", u.x},
                         {"y", u.y},
                         {"h", u.h},
                         {"bandwidth", u.bandwidth},
                         {"power", i < r.per_uav_power.size() ? r.per_uav_power[i] : 0.0},
                         {"mass", i < r.masses.size() ? r.masses[i] : 0.0}});
  }
  j["per_uav_power"] = r.per_uav_power;
  j["masses"] = r.masses;
  j["trajectory"] = ordered_json::array();
  for (const auto& t : r.trajectory) {
    j["trajectory"].push_back({{"iteration", t.iteration}, {"total_power", t.total_power}});
  }
  j["partition"] = {{"iterations", d.partition.iterations},
                    {"converged", d.partition.converged},
                    {"t_terms", d.partition.t_terms}};
  return j.dump(2) + "\n";
}

void write_altitude_sweep_csv(std::ostream& out, const SweepResult& sweep) {
  const std::size_t k = sweep.points.empty() ? 0 : sweep.points.front().altitudes.size();
  for (std::size_t i = 0; i < k; ++i) out << (i ? "," : "") << "h_" << i;
  out << ",association,total_w";
  per_uav_header(out, "p_", k);
  per_uav_header(out, "m_", k);
  out << ",iterations,converged,is_argmin\n";
  for (std::size_t n = 0; n < sweep.points.size(); ++n) {
    const auto& pt = sweep.points[n];
    for (std::size_t i = 0; i < pt.altitudes.size(); ++i) {
      out << (i ? "," : "") << format_number(pt.altitudes[i]);
    }
    out << ',' << association_name(sweep.association) << ','
        << format_number(pt.report.total_power);
    per_uav_values(out, pt.report.per_uav_power);
    per_uav_values(out, pt.report.masses);
    out << ',' << pt.report.iterations << ',' << (pt.report.converged ? 1 : 0) << ','
        << (n == sweep.argmin ? 1 : 0) << '\n';
  }
}

void write_individual_curves_csv(std::ostream& out, const SweepResult& sweep) {
  out << "h,uav,total_w,is_argmin\n";
  for (std::size_t i = 0; i < sweep.individual_curves.size(); ++i) {
    for (std::size_t n = 0; n < sweep.axis.size(); ++n) {
      out << format_number(sweep.axis[n]) << ',' << i << ','
          << format_number(sweep.individual_curves[i][n]) << ','
          << (sweep.axis[n] == sweep.individual_argmin[i] ? 1 : 0) << '\n';
    }
  }
}

void write_density_sweep_csv(std::ostream& out, std::span<const DensitySweepRow> rows) {
  const std::size_t k = rows.empty() ? 0 : rows.front().report.per_uav_power.size();
  out << "rho,method,total_w";
  per_uav_header(out, "p_", k);
  per_uav_header(out, "m_", k);
  out << ",iterations,converged\n";
  for (const auto& r : rows) {
    out << format_number(r.rho) << ',' << method_name(r.method) << ','
        << format_number(r.report.total_power);
    per_uav_values(out, r.report.per_uav_power);
    per_uav_values(out, r.report.masses);
    out << ',' << r.report.iterations << ',' << (r.report.converged ? 1 : 0) << '\n';
  }
}

void write_method_table_csv(std::ostream& out, std::span<const MethodRow> rows) {
  const std::size_t k = rows.empty() ? 0 : rows.front().deployment.uavs.size();
  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : rows) best = std::min(best, r.deployment.report.total_power);
  out << "method,total_w,ratio_to_best";
  per_uav_header(out, "p_", k);
  per_uav_header(out, "m_", k);
  per_uav_header(out, "x_", k);
  per_uav_header(out, "y_", k);
  out << ",iterations,converged\n";
  for (const auto& r : rows) {
    const auto& rep = r.deployment.report;
    out << method_name(r.method) << ',' << format_number(rep.total_power) << ','
        << format_number(best > 0.0 ? rep.total_power / best : 1.0);
    per_uav_values(out, rep.per_uav_power);
    per_uav_values(out, rep.masses);
    for (const auto& u : r.deployment.uavs) out << ',' << format_number(u.x);
    for (const auto& u : r.deployment.uavs) out << ',' << format_number(u.y);
    out << ',' << rep.iterations << ',' << (rep.converged ? 1 : 0) << '\n';
  }
}

}  // namespace uavcov
