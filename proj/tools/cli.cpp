#include "cli.hpp"

#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <stdexcept>

#include <CLI/CLI.hpp>
#include "uavcov/errors.hpp"
#include "uavcov/optimizer.hpp"
#include "uavcov/report_io.hpp"
#include "uavcov/scenario_io.hpp"

namespace uavcov::cli {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string scenario;
  std::string out;
  std::vector<std::string> set;
  std::string grid;
  bool seedless = false;

  // solve
  std::string partition_csv;
  bool echo_scenario = false;
  std::string placement = "newton";

  // sweeps / compare / partition-dump
  std::string h_range = "100:1200:23";
  std::string mode = "joint-equal";
  std::string association = "ot";
  std::string curves_csv;
  std::string rho_range = "0.005:0.1:20";
  std::string methods;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError(what + ": '" + s + "' is not a number");
  }
  if (used != s.size()) throw UsageError(what + ": '" + s + "' is not a number");
  return v;
}

Scenario load(const Options& o) {
  std::vector<std::string> overrides = o.set;
  if (!o.grid.empty()) {
    const auto x = o.grid.find('x');
    if (x == std::string::npos) throw UsageError("--grid: expected NXxNY, got '" + o.grid + "'");
    overrides.push_back("grid.nx=" + o.grid.substr(0, x));
    overrides.push_back("grid.ny=" + o.grid.substr(x + 1));
  }
  return load_scenario(o.scenario, overrides);
}

Association parse_association(const std::string& s) {
  if (s == "ot") return Association::kOptimalTransport;
  if (s == "voronoi") return Association::kVoronoi;
  throw UsageError("--association: expected 'ot' or 'voronoi', got '" + s + "'");
}

PlacementMethod parse_placement(const std::string& s) {
  if (s == "newton") return PlacementMethod::kNewtonRaphson;
  if (s == "brute") return PlacementMethod::kBruteForce;
  if (s == "centroid") return PlacementMethod::kCentroid;
  throw UsageError("--placement: expected newton, brute or centroid, got '" + s + "'");
}

std::vector<Method> parse_methods(const std::string& list, std::vector<Method> fallback) {
  if (list.empty()) return fallback;
  std::vector<Method> methods;
  for (const auto& name : split(list, ',')) methods.push_back(parse_method(name));
  return methods;
}

void emit(const std::string& path, std::ostream& out,
          const std::function<void(std::ostream&)>& writer) {
  if (path.empty()) {
    writer(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot open '" + path + "' for writing");
  writer(file);
  if (!file) throw UsageError("failed writing '" + path + "'");
}

int cmd_solve(const Options& o, std::ostream& out) {
  const Scenario s = load(o);
  if (o.echo_scenario) {
    emit(o.out, out, [&](std::ostream& os) { os << scenario_to_json(s); });
    return kOk;
  }
  AlternateOptions opts;
  opts.placement_method = parse_placement(o.placement);
  const Deployment d = alternate_optimize(s, opts);
  emit(o.out, out, [&](std::ostream& os) { os << deployment_to_json(d); });
  if (!o.partition_csv.empty()) {
    const DensityField f(s.density, s.region, s.grid);
    emit(o.partition_csv, out, [&](std::ostream& os) { write_partition_csv(os, d.partition, f); });
  }
  return d.report.converged ? kOk : kNotConverged;
}

int cmd_sweep_altitude(const Options& o, std::ostream& out) {
  const Scenario s = load(o);
  SweepMode mode;
  if (o.mode == "joint-equal") {
    mode = SweepMode::kJointEqual;
  } else if (o.mode == "per-uav-grid") {
    mode = SweepMode::kPerUavGrid;
  } else {
    throw UsageError("--mode: expected joint-equal or per-uav-grid, got '" + o.mode + "'");
  }
  const std::vector<double> hs = parse_range(o.h_range);
  const SweepResult r = altitude_sweep(s, hs, mode, parse_association(o.association));
  emit(o.out, out, [&](std::ostream& os) { write_altitude_sweep_csv(os, r); });
  if (!o.curves_csv.empty()) {
    if (mode != SweepMode::kJointEqual) throw UsageError("--curves needs --mode joint-equal");
    emit(o.curves_csv, out, [&](std::ostream& os) { write_individual_curves_csv(os, r); });
  }
  for (const auto& p : r.points) {
    if (!p.report.converged) return kNotConverged;
  }
  return kOk;
}

int cmd_sweep_density(const Options& o, std::ostream& out) {
  const Scenario s = load(o);
  const std::vector<double> rhos = parse_range(o.rho_range);
  const auto methods =
      parse_methods(o.methods, {Method::kVoronoiFixed, Method::kOtFixed});
  const auto rows = density_sweep(s, rhos, methods);
  emit(o.out, out, [&](std::ostream& os) { write_density_sweep_csv(os, rows); });
  for (const auto& r : rows) {
    if (!r.report.converged) return kNotConverged;
  }
  return kOk;
}

int cmd_compare(const Options& o, std::ostream& out) {
  const Scenario s = load(o);
  const auto methods = parse_methods(o.methods, {Method::kVoronoiFixed, Method::kOtFixed,
                                                 Method::kLocationOnly, Method::kCombined});
  std::vector<MethodRow> rows;
  for (Method m : methods) rows.push_back({m, evaluate_method(s, m)});
  emit(o.out, out, [&](std::ostream& os) { write_method_table_csv(os, rows); });
  for (const auto& r : rows) {
    if (!r.deployment.report.converged) return kNotConverged;
  }
  return kOk;
}

int cmd_partition_dump(const Options& o, std::ostream& out) {
  const Scenario s = load(o);
  const DensityField f(s.density, s.region, s.grid);
  const CellPartition part = associate(s.env, s.uavs, f, s.rate_req, s.bandwidths(), s.n_users,
                                       parse_association(o.association));
  emit(o.out, out, [&](std::ostream& os) { write_partition_csv(os, part, f); });
  return part.converged ? kOk : kNotConverged;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--scenario", o.scenario, "Scenario JSON file")->required();
  sub->add_option("--out", o.out, "Output file (default: stdout)");
  sub->add_option("--set", o.set, "Override KEY=VALUE (repeatable)")->allow_extra_args(false);
  sub->add_option("--grid", o.grid, "Lattice size NXxNY");
  sub->add_flag("--seedless", o.seedless, "Accepted for compatibility; all runs are deterministic")
      ->disable_flag_override();
}

}  // namespace

std::vector<double> parse_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw UsageError("range '" + text + "': expected lo:hi:count");
  const double lo = parse_double(parts[0], "range lo");
  const double hi = parse_double(parts[1], "range hi");
  std::size_t used = 0;
  long long count = 0;
  try {
    count = std::stoll(parts[2], &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != parts[2].size() || count < 1) {
    throw UsageError("range '" + text + "': count must be a positive integer");
  }
  if (count == 1) {
    if (lo != hi) throw UsageError("range '" + text + "': count 1 needs lo == hi");
    return {lo};
  }
  std::vector<double> v(static_cast<std::size_t>(count));
  for (long long k = 0; k < count; ++k) {
    v[static_cast<std::size_t>(k)] =
        (lo * static_cast<double>(count - 1 - k) + hi * static_cast<double>(k)) /
        static_cast<double>(count - 1);
  }
  return v;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Power-minimizing deployment of UAV base stations"};
  app.name("uavcov");
  app.require_subcommand(1);
  Options o;

  auto* solve = app.add_subcommand("solve", "Alternate placement and association to convergence");
  add_common(solve, o);
  solve->add_option("--partition", o.partition_csv, "Also write the owner map CSV here");
  solve->add_flag("--echo-scenario", o.echo_scenario, "Print the validated scenario and exit");
  solve->add_option("--placement", o.placement, "newton | brute | centroid");

  auto* sweep_alt = app.add_subcommand("sweep-altitude", "Total power versus UAV altitude");
  sweep_alt->set_help_flag("--help", "Print this help message and exit");
  add_common(sweep_alt, o);
  sweep_alt->add_option("--h", o.h_range, "Altitude range lo:hi:count (m)");
  sweep_alt->add_option("--mode", o.mode, "joint-equal | per-uav-grid");
  sweep_alt->add_option("--association", o.association, "ot | voronoi");
  sweep_alt->add_option("--curves", o.curves_csv, "Per-UAV individual altitude curves CSV");

  auto* sweep_rho = app.add_subcommand("sweep-density", "Total power versus hotspot density");
  add_common(sweep_rho, o);
  sweep_rho->add_option("--rho", o.rho_range, "Density range lo:hi:count (1/m)");
  sweep_rho->add_option("--methods", o.methods, "Comma list: voronoi,ot,location,combined");

  auto* compare = app.add_subcommand("compare", "Four-method power table for the scenario");
  add_common(compare, o);
  compare->add_option("--methods", o.methods, "Comma list: voronoi,ot,location,combined");

  auto* dump = app.add_subcommand("partition-dump", "Owner-map CSV for the scenario's UAVs");
  add_common(dump, o);
  dump->add_option("--association", o.association, "ot | voronoi");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "uavcov: error: " << e.what() << '\n';
    return kInvalidInput;
  }

  try {
    if (solve->parsed()) return cmd_solve(o, out);
    if (sweep_alt->parsed()) return cmd_sweep_altitude(o, out);
    if (sweep_rho->parsed()) return cmd_sweep_density(o, out);
    if (compare->parsed()) return cmd_compare(o, out);
    if (dump->parsed()) return cmd_partition_dump(o, out);
  } catch (const InvalidScenario& e) {
    err << "uavcov: invalid scenario: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const NoConvergence& e) {
    err << "uavcov: no convergence: " << e.what() << '\n';
    return kNotConverged;
  } catch (const std::exception& e) {
    err << "uavcov: error: " << e.what() << '\n';
    return kInvalidInput;
  }
  return kInvalidInput;
}

}  // namespace uavcov::cli
