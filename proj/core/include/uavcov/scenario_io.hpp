#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "uavcov/model.hpp"

namespace uavcov {

/// Scenario documents are JSON objects:
///
///   {
///     "region":   {"x_lo": -500, "x_hi": 500, "y_lo": -250, "y_hi": 250},
///     "env":      {"c": 11.9, "d": 0.13, "eta": 100, "alpha": 2, "n0": 1e-13},
///     "uavs":     [{"x": -250, "y": 0, "h": 200, "bandwidth": 5e7}, ...],
///     "density":  {"kind": "truncated_gaussian",
///                  "params": {"mu_x": -100, "mu_y": 100, "sigma_x": 100, "sigma_y": 100}},
///     "n_users":  200,
///     "rate_req": 1e6,
///     "grid":     {"nx": 200, "ny": 100},
///     "subareas": [{"x_lo": -500, "x_hi": 0, "y_lo": -250, "y_hi": 250}, ...]
///   }
///
/// `env` members and `grid` default to the values in model.hpp when absent.
/// Gaussian `params` may give "rho" instead of the two sigmas. A uniform
/// density has kind "uniform" and no params. Unknown keys are rejected.
///
/// Overrides are "dotted.path=value" strings applied to the document before
/// it is decoded, e.g. "env.n0=2e-13", "uavs.1.h=350", "grid.nx=400". Two
/// shorthand keys exist: "density.rho" (sets both sigmas to 1/rho) and
/// "uavs.h" (sets every altitude). A path that does not already exist in the
/// document is rejected.
///
/// All entry points validate and throw InvalidScenario on any problem.
Scenario parse_scenario(std::string_view json_text, std::span<const std::string> overrides = {});

Scenario load_scenario(const std::filesystem::path& path,
                       std::span<const std::string> overrides = {});

/// Canonical JSON for a scenario; parse_scenario(scenario_to_json(s)) == s.
std::string scenario_to_json(const Scenario& s);

}  // namespace uavcov
