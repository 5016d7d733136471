#include "uavcov/scenario_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <nlohmann/json.hpp>
#include "uavcov/errors.hpp"

namespace uavcov {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw InvalidScenario(what); }

void only_keys(const json& obj, std::initializer_list<std::string_view> allowed,
               const std::string& where) {
  if (!obj.is_object()) fail(where + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) fail(where + ": unknown key '" + key + "'");
  }
}

double number(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where + ": missing '" + key + "'");
  if (!it->is_number()) fail(where + "." + key + ": expected a number");
  return it->get<double>();
}

double number_or(const json& obj, const char* key, double fallback, const std::string& where) {
  return obj.contains(key) ? number(obj, key, where) : fallback;
}

std::size_t count(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where + ": missing '" + key + "'");
  if (!it->is_number_integer() || it->get<long long>() < 0) {
    fail(where + "." + key + ": expected a non-negative integer");
  }
  return it->get<std::size_t>();
}

Region decode_region(const json& j, const std::string& where) {
  only_keys(j, {"x_lo", "x_hi", "y_lo", "y_hi"}, where);
  return {number(j, "x_lo", where), number(j, "x_hi", where), number(j, "y_lo", where),
          number(j, "y_hi", where)};
}

json encode_region(const Region& r) {
  return {{"x_lo", r.x_lo}, {"x_hi", r.x_hi}, {"y_lo", r.y_lo}, {"y_hi", r.y_hi}};
}

DensitySpec decode_density(const json& j, const Region& region) {
  only_keys(j, {"kind", "params"}, "density");
  const auto kind = j.find("kind");
  if (kind == j.end() || !kind->is_string()) fail("density: missing string 'kind'");
  DensitySpec d;
  if (*kind == "uniform") {
    if (j.contains("params") && !j["params"].empty()) fail("density: uniform takes no params");
    return d;
  }
  if (*kind != "truncated_gaussian") fail("density.kind: unknown kind '" + kind->get<std::string>() + "'");
  if (!j.contains("params")) fail("density: missing 'params'");
  const json& p = j["params"];
  only_keys(p, {"mu_x", "mu_y", "sigma_x", "sigma_y", "rho"}, "density.params");
  d.kind = DensityKind::kTruncatedGaussian;
  d.mu_x = number_or(p, "mu_x", 0.5 * (region.x_lo + region.x_hi), "density.params");
  d.mu_y = number_or(p, "mu_y", 0.5 * (region.y_lo + region.y_hi), "density.params");
  if (p.contains("rho")) {
    if (p.contains("sigma_x") || p.contains("sigma_y")) {
      fail("density.params: give either rho or sigma_x/sigma_y");
    }
    const double rho = number(p, "rho", "density.params");
    if (!(rho > 0.0)) fail("density.params.rho > 0");
    d.sigma_x = d.sigma_y = 1.0 / rho;
  } else {
    d.sigma_x = number(p, "sigma_x", "density.params");
    d.sigma_y = number(p, "sigma_y", "density.params");
  }
  return d;
}

json encode_density(const DensitySpec& d) {
  if (d.kind == DensityKind::kUniform) return {{"kind", "uniform"}};
  return {{"kind", "truncated_gaussian"},
          {"params",
           {{"mu_x", d.mu_x}, {"mu_y", d.mu_y}, {"sigma_x", d.sigma_x}, {"sigma_y", d.sigma_y}}}};
}

Scenario decode(const json& doc) {
  only_keys(doc, {"region", "env", "uavs", "density", "n_users", "rate_req", "grid", "subareas"},
            "scenario");
  Scenario s;
  if (!doc.contains("region")) fail("scenario: missing 'region'");
  s.region = decode_region(doc["region"], "region");

  if (doc.contains("env")) {
    const json& e = doc["env"];
    only_keys(e, {"c", "d", "eta", "alpha", "n0"}, "env");
    const Environment def;
    s.env = {number_or(e, "c", def.c_env, "env"), number_or(e, "d", def.d_env, "env"),
             number_or(e, "eta", def.eta, "env"), number_or(e, "alpha", def.alpha, "env"),
             number_or(e, "n0", def.n0, "env")};
  }

  if (!doc.contains("uavs") || !doc["uavs"].is_array()) fail("scenario: missing array 'uavs'");
  for (std::size_t i = 0; i < doc["uavs"].size(); ++i) {
    const json& u = doc["uavs"][i];
    const std::string where = "uavs[" + std::to_string(i) + "]";
    only_keys(u, {"x", "y", "h", "bandwidth"}, where);
    s.uavs.push_back({i, number(u, "x", where), number(u, "y", where), number(u, "h", where),
                      number(u, "bandwidth", where)});
  }

  if (!doc.contains("density")) fail("scenario: missing 'density'");
  s.density = decode_density(doc["density"], s.region);
  s.n_users = number(doc, "n_users", "scenario");
  s.rate_req = number(doc, "rate_req", "scenario");

  if (doc.contains("grid")) {
    only_keys(doc["grid"], {"nx", "ny"}, "grid");
    s.grid = {count(doc["grid"], "nx", "grid"), count(doc["grid"], "ny", "grid")};
  }

  if (!doc.contains("subareas") || !doc["subareas"].is_array()) {
    fail("scenario: missing array 'subareas'");
  }
  for (std::size_t i = 0; i < doc["subareas"].size(); ++i) {
    s.subareas.push_back(decode_region(doc["subareas"][i], "subareas[" + std::to_string(i) + "]"));
  }
  return s;
}

json encode(const Scenario& s) {
  json doc;
  doc["region"] = encode_region(s.region);
  doc["env"] = {{"c", s.env.c_env}, {"d", s.env.d_env}, {"eta", s.env.eta},
                {"alpha", s.env.alpha}, {"n0", s.env.n0}};
  doc["uavs"] = json::array();
  for (const auto& u : s.uavs) {
    doc["uavs"].push_back({{"x", u.x}, {"y", u.y}, {"h", u.h}, {"bandwidth", u.bandwidth}});
  }
  doc["density"] = encode_density(s.density);
  doc["n_users"] = s.n_users;
  doc["rate_req"] = s.rate_req;
  doc["grid"] = {{"nx", s.grid.nx}, {"ny", s.grid.ny}};
  doc["subareas"] = json::array();
  for (const auto& r : s.subareas) doc["subareas"].push_back(encode_region(r));
  return doc;
}

json parse_value(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error&) {
    return text;
  }
}

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    fail("override '" + assignment + "': expected KEY=VALUE");
  }
  const std::string key = assignment.substr(0, eq);
  const json value = parse_value(assignment.substr(eq + 1));

  if (key == "density.rho") {
    if (!value.is_number() || !(value.get<double>() > 0.0)) fail("override density.rho: expected a positive number");
    const double sigma = 1.0 / value.get<double>();
    json& d = doc["density"];
    if (d["kind"] == "uniform") {
      const json& r = doc["region"];
      d = {{"kind", "truncated_gaussian"},
           {"params",
            {{"mu_x", 0.5 * (r["x_lo"].get<double>() + r["x_hi"].get<double>())},
             {"mu_y", 0.5 * (r["y_lo"].get<double>() + r["y_hi"].get<double>())}}}};
    }
    d["params"]["sigma_x"] = sigma;
    d["params"]["sigma_y"] = sigma;
    return;
  }
  if (key == "uavs.h") {
    for (auto& u : doc["uavs"]) u["h"] = value;
    return;
  }

  json* node = &doc;
  std::stringstream path(key);
  std::string token;
  while (std::getline(path, token, '.')) {
    if (node->is_object()) {
      const auto it = node->find(token);
      if (it == node->end()) fail("override: unknown key '" + key + "'");
      node = &*it;
    } else if (node->is_array()) {
      std::size_t idx = 0;
      try {
        std::size_t used = 0;
        idx = std::stoul(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        fail("override: '" + token + "' in '" + key + "' is not an index");
      }
      if (idx >= node->size()) fail("override: index out of range in '" + key + "'");
      node = &(*node)[idx];
    } else {
      fail("override: unknown key '" + key + "'");
    }
  }
  if (node->is_object() || node->is_array()) fail("override: '" + key + "' is not a scalar");
  *node = value;
}

}  // namespace

Scenario parse_scenario(std::string_view json_text, std::span<const std::string> overrides) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(std::string("scenario: malformed JSON: ") + e.what());
  }
  try {
    Scenario s = decode(doc);
    if (!overrides.empty()) {
      json canonical = encode(s);
      for (const auto& o : overrides) apply_override(canonical, o);
      s = decode(canonical);
    }
    return validate_scenario(s);
  } catch (const json::exception& e) {
    fail(std::string("scenario: ") + e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& path, std::span<const std::string> overrides) {
  std::ifstream in(path);
  if (!in) fail("cannot read scenario file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), overrides);
}

std::string scenario_to_json(const Scenario& s) { return encode(s).dump(2) + "\n"; }

}  // namespace uavcov
