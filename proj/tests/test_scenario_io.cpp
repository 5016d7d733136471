#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "uavcov/errors.hpp"
#include "uavcov/scenario_io.hpp"

namespace uavcov {
namespace {

std::string paper_text() {
  std::ifstream in(UAVCOV_PAPER_JSON);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(ScenarioIo, BundledFixtureIsReferenceSetup) {
  const Scenario s = load_scenario(UAVCOV_PAPER_JSON);
  EXPECT_EQ(s, reference_scenario());
}

TEST(ScenarioIo, CanonicalRoundTrip) {
  const Scenario s = parse_scenario(paper_text());
  const std::string canon = scenario_to_json(s);
  EXPECT_EQ(parse_scenario(canon), s);
  EXPECT_EQ(scenario_to_json(parse_scenario(canon)), canon);

  Scenario u = s;
  u.density = DensitySpec::uniform();
  EXPECT_EQ(parse_scenario(scenario_to_json(u)), u);
}

TEST(ScenarioIo, Overrides) {
  const std::vector<std::string> o{"env.n0=2e-13", "uavs.1.h=350", "grid.nx=40",
                                   "density.rho=0.02"};
  const Scenario s = parse_scenario(paper_text(), o);
  EXPECT_EQ(s.env.n0, 2e-13);
  EXPECT_EQ(s.uavs[1].h, 350.0);
  EXPECT_EQ(s.uavs[0].h, 200.0);
  EXPECT_EQ(s.grid.nx, 40u);
  EXPECT_EQ(s.density.sigma_x, 50.0);
  const std::vector<std::string> all{"uavs.h=420"};
  for (const auto& u : parse_scenario(paper_text(), all).uavs) EXPECT_EQ(u.h, 420.0);
}

TEST(ScenarioIo, RejectsBadOverrides) {
  for (std::string bad : {"foo.bar=1", "env.n0", "uavs.5.h=100", "uavs=3", "env.n0=abc",
                          "grid.nx=1"}) {
    const std::vector<std::string> o{bad};
    EXPECT_THROW(parse_scenario(paper_text(), o), InvalidScenario) << bad;
  }
}

TEST(ScenarioIo, RejectsBadDocuments) {
  EXPECT_THROW(parse_scenario("{"), InvalidScenario);
  EXPECT_THROW(parse_scenario("[]"), InvalidScenario);
  std::string extra = paper_text();
  extra.insert(extra.find('{') + 1, "\"colour\": 1,");
  EXPECT_THROW(parse_scenario(extra), InvalidScenario);
  EXPECT_THROW(load_scenario("/nonexistent/scenario.json"), InvalidScenario);
}

TEST(ScenarioIo, DefaultsForOptionalSections) {
  const std::string doc = R"({
    "region": {"x_lo": 0, "x_hi": 100, "y_lo": 0, "y_hi": 50},
    "uavs": [{"x": 50, "y": 25, "h": 150, "bandwidth": 1e7}],
    "density": {"kind": "uniform"},
    "n_users": 10, "rate_req": 1e5,
    "subareas": [{"x_lo": 0, "x_hi": 100, "y_lo": 0, "y_hi": 50}]
  })";
  const Scenario s = parse_scenario(doc);
  EXPECT_EQ(s.env, Environment{});
  EXPECT_EQ(s.grid, GridSpec{});
  EXPECT_EQ(s.uavs[0].id, 0u);
}

}  // namespace
}  // namespace uavcov
