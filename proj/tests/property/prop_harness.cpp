#include "doctest.h"
#include "test_support.hpp"

#include <fstream>
#include <numbers>
#include <sstream>

using namespace cdpulse;
using namespace cdpulse::testing;

namespace {

Json random_scenario_json(std::mt19937_64& g, int topology) {
  switch (topology) {
    case 0: {
      Json chis = Json::array();
      for (int k = uniform_int(g, 1, 3); k > 0; --k) chis.push_back(uniform(g, 0.2, 3.0));
      return {{"topology", "single_cavity"}, {"kappa", uniform(g, 0.5, 4.0)},
              {"delta", uniform(g, -1.0, 1.0)}, {"chis", chis}};
    }
    case 1:
      return {{"topology", "purcell"},
              {"G", Json::array({uniform(g, 2.0, 10.0), uniform(g, -2.0, 2.0)})},
              {"delta_c", uniform(g, -1.0, 1.0)},
              {"delta_f", uniform(g, -5.0, 5.0)},
              {"kappa", uniform(g, 1.0, 6.0)},
              {"chis", Json::array({uniform(g, 0.2, 2.0)})}};
    default: {
      auto cavity = [&] {
        return Json{{"kappa", uniform(g, 0.5, 4.0)},
                    {"delta", uniform(g, -1.0, 1.0)},
                    {"chi", Json::array({uniform(g, 0.2, 2.0), -uniform(g, 0.2, 2.0)})}};
      };
      return {{"topology", "cascade"}, {"cavity1", cavity()}, {"cavity2", cavity()}};
    }
  }
}

Json random_config(std::mt19937_64& g, int topology) {
  Json doc;
  doc["name"] = "prop";
  const char* rates[] = {"rad_per_us", "MHz_linear", "MHz"};
  doc["units"] = {{"rates", rates[uniform_int(g, 0, 2)]}};
  doc["scenario"] = random_scenario_json(g, topology);
  doc["pulse"] = {{"family", "sine_power"}, {"p", uniform_int(g, 6, 10)}, {"duration", 1.0}};
  const char* synth[] = {"time_domain", "frequency_domain", "cascade_compensated"};
  doc["synthesis"] = topology == 2 ? synth[2] : synth[uniform_int(g, 0, 1)];
  doc["normalization"] = {{"mode", uniform_int(g, 0, 1) ? "cavity" : "power"},
                          {"cap", uniform(g, 0.5, 2.0)}};
  const char* modes[] = {"homodyne", "synodyne", "both"};
  doc["detection"] = {{"mode", modes[uniform_int(g, 0, 2)]}};
  doc["simulation"] = {{"tail", uniform(g, 0.2, 1.0)}, {"dt", 0.004}};
  return doc;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("property/harness") {

TEST_CASE("configs survive a canonical round trip") {
  auto g = make_rng(601);
  for (int trial = 0; trial < kPropertyCases; ++trial) {
    const Json doc = random_config(g, trial % 3);
    const RunConfig c = parse_config(doc);
    const Json canonical = to_json(c);
    CAPTURE(doc.dump());
    CHECK(to_json(parse_config(canonical)) == canonical);
    CHECK(config_hash(parse_config(canonical)) == config_hash(c));
  }
}

TEST_CASE("linear MHz rates are scaled by two pi") {
  auto g = make_rng(602);
  for (int trial = 0; trial < kPropertyCases; ++trial) {
    Json doc = random_config(g, 0);
    doc["units"] = {{"rates", "rad_per_us"}};
    const RunConfig angular = parse_config(doc);
    doc["units"] = {{"rates", "MHz_linear"}};
    const RunConfig linear = parse_config(doc);
    const auto& a = std::get<SingleCavity>(angular.scenario.topology);
    const auto& l = std::get<SingleCavity>(linear.scenario.topology);
    CHECK(l.kappa == doctest::Approx(2.0 * std::numbers::pi * a.kappa).epsilon(1e-14));
    CHECK(l.delta == doctest::Approx(2.0 * std::numbers::pi * a.delta).epsilon(1e-14));
    for (std::size_t k = 0; k < a.chis.size(); ++k)
      CHECK(l.chis[k] == doctest::Approx(2.0 * std::numbers::pi * a.chis[k]).epsilon(1e-14));
  }
}

TEST_CASE("runs are deterministic") {
  auto g = make_rng(603);
  for (int trial = 0; trial < kPropertyCases; ++trial) {
    Json doc = random_config(g, trial % 3);
    doc["units"] = {{"rates", "rad_per_us"}};
    const RunConfig c = parse_config(doc);
    const RunResult r1 = run_scenario(c);
    const RunResult r2 = run_scenario(c);
    CHECK(run_summary(r1).dump() == run_summary(r2).dump());
    if (trial % 8 == 0) {
      const auto d1 = scratch_dir("det_a");
      const auto d2 = scratch_dir("det_b");
      write_run_artifacts(r1, d1);
      write_run_artifacts(r2, d2);
      for (const auto& entry : std::filesystem::directory_iterator(d1)) {
        if (!entry.is_regular_file()) continue;
        CAPTURE(entry.path().filename().string());
        CHECK(slurp(entry.path()) == slurp(d2 / entry.path().filename()));
      }
    }
  }
}

TEST_CASE("sweep points do not depend on scheduling") {
  auto g = make_rng(604);
  for (int trial = 0; trial < kPropertyCases; ++trial) {
    Json doc = random_config(g, 0);
    doc["units"] = {{"rates", "rad_per_us"}};
    doc["detection"] = {{"mode", "both"}};
    doc["sweep"] = Json::array(
        {Json{{"path", "scenario.kappa"}, {"values", {uniform(g, 0.5, 2.0), uniform(g, 2.0, 4.0)}}},
         Json{{"path", "scenario.delta"}, {"values", {uniform(g, -1.0, 0.0), uniform(g, 0.0, 1.0)}}}});
    const SweepResult r = run_sweep(doc, static_cast<unsigned>(uniform_int(g, 1, 4)));
    REQUIRE(r.points.size() == 4);
    for (std::size_t i = 0; i < r.points.size(); ++i) {
      const SweepPoint p = run_sweep_point(doc, r.axes, i);
      CHECK(p.ok == r.points[i].ok);
      CHECK(p.coords == r.points[i].coords);
      CHECK(p.q_hom == r.points[i].q_hom);
      CHECK(p.q_syn == r.points[i].q_syn);
      CHECK(p.residual_ratio == r.points[i].residual_ratio);
      CHECK(p.alpha_hom == r.points[i].alpha_hom);
    }
  }
}

}
