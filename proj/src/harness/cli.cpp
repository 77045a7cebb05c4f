#include "cdpulse/error.hpp"
#include "cdpulse/harness.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>

#ifndef CDPULSE_RECIPE_DIR
#define CDPULSE_RECIPE_DIR "recipes"
#endif

namespace cdpulse {
namespace {

struct GlobalOptions {
  std::string out;
  unsigned workers = 0;
  std::optional<double> dt;
  std::string normalization;
  std::string detection;
  std::optional<long long> seed;
};

Json apply_flags(Json doc, const GlobalOptions& g) {
  if (g.dt) doc["simulation"]["dt"] = *g.dt;
  if (!g.normalization.empty()) {
    if (!doc.contains("normalization") || !doc["normalization"].is_object())
      doc["normalization"] = Json::object();
    doc["normalization"]["mode"] = g.normalization;
  }
  if (!g.detection.empty()) doc["detection"]["mode"] = g.detection;
  if (!g.out.empty()) doc["output_dir"] = g.out;
  return doc;
}

void print_run(const RunResult& r, const std::filesystem::path& dir) {
  std::cout << r.config.name << ": " << r.states.size() << " states, synthesis "
            << synthesis_name(r.config.synthesis) << ", worst residual "
            << format_number(r.worst.residual_ratio) << ", ring-down "
            << format_number(r.worst.ring_down_time) << " us\n";
  if (r.homodyne)
    std::cout << "  homodyne Q " << format_number(r.homodyne->worst_pair_q) << " at alpha "
              << format_number(r.homodyne->alpha) << "\n";
  if (r.synodyne) std::cout << "  synodyne Q " << format_number(r.synodyne->worst_pair_q) << "\n";
  if (r.baseline)
    std::cout << "  baseline residual " << format_number(r.baseline->worst.residual_ratio)
              << ", ring-down " << format_number(r.baseline->worst.ring_down_time) << " us\n";
  std::cout << "  artifacts in " << dir.string() << "\n";
}

int execute_run(const Json& doc) {
  const RunConfig config = parse_config(doc);
  const std::filesystem::path dir = config.output_dir;
  const RunResult r = run_scenario(config);
  write_run_artifacts(r, dir);
  print_run(r, dir);
  return 0;
}

int execute_sweep(const Json& doc, unsigned workers) {
  const RunConfig config = parse_config(doc);
  if (config.sweep.empty()) throw ConfigError("sweep", "no sweep axes in this config");
  const SweepResult r = run_sweep(doc, workers);
  write_sweep_artifacts(r, config.output_dir);
  std::size_t failed = 0;
  for (const auto& p : r.points) failed += p.ok ? 0 : 1;
  std::cout << config.name << ": " << r.points.size() << " sweep points (" << failed
            << " failed), surface in " << config.output_dir << "\n";
  return 0;
}

}  // namespace

std::filesystem::path recipe_directory() {
  if (const char* env = std::getenv("CDPULSE_RECIPE_DIR")) return env;
  return CDPULSE_RECIPE_DIR;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Counter-diabatic readout pulse synthesis and simulation"};
  app.require_subcommand(1);
  GlobalOptions g;
  auto add_globals = [&](CLI::App* sub) {
    sub->add_option("--out", g.out, "Output directory");
    sub->add_option("--workers", g.workers, "Sweep worker threads (0 = all cores)");
    sub->add_option("--dt", g.dt, "Integration step in us")->check(CLI::PositiveNumber);
    sub->add_option("--normalization", g.normalization, "cavity or power")
        ->check(CLI::IsMember({"cavity", "power"}));
    sub->add_option("--detection", g.detection, "homodyne, synodyne or both")
        ->check(CLI::IsMember({"homodyne", "synodyne", "both"}));
    sub->add_option("--seed", g.seed, "Accepted for forward compatibility; runs are deterministic");
  };

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run one scenario");
  run->add_option("config", config_path, "Config file")->required();
  add_globals(run);
  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
  sweep->add_option("config", config_path, "Config file")->required();
  add_globals(sweep);
  auto* validate = app.add_subcommand("validate", "Check a config file");
  validate->add_option("config", config_path, "Config file")->required();
  auto* recipes = app.add_subcommand("recipes", "Figure-reproduction recipes");
  recipes->require_subcommand(1);
  recipes->add_subcommand("list", "List recipes");
  std::string recipe;
  auto* recipe_run = recipes->add_subcommand("run", "Run a recipe");
  recipe_run->add_option("name", recipe, "Recipe name")
      ->required()
      ->check(CLI::IsMember({"fig2", "fig3", "fig4", "fig5", "fig6a", "fig6b", "fig7a", "fig7b"}));
  add_globals(recipe_run);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*validate) {
      const RunConfig c = load_config(config_path);
      std::cout << "ok: " << c.name << " (" << c.scenario.topology_name() << ", "
                << enumerate_states(c.scenario).size() << " states, synthesis "
                << synthesis_name(c.synthesis) << ")\n";
      return 0;
    }
    if (*run || *sweep) {
      Json doc = apply_flags(load_json(config_path), g);
      if (*sweep) return execute_sweep(doc, g.workers);
      doc.erase("sweep");
      return execute_run(doc);
    }
    if (recipes->got_subcommand("list")) {
      for (const char* name : {"fig2", "fig3", "fig4", "fig5", "fig6a", "fig6b", "fig7a", "fig7b"}) {
        const auto file = recipe_directory() / (std::string(name) + ".json");
        std::string title;
        try {
          const Json doc = load_json(file);
          title = doc.value("description", "");
        } catch (const Error&) {
          title = "(missing)";
        }
        std::cout << name << "  " << title << "\n";
      }
      return 0;
    }
    Json doc = apply_flags(load_json(recipe_directory() / (recipe + ".json")), g);
    if (!doc.value("sweep", Json::array()).empty()) return execute_sweep(doc, g.workers);
    return execute_run(doc);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace cdpulse
