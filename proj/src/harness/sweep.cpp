#include "cdpulse/error.hpp"
#include "cdpulse/harness.hpp"

#include "csv_writer.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <thread>

namespace cdpulse {

std::vector<std::size_t> SweepResult::shape() const {
  std::vector<std::size_t> s;
  for (const auto& a : axes) s.push_back(a.values.size());
  return s;
}

SweepPoint run_sweep_point(const Json& doc, const std::vector<SweepAxis>& axes, std::size_t index) {
  SweepPoint p;
  p.coords.resize(axes.size());
  std::size_t rest = index;
  for (std::size_t k = axes.size(); k-- > 0;) {
    p.coords[k] = axes[k].values[rest % axes[k].values.size()];
    rest /= axes[k].values.size();
  }
  p.q_syn = std::numeric_limits<double>::quiet_NaN();
  try {
    Json point = doc;
    for (std::size_t k = 0; k < axes.size(); ++k) point = with_override(point, axes[k].path, p.coords[k]);
    RunConfig c = parse_config(point);
    c.baseline = false;
    const RunResult r = run_scenario(c);
    if (!r.homodyne) throw Error("sweep point has fewer than two states");
    p.q_hom = r.homodyne->worst_pair_q;
    p.alpha_hom = r.homodyne->alpha;
    if (r.synodyne) p.q_syn = r.synodyne->worst_pair_q;
    p.residual_ratio = r.worst.residual_ratio;
    p.ok = true;
  } catch (const std::exception& e) {
    p.ok = false;
    p.error = e.what();
    p.q_hom = std::numeric_limits<double>::quiet_NaN();
    p.residual_ratio = std::numeric_limits<double>::quiet_NaN();
    p.alpha_hom = std::numeric_limits<double>::quiet_NaN();
  }
  return p;
}

SweepResult run_sweep(const Json& doc, unsigned workers) {
  const auto start = std::chrono::steady_clock::now();
  const RunConfig config = parse_config(doc);
  if (config.sweep.empty()) throw ConfigError("sweep", "no sweep axes defined");

  Json base = to_json(config);
  base["sweep"] = Json::array();
  base["baseline"] = false;

  SweepResult result;
  result.axes = config.sweep;
  result.config_hash = config_hash(config);
  std::size_t total = 1;
  for (const auto& a : result.axes) total *= a.values.size();
  result.points.resize(total);

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < total; i = next++)
          result.points[i] = run_sweep_point(base, result.axes, i);
      });
    }
  }

  for (const auto& p : result.points)
    if (p.ok && std::isfinite(p.q_syn)) result.q_syn_max = std::max(result.q_syn_max, p.q_syn);
  result.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

void write_sweep_artifacts(const SweepResult& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const double norm = r.q_syn_max > 0 ? r.q_syn_max : std::numeric_limits<double>::quiet_NaN();
  std::vector<std::string> header;
  for (const auto& a : r.axes) header.push_back(a.path);
  header.insert(header.end(), {"Q_hom", "Q_syn", "Q_hom_norm", "Q_syn_norm", "residual_ratio",
                               "alpha_hom", "status", "error"});
  {
    detail::CsvWriter w(dir / "surface.csv", header);
    for (const auto& p : r.points) {
      for (const double c : p.coords) w.cell(c);
      std::string err = p.error;
      std::replace(err.begin(), err.end(), ',', ';');
      std::replace(err.begin(), err.end(), '\n', ' ');
      w.cell(p.q_hom).cell(p.q_syn).cell(p.q_hom / norm).cell(p.q_syn / norm);
      w.cell(p.residual_ratio).cell(p.alpha_hom).cell(p.ok ? "ok" : "failed").cell(err);
      w.end_row();
    }
  }

  Json s;
  s["version"] = kVersion;
  s["config_hash"] = r.config_hash;
  s["wall_time_s"] = r.wall_time_s;
  Json axes = Json::array();
  for (const auto& a : r.axes) axes.push_back({{"path", a.path}, {"values", a.values}});
  s["axes"] = axes;
  s["shape"] = r.shape();
  s["q_syn_max"] = r.q_syn_max;
  std::size_t failed = 0, best = r.points.size();
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    if (!r.points[i].ok) {
      ++failed;
      continue;
    }
    if (best == r.points.size() || r.points[i].q_hom > r.points[best].q_hom) best = i;
  }
  s["failed_points"] = failed;
  if (best < r.points.size()) s["q_hom_argmax"] = r.points[best].coords;
  std::ofstream out(dir / "sweep_summary.json");
  if (!out) throw Error("cannot write " + (dir / "sweep_summary.json").string());
  out << s.dump(2) << '\n';
}

}  // namespace cdpulse
