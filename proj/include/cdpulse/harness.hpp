#pragma once

// Configuration, scenario orchestration, parameter sweeps and artifacts.

#include "cdpulse/dynamics.hpp"
#include "cdpulse/measurement.hpp"
#include "cdpulse/network.hpp"
#include "cdpulse/synthesis.hpp"

#include "json.hpp"

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cdpulse {

using Json = nlohmann::ordered_json;

enum class SynthesisKind { None, TimeDomain, FrequencyDomain, CascadeCompensated, LegacyCompensated };
enum class DetectionKind { Homodyne, Synodyne, Both };
enum class DriveKind { Pulse, Square, Piecewise };

const char* synthesis_name(SynthesisKind k);
const char* detection_name(DetectionKind k);

struct DriveSpec {
  DriveKind kind = DriveKind::Pulse;
  cplx amplitude{1.0};                ///< square pulse level
  std::vector<PulseSegment> segments;  ///< piecewise drive
};

struct NormalizationSpec {
  bool enabled = true;
  NormalizationMode mode = NormalizationMode::MaxIntracavity;
  double cap = 1.0;
};

struct DetectionSpec {
  DetectionKind kind = DetectionKind::Both;
  SynodyneObjective objective = SynodyneObjective::Absolute;
};

struct SimulationSpec {
  std::optional<double> dt;    ///< default: default_time_step()
  std::optional<double> tail;  ///< default: long enough to observe ring-down
};

struct SweepAxis {
  std::string path;  ///< e.g. "scenario.kappa" or "scenario.cavity2.chi[1]"
  std::vector<double> values;
};

/// Rates are stored in rad/us regardless of the units used in the file.
struct RunConfig {
  std::string name = "run";
  NetworkScenario scenario;
  TrialPulse pulse;
  DriveSpec drive;
  SynthesisKind synthesis = SynthesisKind::TimeDomain;
  bool baseline = false;
  NormalizationSpec normalization;
  DetectionSpec detection;
  SimulationSpec simulation;
  std::string output_dir = "out";
  std::vector<SweepAxis> sweep;
};

/// Throws ConfigError naming the offending field.
RunConfig parse_config(const Json& doc);
RunConfig load_config(const std::filesystem::path& file);
Json load_json(const std::filesystem::path& file);

/// Canonical form (rates in rad_per_us); parse_config(to_json(c)) == c.
Json to_json(const RunConfig& config);

/// Copy of `doc` with the numeric field at `path` replaced by `value`
/// (a {"value", "units"} object keeps its units). Throws ConfigError when
/// the path does not resolve to a number.
Json with_override(const Json& doc, const std::string& path, double value);

/// 64-bit FNV-1a of the canonical JSON, as 16 hex digits.
std::string config_hash(const RunConfig& config);

inline constexpr const char* kVersion = "0.1.0";

// ---------------------------------------------------------------------------
// Single runs
// ---------------------------------------------------------------------------

struct DriveSet {
  ComplexSignal a{TimeGrid(0.0, 1.0, 2)};
  std::optional<ComplexSignal> b;
  DriveProvenance provenance = DriveProvenance::TrialPulse;
  double gamma_mismatch = 0.0;
};

struct RunResult {
  RunConfig config;
  TimeGrid grid{0.0, 1.0, 2};
  double t_final = 1.0;  ///< end of the pulse window
  DriveSet drives;
  DriveSet reference_drives;  ///< drive used for the chi-free reference run
  std::vector<NetworkState> states;
  std::vector<FieldTrajectory> trajectories;
  std::vector<ResidualReport> reports;
  ResidualReport worst;  ///< max residual ratio / ring-down over states
  double scale = 1.0;
  double drive_boundary_ratio = 0.0;
  std::optional<OutputDecomposition> decomposition;
  std::optional<HomodyneResult> homodyne;
  std::optional<SynodyneResult> synodyne;
  std::unique_ptr<RunResult> baseline;
};

/// Grid covering the pulse window plus the tail, with the window end on a
/// sample.
TimeGrid simulation_grid(const RunConfig& config);

/// Synthesis -> integration of all states -> normalization -> detection.
RunResult run_scenario(const RunConfig& config);

/// summary.json, drive.csv, traces.csv, trajectory_<state>.csv (and the
/// same under baseline/ when present).
void write_run_artifacts(const RunResult& result, const std::filesystem::path& dir);
Json run_summary(const RunResult& result);

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

struct SweepPoint {
  std::vector<double> coords;
  bool ok = false;
  std::string error;
  double q_hom = 0.0;
  double q_syn = 0.0;
  double residual_ratio = 0.0;
  double alpha_hom = 0.0;
};

struct SweepResult {
  std::vector<SweepAxis> axes;
  std::vector<SweepPoint> points;  ///< row-major, last axis fastest
  double q_syn_max = 0.0;
  std::string config_hash;
  double wall_time_s = 0.0;

  std::vector<std::size_t> shape() const;
};

/// Evaluates one grid point (index into the row-major grid).
SweepPoint run_sweep_point(const Json& doc, const std::vector<SweepAxis>& axes, std::size_t index);

/// Parallel over points with at most `workers` threads (0 = hardware).
SweepResult run_sweep(const Json& doc, unsigned workers = 0);

/// surface.csv and sweep_summary.json.
void write_sweep_artifacts(const SweepResult& result, const std::filesystem::path& dir);

// ---------------------------------------------------------------------------
// CSV helpers and CLI
// ---------------------------------------------------------------------------

/// Shortest round-trip decimal form ("nan"/"inf" for non-finite values).
std::string format_number(double v);

int run_cli(int argc, char** argv);

/// Directory holding the shipped recipe configs.
std::filesystem::path recipe_directory();

}  // namespace cdpulse
