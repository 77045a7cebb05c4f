#pragma once

#include "cdpulse/dynamics.hpp"
#include "cdpulse/error.hpp"
#include "cdpulse/harness.hpp"
#include "cdpulse/measurement.hpp"
#include "cdpulse/network.hpp"
#include "cdpulse/signal.hpp"
#include "cdpulse/synthesis.hpp"

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

namespace cdpulse::testing {

/// Randomized invariants run at least this many cases each.
inline constexpr int kPropertyCases = 128;

inline std::mt19937_64 make_rng(std::uint64_t stream) {
  return std::mt19937_64(0x9e3779b97f4a7c15ULL ^ (stream * 0x100000001b3ULL));
}

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline int uniform_int(std::mt19937_64& g, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(g);
}

/// Stable pole energy with kappa in [0.5, 4] and frequency in [-5, 5].
inline cplx random_energy(std::mt19937_64& g) {
  return {-uniform(g, 0.25, 2.0), uniform(g, -5.0, 5.0)};
}

inline TrialPulse sine_pulse(int p, double t0 = 0.0, double t1 = 1.0, double amplitude = 1.0) {
  TrialPulse pulse;
  pulse.family = SinePower{p};
  pulse.window = {t0, t1};
  pulse.amplitude = amplitude;
  return pulse;
}

inline TrialPulse gaussian_pulse(double sigma, double center, double t0 = 0.0, double t1 = 1.0) {
  TrialPulse pulse;
  pulse.family = TruncatedGaussian{sigma, center};
  pulse.window = {t0, t1};
  return pulse;
}

inline StateMode mode_from_energy(cplx energy, std::string label = "m") {
  return {std::move(label), 0.0, -2.0 * energy.real(), energy};
}

inline RunConfig recipe(const std::string& name) {
  return load_config(recipe_directory() / (name + ".json"));
}

inline Json recipe_json(const std::string& name) {
  return load_json(recipe_directory() / (name + ".json"));
}

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("cdpulse_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace cdpulse::testing
