#include "cdpulse/error.hpp"
#include "cdpulse/measurement.hpp"

#include <cmath>

namespace cdpulse {

const char* normalization_name(NormalizationMode mode) {
  return mode == NormalizationMode::MaxIntracavity ? "cavity" : "power";
}

double normalization_scale(std::span<const ComplexSignal> drives,
                           std::span<const FieldTrajectory> trajectories, NormalizationMode mode,
                           double cap) {
  if (!(cap > 0.0)) throw Error("normalization_scale: cap must be positive");
  if (mode == NormalizationMode::InputPower) {
    double power = 0.0;
    for (const auto& d : drives) power += d.energy();
    if (power == 0.0) throw Error("normalization_scale: zero drive");
    return std::sqrt(cap / power);
  }
  double peak = 0.0;
  for (const auto& t : trajectories)
    for (const auto& c : t.intracavity) peak = std::max(peak, c.max_abs());
  if (peak == 0.0) throw Error("normalization_scale: zero drive (no intracavity field)");
  return cap / peak;
}

void apply_scale(double scale, std::span<ComplexSignal> drives,
                 std::span<FieldTrajectory> trajectories) {
  for (auto& d : drives) d *= scale;
  for (auto& t : trajectories) {
    for (auto& c : t.intracavity) c *= scale;
    t.output *= scale;
  }
}

}  // namespace cdpulse
