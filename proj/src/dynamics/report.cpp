#include "cdpulse/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace cdpulse {

double peak_time(const ComplexSignal& drive) {
  std::size_t best = 0;
  double top = -1.0;
  for (std::size_t i = 0; i < drive.size(); ++i) {
    const double a = std::abs(drive[i]);
    if (a > top) {
      top = a;
      best = i;
    }
  }
  return drive.grid.at(best);
}

ResidualReport residual_report(const FieldTrajectory& traj, double t_final, double drive_peak_time) {
  ResidualReport r;
  if (traj.intracavity.empty()) return r;
  const TimeGrid& grid = traj.intracavity.front().grid;
  const std::size_t i_final = grid.index_at_or_before(t_final);
  const std::size_t i_peak = grid.index_at_or_before(drive_peak_time);

  std::size_t last_above = i_peak;
  bool any_above = false;
  for (const auto& c : traj.intracavity) {
    const double peak = c.max_abs();
    if (peak == 0.0) continue;
    r.peak_amplitude = std::max(r.peak_amplitude, peak);
    const double fin = std::abs(c[i_final]);
    r.final_amplitude = std::max(r.final_amplitude, fin);
    r.residual_ratio = std::max(r.residual_ratio, fin / peak);
    for (std::size_t i = c.size(); i-- > i_peak;) {
      if (std::abs(c[i]) >= 0.01 * peak) {
        if (!any_above || i > last_above) last_above = i;
        any_above = true;
        break;
      }
    }
  }
  if (!any_above) return r;
  if (last_above + 1 >= grid.size()) {
    r.ring_down_resolved = false;
    r.ring_down_time = grid.t_end() - grid.at(i_peak);
  } else {
    r.ring_down_time = grid.at(last_above + 1) - grid.at(i_peak);
  }
  r.ring_down_time = std::max(0.0, r.ring_down_time);
  return r;
}

}  // namespace cdpulse
