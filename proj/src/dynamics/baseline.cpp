#include "cdpulse/dynamics.hpp"
#include "cdpulse/error.hpp"

namespace cdpulse {

ComplexSignal square_pulse(cplx amplitude, const PulseWindow& window, const TimeGrid& grid) {
  ComplexSignal out(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid.at(i);
    if (t >= window.t_start && t <= window.t_end) out[i] = amplitude;
  }
  return out;
}

ComplexSignal piecewise_constant(std::span<const PulseSegment> segments, double t_start,
                                 const TimeGrid& grid) {
  for (const auto& s : segments)
    if (!(s.duration >= 0.0)) throw Error("piecewise_constant: negative segment duration");
  ComplexSignal out(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double t0 = t_start;
    const double t = grid.at(i);
    for (const auto& s : segments) {
      if (t >= t0 && t < t0 + s.duration) {
        out[i] = s.value;
        break;
      }
      t0 += s.duration;
    }
  }
  return out;
}

}  // namespace cdpulse
