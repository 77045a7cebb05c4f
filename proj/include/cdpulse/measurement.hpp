#pragma once

// Output decomposition, homodyne / synodyne traces and the integrated
// distinguishability Q_{j,j'} = Integral_0^T |c_j(t) - c_j'(t)| dt.

#include "cdpulse/dynamics.hpp"
#include "cdpulse/signal.hpp"

#include <span>
#include <string>
#include <vector>

namespace cdpulse {

struct QuadraturePoint {
  double i = 0.0;
  double q = 0.0;
};

inline QuadraturePoint to_iq(cplx z) { return {z.real(), z.imag()}; }

/// Z_j(t) = common(t) + offsets[j](t).
struct OutputDecomposition {
  std::vector<std::string> labels;
  ComplexSignal common;
  std::vector<ComplexSignal> offsets;

  std::size_t states() const { return offsets.size(); }
  ComplexSignal reconstruct(std::size_t j) const;
};

/// `reference` is the output of the same network with every dispersive
/// shift set to zero.
OutputDecomposition decompose_output(std::span<const ComplexSignal> outputs,
                                     std::vector<std::string> labels,
                                     const ComplexSignal& reference);

/// e_alpha . (I, Q) = cos(alpha) I + sin(alpha) Q.
std::vector<double> homodyne_trace(const ComplexSignal& z, double alpha);

/// Projection with a time-dependent angle.
std::vector<double> synodyne_trace(const ComplexSignal& z, std::span<const double> alpha);

/// Trapezoidal weights on the grid samples in [grid start, t_end].
std::vector<double> trapezoid_weights(const TimeGrid& grid, double t_end);

/// Integral over [grid start, t_end] of |a - b| (trapezoidal).
double distinguishability(std::span<const double> a, std::span<const double> b,
                          const TimeGrid& grid, double t_end);

/// Q_{i,j}(alpha) for homodyne detection of two offset trajectories.
double homodyne_distinguishability(const ComplexSignal& a, const ComplexSignal& b, double alpha,
                                   double t_end);

struct HomodyneResult {
  double alpha = 0.0;         ///< in [0, pi)
  double worst_pair_q = 0.0;  ///< max over alpha of min over pairs of Q
  std::size_t pair_i = 0, pair_j = 1;
};

/// 1024-point grid over [0, pi), golden-section refinement to 1e-6 rad,
/// ties resolved toward the smaller angle. Throws Error with < 2 states.
HomodyneResult optimize_homodyne_angle(const OutputDecomposition& decomp, double t_end);

enum class SynodyneObjective {
  Absolute,  ///< max_alpha min_pairs |(D_i - D_j) . e_alpha|
  Signed,    ///< max_alpha min_{i<j} (D_i - D_j) . e_alpha, alpha in [0, 2 pi)
};

struct SynodyneResult {
  std::vector<double> alpha;       ///< angle per grid sample (up to t_end)
  std::vector<double> separation;  ///< per-sample optimal worst-pair separation
  double pointwise_q = 0.0;        ///< min over pairs of Q under the alpha(t) schedule
  double constant_q = 0.0;         ///< homodyne optimum (constant-angle schedule)
  double worst_pair_q = 0.0;       ///< max(pointwise_q, constant_q)
  bool constant_schedule = false;  ///< true when the constant angle won
  double homodyne_alpha = 0.0;
};

SynodyneResult optimize_synodyne_angle(const OutputDecomposition& decomp, double t_end,
                                       SynodyneObjective objective = SynodyneObjective::Absolute);

enum class NormalizationMode {
  MaxIntracavity,  ///< max over states, modes and time of |C| equals the cap
  InputPower,      ///< Integral (|A|^2 + |B|^2) dt equals the cap
};

const char* normalization_name(NormalizationMode mode);

/// Scale factor to apply to the drive(s); exact by linearity.
/// Throws Error for a zero drive.
double normalization_scale(std::span<const ComplexSignal> drives,
                           std::span<const FieldTrajectory> trajectories, NormalizationMode mode,
                           double cap);

/// Scales drives and trajectories in place.
void apply_scale(double scale, std::span<ComplexSignal> drives,
                 std::span<FieldTrajectory> trajectories);

}  // namespace cdpulse
