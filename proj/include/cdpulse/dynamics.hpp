#pragma once

// Time-domain integration of the driven linear mode equations.
//
// Conventions (locked by the constant-drive calibration, output/input ->
// H(0) = kappa/E):
//   single cavity   dC/dt = E C - sqrt(kappa) A,             Z = sqrt(kappa) C
//   Purcell         dC1/dt = E1 C1 - i G C2 - A
//                   dC2/dt = E2 C2 - i G* C1,                 Z = sqrt(kappa) C2
//   cascade         dC1/dt = E1 C1 - sqrt(k1) A
//                   dC2/dt = E2 C2 - sqrt(k2) (sqrt(k1) C1 + B), Z = sqrt(k2) C2

#include "cdpulse/network.hpp"
#include "cdpulse/signal.hpp"

#include <Eigen/Dense>

#include <span>
#include <string>
#include <vector>

namespace cdpulse {

/// dx/dt = M x + B u(t), output y = C x.
struct LinearSystem {
  Eigen::MatrixXcd M;
  Eigen::MatrixXcd B;
  Eigen::RowVectorXcd C;
  std::vector<std::string> mode_labels;

  Eigen::Index modes() const { return M.rows(); }
  Eigen::Index inputs() const { return B.cols(); }
};

LinearSystem single_cavity_system(const StateMode& mode);
LinearSystem purcell_system(const Purcell& scenario, const NetworkState& state);
/// Inputs ordered (A, B).
LinearSystem cascade_system(const Cascade& scenario, const NetworkState& state);
LinearSystem state_system(const NetworkScenario& scenario, const NetworkState& state);

struct FieldTrajectory {
  std::string state_label;
  std::vector<std::string> mode_labels;
  std::vector<ComplexSignal> intracavity;
  ComplexSignal output;

  const TimeGrid& grid() const { return output.grid; }
};

enum class Integrator {
  Exponential,  ///< exact for piecewise-linear inputs
  RK4,          ///< classical Runge-Kutta with linearly interpolated inputs
};

/// Integrates `system` on the inputs' common grid. Missing trailing inputs
/// are treated as zero. Throws Error on grid mismatch.
FieldTrajectory integrate(const LinearSystem& system, std::span<const ComplexSignal> inputs,
                          Integrator method = Integrator::Exponential,
                          const Eigen::VectorXcd* initial = nullptr);

FieldTrajectory integrate_single_cavity(const ComplexSignal& drive, const StateMode& mode,
                                        Integrator method = Integrator::Exponential,
                                        cplx initial = 0.0);

FieldTrajectory integrate_purcell(const ComplexSignal& drive, const Purcell& scenario,
                                  const NetworkState& state,
                                  Integrator method = Integrator::Exponential);

FieldTrajectory integrate_cascade(const ComplexSignal& drive_a, const ComplexSignal& drive_b,
                                  const Cascade& scenario, const NetworkState& state,
                                  Integrator method = Integrator::Exponential);

/// Dispatches on the scenario's topology. `drive_b` is only used by the
/// cascade and may be null (zero back-port drive).
FieldTrajectory integrate_state(const NetworkScenario& scenario, const NetworkState& state,
                                const ComplexSignal& drive_a, const ComplexSignal* drive_b,
                                Integrator method = Integrator::Exponential);

/// Default step: min(0.01 / max(|E|, kappa, |G|), duration / 4000).
double default_time_step(const NetworkScenario& scenario, double duration);

/// Slowest decay rate (-Re of a pole energy) over all states.
double slowest_decay_rate(const NetworkScenario& scenario);

// ---------------------------------------------------------------------------
// Superadiabatic prediction
// ---------------------------------------------------------------------------

/// c_{l,j} = (1/E_l) e_j({1/E_s : s != l}), j = 0 .. N-1.
std::vector<cplx> superadiabatic_coefficients(std::span<const cplx> energies, std::size_t l);

/// Predicted intracavity field of mode l under the drive synthesized from
/// all `energies`: sqrt(kappa) sum_j c_{l,j} (-d/dt)^j Omega.
ComplexSignal superadiabatic_prediction(const TrialPulse& pulse, std::span<const cplx> energies,
                                        std::size_t l, double kappa, const TimeGrid& grid);

// ---------------------------------------------------------------------------
// Reports and baseline drives
// ---------------------------------------------------------------------------

struct ResidualReport {
  double peak_amplitude = 0.0;   ///< max over modes of max_t |C|
  double final_amplitude = 0.0;  ///< max over modes of |C(t_final)|
  double residual_ratio = 0.0;   ///< max over modes of |C_m(t_final)| / peak_m
  double ring_down_time = 0.0;   ///< after the drive peak, until all |C_m| < 1% of peak_m
  bool ring_down_resolved = true;  ///< false when the grid ends before the fields settle
};

ResidualReport residual_report(const FieldTrajectory& traj, double t_final, double drive_peak_time);

/// Time of max |drive|.
double peak_time(const ComplexSignal& drive);

/// Constant `amplitude` on samples inside [window.t_start, window.t_end];
/// the edges rise over a single sample.
ComplexSignal square_pulse(cplx amplitude, const PulseWindow& window, const TimeGrid& grid);

struct PulseSegment {
  double duration = 0.0;
  cplx value{0.0};
};

/// Piecewise-constant drive made of consecutive segments starting at
/// t_start, e.g. a published four-step digital sequence.
ComplexSignal piecewise_constant(std::span<const PulseSegment> segments, double t_start,
                                 const TimeGrid& grid);

}  // namespace cdpulse
