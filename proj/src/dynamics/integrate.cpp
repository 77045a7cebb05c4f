#include "cdpulse/dynamics.hpp"
#include "cdpulse/error.hpp"
#include "cdpulse/synthesis.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace cdpulse {
namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

// exp(Mh), h phi1(Mh), h phi2(Mh) from the top block row of the exponential
// of [[Mh, I, 0], [0, 0, I], [0, 0, 0]].
struct PhiBlocks {
  MatrixXcd e0, e1, e2;
};

PhiBlocks phi_blocks(const MatrixXcd& m, double h) {
  const Eigen::Index n = m.rows();
  MatrixXcd w = MatrixXcd::Zero(3 * n, 3 * n);
  w.block(0, 0, n, n) = m * h;
  w.block(0, n, n, n).setIdentity();
  w.block(n, 2 * n, n, n).setIdentity();
  const MatrixXcd ew = w.exp();
  return {ew.block(0, 0, n, n), h * ew.block(0, n, n, n), h * ew.block(0, 2 * n, n, n)};
}

VectorXcd input_at(std::span<const ComplexSignal> inputs, Eigen::Index n_inputs, std::size_t i) {
  VectorXcd u = VectorXcd::Zero(n_inputs);
  for (Eigen::Index k = 0; k < n_inputs && static_cast<std::size_t>(k) < inputs.size(); ++k)
    u(k) = inputs[k][i];
  return u;
}

}  // namespace

FieldTrajectory integrate(const LinearSystem& system, std::span<const ComplexSignal> inputs,
                          Integrator method, const Eigen::VectorXcd* initial) {
  if (inputs.empty()) throw Error("integrate: at least one input signal is required");
  if (static_cast<Eigen::Index>(inputs.size()) > system.inputs())
    throw Error("integrate: more input signals than system inputs");
  for (std::size_t k = 1; k < inputs.size(); ++k) require_same_grid(inputs[0], inputs[k], "integrate");
  const TimeGrid& grid = inputs[0].grid;
  const Eigen::Index n = system.modes();
  const std::size_t steps = grid.size();

  FieldTrajectory traj{"", system.mode_labels, {}, ComplexSignal(grid)};
  traj.intracavity.assign(static_cast<std::size_t>(n), ComplexSignal(grid));

  VectorXcd x = initial ? *initial : VectorXcd::Zero(n);
  if (x.size() != n) throw Error("integrate: initial state has the wrong dimension");
  auto record = [&](std::size_t i) {
    for (Eigen::Index m = 0; m < n; ++m) traj.intracavity[m][i] = x(m);
    traj.output[i] = system.C * x;
  };
  record(0);
  if (steps < 2) return traj;
  const double h = grid.dt();

  if (method == Integrator::Exponential) {
    const PhiBlocks phi = phi_blocks(system.M, h);
    const MatrixXcd g1 = phi.e1 * system.B;
    const MatrixXcd g2 = phi.e2 * system.B;
    VectorXcd u0 = input_at(inputs, system.inputs(), 0);
    for (std::size_t i = 0; i + 1 < steps; ++i) {
      const VectorXcd u1 = input_at(inputs, system.inputs(), i + 1);
      x = phi.e0 * x + g1 * u0 + g2 * (u1 - u0);
      u0 = u1;
      record(i + 1);
    }
    return traj;
  }

  auto f = [&](const VectorXcd& state, const VectorXcd& u) -> VectorXcd {
    return system.M * state + system.B * u;
  };
  VectorXcd u0 = input_at(inputs, system.inputs(), 0);
  for (std::size_t i = 0; i + 1 < steps; ++i) {
    const VectorXcd u1 = input_at(inputs, system.inputs(), i + 1);
    const VectorXcd um = 0.5 * (u0 + u1);
    const VectorXcd k1 = f(x, u0);
    const VectorXcd k2 = f(x + 0.5 * h * k1, um);
    const VectorXcd k3 = f(x + 0.5 * h * k2, um);
    const VectorXcd k4 = f(x + h * k3, u1);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    u0 = u1;
    record(i + 1);
  }
  return traj;
}

FieldTrajectory integrate_single_cavity(const ComplexSignal& drive, const StateMode& mode,
                                        Integrator method, cplx initial) {
  VectorXcd x0 = VectorXcd::Constant(1, initial);
  FieldTrajectory t = integrate(single_cavity_system(mode), std::span(&drive, 1), method, &x0);
  t.state_label = mode.label;
  return t;
}

FieldTrajectory integrate_purcell(const ComplexSignal& drive, const Purcell& scenario,
                                  const NetworkState& state, Integrator method) {
  FieldTrajectory t = integrate(purcell_system(scenario, state), std::span(&drive, 1), method);
  t.state_label = state.label;
  return t;
}

FieldTrajectory integrate_cascade(const ComplexSignal& drive_a, const ComplexSignal& drive_b,
                                  const Cascade& scenario, const NetworkState& state,
                                  Integrator method) {
  const ComplexSignal inputs[2] = {drive_a, drive_b};
  FieldTrajectory t = integrate(cascade_system(scenario, state), inputs, method);
  t.state_label = state.label;
  return t;
}

FieldTrajectory integrate_state(const NetworkScenario& scenario, const NetworkState& state,
                                const ComplexSignal& drive_a, const ComplexSignal* drive_b,
                                Integrator method) {
  if (const auto* cc = std::get_if<Cascade>(&scenario.topology)) {
    if (drive_b) return integrate_cascade(drive_a, *drive_b, *cc, state, method);
  }
  FieldTrajectory t = integrate(state_system(scenario, state), std::span(&drive_a, 1), method);
  t.state_label = state.label;
  return t;
}

std::vector<cplx> superadiabatic_coefficients(std::span<const cplx> energies, std::size_t l) {
  if (l >= energies.size()) throw Error("superadiabatic_coefficients: mode index out of range");
  std::vector<cplx> others;
  for (std::size_t s = 0; s < energies.size(); ++s)
    if (s != l) others.push_back(1.0 / energies[s]);
  std::vector<cplx> c = elementary_symmetric(others);
  for (auto& v : c) v /= energies[l];
  return c;
}

ComplexSignal superadiabatic_prediction(const TrialPulse& pulse, std::span<const cplx> energies,
                                        std::size_t l, double kappa, const TimeGrid& grid) {
  const std::vector<cplx> c = superadiabatic_coefficients(energies, l);
  DerivativeExpansion expansion{c};
  ComplexSignal out = synthesize_time_domain(pulse, expansion, grid).time_signal;
  out *= std::sqrt(kappa);
  return out;
}

}  // namespace cdpulse
