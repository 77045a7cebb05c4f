#include "cdpulse/dynamics.hpp"
#include "cdpulse/error.hpp"

#include <cmath>
#include <limits>

namespace cdpulse {

LinearSystem single_cavity_system(const StateMode& mode) {
  const double sk = std::sqrt(mode.kappa);
  LinearSystem sys;
  sys.M = Eigen::MatrixXcd::Constant(1, 1, mode.energy);
  sys.B = Eigen::MatrixXcd::Constant(1, 1, -sk);
  sys.C = Eigen::RowVectorXcd::Constant(1, sk);
  sys.mode_labels = {mode.label};
  return sys;
}

LinearSystem purcell_system(const Purcell& scenario, const NetworkState& state) {
  const StateMode& c1 = state.modes.at(0);
  const StateMode& c2 = state.modes.at(1);
  LinearSystem sys;
  sys.M.resize(2, 2);
  sys.M << c1.energy, -kI * scenario.G, -kI * std::conj(scenario.G), c2.energy;
  sys.B = Eigen::MatrixXcd::Zero(2, 1);
  sys.B(0, 0) = -1.0;
  sys.C = Eigen::RowVectorXcd::Zero(2);
  sys.C(1) = std::sqrt(scenario.kappa);
  sys.mode_labels = {c1.label, c2.label};
  return sys;
}

LinearSystem cascade_system(const Cascade& scenario, const NetworkState& state) {
  const StateMode& c1 = state.modes.at(0);
  const StateMode& c2 = state.modes.at(1);
  const double s1 = std::sqrt(scenario.cavity1.kappa);
  const double s2 = std::sqrt(scenario.cavity2.kappa);
  LinearSystem sys;
  sys.M.resize(2, 2);
  sys.M << c1.energy, 0.0, -s2 * s1, c2.energy;
  sys.B = Eigen::MatrixXcd::Zero(2, 2);
  sys.B(0, 0) = -s1;
  sys.B(1, 1) = -s2;
  sys.C = Eigen::RowVectorXcd::Zero(2);
  sys.C(1) = s2;
  sys.mode_labels = {c1.label, c2.label};
  return sys;
}

LinearSystem state_system(const NetworkScenario& scenario, const NetworkState& state) {
  if (const auto* pc = std::get_if<Purcell>(&scenario.topology)) return purcell_system(*pc, state);
  if (const auto* cc = std::get_if<Cascade>(&scenario.topology)) return cascade_system(*cc, state);
  return single_cavity_system(state.modes.at(0));
}

double default_time_step(const NetworkScenario& scenario, double duration) {
  double rate = 0.0;
  for (const auto& state : enumerate_states(scenario))
    for (const auto& m : state.modes) rate = std::max({rate, std::abs(m.energy), m.kappa});
  if (const auto* pc = std::get_if<Purcell>(&scenario.topology))
    rate = std::max({rate, std::abs(pc->G), pc->kappa});
  double dt = duration / 4000.0;
  if (rate > 0.0) dt = std::min(dt, 0.01 / rate);
  return dt;
}

double slowest_decay_rate(const NetworkScenario& scenario) {
  double slowest = std::numeric_limits<double>::infinity();
  for (const auto& state : enumerate_states(scenario)) {
    const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(state_system(scenario, state).M, false);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      slowest = std::min(slowest, -es.eigenvalues()(i).real());
  }
  return slowest;
}

}  // namespace cdpulse
