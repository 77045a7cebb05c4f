#include "cdpulse/error.hpp"
#include "cdpulse/network.hpp"

#include <cmath>

namespace cdpulse {

TransferFunction single_cavity_transfer(double kappa, double delta, double chi) {
  if (!(kappa > 0)) throw Error("single_cavity_transfer: kappa must be positive (got " +
                                std::to_string(kappa) + ")");
  const cplx energy = kI * (delta + chi) - kappa / 2.0;
  return {Polynomial::constant(kappa), Polynomial({energy, kI})};
}

TransferFunction single_cavity_transfer(const StateMode& mode) {
  if (!(mode.kappa > 0)) throw Error("single_cavity_transfer: kappa must be positive");
  return {Polynomial::constant(mode.kappa), Polynomial({mode.energy, kI})};
}

TransferFunction cascade_transfer(const TransferFunction& tf1, const TransferFunction& tf2) {
  return {tf1.numerator * tf2.numerator, tf1.denominator * tf2.denominator};
}

Polynomial purcell_inverse_transfer(const Purcell& scenario, const NetworkState& state) {
  const cplx e1 = state.modes.at(0).energy;
  const cplx e2 = state.modes.at(1).energy;
  const double g2 = std::norm(scenario.G);
  return Polynomial({e1, kI}) * Polynomial({e2, kI}) + Polynomial::constant(g2);
}

TransferFunction state_transfer(const NetworkScenario& scenario, const NetworkState& state) {
  if (const auto* pc = std::get_if<Purcell>(&scenario.topology)) {
    // Output is read from the filter port: Z = sqrt(kappa) C2, C2 = i G* A / P(w).
    const cplx gain = kI * std::sqrt(pc->kappa) * std::conj(pc->G);
    return {Polynomial::constant(gain), purcell_inverse_transfer(*pc, state)};
  }
  if (std::holds_alternative<Cascade>(scenario.topology)) {
    return cascade_transfer(single_cavity_transfer(state.modes.at(0)),
                            single_cavity_transfer(state.modes.at(1)));
  }
  return single_cavity_transfer(state.modes.at(0));
}

std::vector<cplx> purcell_hybridized_energies(const Purcell& scenario, const NetworkState& state) {
  std::vector<cplx> out;
  for (const cplx r : purcell_inverse_transfer(scenario, state).roots()) out.push_back(energy_from_root(r));
  return out;
}

}  // namespace cdpulse
