#pragma once

// Physical network description: qubit-state enumeration, complex pole
// energies and transfer functions for the single-cavity, Purcell-filter and
// cascaded topologies.
//
// Transfer functions use the library's Fourier convention (d/dt <-> -i w).
// In that convention a cavity mode with complex energy E = i Delta + i chi -
// kappa/2 responds as kappa / (E + i w); at w = 0 this is the reflection
// amplitude kappa/E.

#include "cdpulse/signal.hpp"

#include <array>
#include <string>
#include <variant>
#include <vector>

namespace cdpulse {

/// Polynomial with complex coefficients, ascending powers.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<cplx> coeffs);
  static Polynomial constant(cplx c) { return Polynomial({c}); }

  const std::vector<cplx>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const;
  cplx operator()(cplx x) const;

  /// Roots via eigenvalues of the companion matrix.
  std::vector<cplx> roots() const;

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(cplx s, const Polynomial& a);

 private:
  void trim();
  std::vector<cplx> coeffs_;
};

/// Rational function numerator(w) / denominator(w).
struct TransferFunction {
  Polynomial numerator;
  Polynomial denominator;

  cplx operator()(double omega) const;
  /// 1/H(w); throws SingularityError when the numerator is identically zero.
  cplx inverse(double omega) const;
  /// Poles in the w plane.
  std::vector<cplx> poles() const { return denominator.roots(); }
};

/// One cavity mode seen by a particular qubit state.
struct StateMode {
  std::string label;
  double chi = 0.0;    ///< total dispersive shift (rad/us)
  double kappa = 0.0;  ///< port coupling of this mode (rad/us)
  cplx energy;         ///< complex pole energy i Delta + i chi - kappa/2
};

enum class ChiMode {
  Qubits,  ///< chis are per-qubit shifts; 2^n states with signed sums
  States,  ///< chis are per-state total shifts, one state each
};

struct SingleCavity {
  double kappa = 2.0;
  double delta = 0.0;
  std::vector<double> chis{2.0};
  ChiMode chi_mode = ChiMode::Qubits;
  /// Per-qubit sign multiplier; qubit i in |0> shifts by +signs[i]*chi_i.
  std::vector<int> signs;
};

/// Measurement cavity (lossless unless cavity1_loss > 0) coupled with G to a
/// filter cavity that carries the output port.
struct Purcell {
  cplx G{20.0, 0.0};
  double delta_c = 0.2;
  double delta_f = 20.0;
  double kappa = 2.0;
  std::vector<double> chis{2.0};
  ChiMode chi_mode = ChiMode::Qubits;
  std::vector<int> signs;
  double cavity1_loss = 0.0;
};

struct CavityParams {
  double kappa = 2.0;
  double delta = 0.0;
  /// Shift for the cavity's qubit in |0> and |1>.
  std::array<double, 2> chi{1.0, -1.0};
};

/// Two single-port cavities in series; cavity 2 also has a weak back port.
struct Cascade {
  CavityParams cavity1;
  CavityParams cavity2;
};

struct NetworkScenario {
  std::variant<SingleCavity, Purcell, Cascade> topology;

  const char* topology_name() const;
  /// Copy with every dispersive shift set to zero.
  NetworkScenario without_dispersive_shifts() const;
};

/// One qubit-register configuration: its label (bitstring) and the modes it
/// induces. Single cavity: one mode. Purcell: {measurement cavity, filter}.
/// Cascade: {cavity 1, cavity 2}.
struct NetworkState {
  std::string label;
  std::vector<StateMode> modes;
};

/// Deterministic enumeration, bitstrings ascending (qubit 1 is the leftmost
/// bit). Sign convention: bit 0 -> +chi, bit 1 -> -chi (times signs[i]).
std::vector<NetworkState> enumerate_states(const NetworkScenario& scenario);

/// kappa / (i Delta + i chi - kappa/2 + i w).
TransferFunction single_cavity_transfer(double kappa, double delta, double chi);
TransferFunction single_cavity_transfer(const StateMode& mode);

/// Pointwise product tf1 * tf2.
TransferFunction cascade_transfer(const TransferFunction& tf1, const TransferFunction& tf2);

/// (i Delta + i chi_j + i w)(i delta - kappa/2 + i w) + |G|^2 for one state.
Polynomial purcell_inverse_transfer(const Purcell& scenario, const NetworkState& state);

/// Transfer from the drive A to the output of `state`.
TransferFunction state_transfer(const NetworkScenario& scenario, const NetworkState& state);

/// Complex energies of the hybridized Purcell modes (two per state), derived
/// from the roots of the inverse-transfer polynomial. Reporting only.
std::vector<cplx> purcell_hybridized_energies(const Purcell& scenario, const NetworkState& state);

/// Energy whose factor (E + i w) vanishes at the w-plane root.
inline cplx energy_from_root(cplx omega_root) { return -kI * omega_root; }

}  // namespace cdpulse
