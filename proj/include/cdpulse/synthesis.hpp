#pragma once

// Corrected drive synthesis. A drive A is built from a trial pulse Omega so
// that every listed mode follows Omega adiabatically:
//
//   A(w) = Omega(w) * prod_k H_k^{-1}(w) / prod_k H_k^{-1}(0)
//
// or, equivalently in the time domain, a finite sum of pulse derivatives
// weighted by elementary symmetric polynomials of the inverse pole energies.

#include "cdpulse/network.hpp"
#include "cdpulse/signal.hpp"

#include <optional>
#include <span>
#include <vector>

namespace cdpulse {

/// e_0 .. e_n of `values` (e_0 = 1), by expanding prod (1 + x v_l).
std::vector<cplx> elementary_symmetric(std::span<const cplx> values);

/// Coefficients b_0 .. b_N with b_j = e_j(1/E_1, ..., 1/E_N).
///
/// The drive they describe is A = sum_j b_j (-d/dt)^j Omega, which in the
/// "i^j d^j/dt^j" basis carries the weights i^j b_j (see basis_weight).
struct DerivativeExpansion {
  std::vector<cplx> coefficients{cplx{1.0}};

  int order() const { return static_cast<int>(coefficients.size()) - 1; }
  /// Weight of i^j d^j Omega / dt^j.
  cplx basis_weight(int j) const;
  /// Weight of the plain derivative d^j Omega / dt^j.
  cplx derivative_weight(int j) const;
};

/// Throws Error on an empty list or a zero energy.
DerivativeExpansion cd_coefficients(std::span<const cplx> energies);

/// Expansion equivalent to multiplying the spectrum by R(w) / R(0), with R a
/// polynomial in w. Since w <-> i d/dt, the weight of i^j d^j is r_j / r_0.
DerivativeExpansion expansion_from_response(const Polynomial& response);

enum class DriveProvenance {
  TrialPulse,
  TimeDomainExpansion,
  FrequencyDomainInverse,
  CascadeCompensation,
  LegacyCompensation,
};

const char* provenance_name(DriveProvenance p);

struct SynthesizedDrive {
  ComplexSignal time_signal;
  std::optional<Spectrum> frequency_signal;
  DriveProvenance provenance = DriveProvenance::TrialPulse;

  /// max(|A(t_start)|, |A(t_end)|) / max |A|, using the pulse window ends.
  double boundary_ratio(const PulseWindow& window) const;
};

/// The trial pulse itself, unmodified.
SynthesizedDrive trial_drive(const TrialPulse& pulse, const TimeGrid& grid);

/// sum_k r_k i^k d^k Omega / dt^k for R(w) = sum_k r_k w^k, i.e. the time
/// signal whose spectrum is R(w) Omega(w). No normalization.
ComplexSignal apply_response_polynomial(const TrialPulse& pulse, const Polynomial& response,
                                        const TimeGrid& grid);

/// sum_j b_j (-d/dt)^j Omega from closed-form derivatives.
SynthesizedDrive synthesize_time_domain(const TrialPulse& pulse,
                                        const DerivativeExpansion& expansion,
                                        const TimeGrid& grid);

/// Omega(w) prod_k H_k^{-1}(w), normalized to unit gain at w = 0.
SynthesizedDrive synthesize_frequency_domain(const TrialPulse& pulse,
                                             std::span<const TransferFunction> transfers,
                                             const TimeGrid& grid, std::size_t pad_factor = 4);

/// Normalized product prod_k H_k^{-1}(w) as a polynomial. Requires constant
/// numerators (true for every supported topology).
Polynomial inverse_transfer_product(std::span<const TransferFunction> transfers);

/// Transfers that shape the main drive of a scenario, with duplicates
/// (degenerate states) removed. For the cascade these are the four
/// single-cavity factors.
std::vector<TransferFunction> drive_transfers(const NetworkScenario& scenario);

/// Pole energies (one per distinct single-cavity mode) behind
/// drive_transfers. Throws Error for Purcell, whose poles are hybridized.
std::vector<cplx> drive_energies(const NetworkScenario& scenario);

// ---------------------------------------------------------------------------
// Cascaded cavities
// ---------------------------------------------------------------------------

struct CascadeDrives {
  SynthesizedDrive a;
  SynthesizedDrive b;
  /// L2 distance between the closed-form and the rational form of the
  /// compensation field Gamma(t), relative to the larger of ||Gamma|| and
  /// ||Omega||.
  double gamma_mismatch = 0.0;
};

/// Complex energies (E_0, E_1) of one cavity of the cascade.
std::array<cplx, 2> cavity_energies(const CavityParams& cavity);

/// Gamma(w) / Omega(w), the rational compensation response.
cplx cascade_gamma_response(const Cascade& scenario, double omega);

/// Gamma(t) from its closed form in Omega and dOmega/dt (unnormalized).
ComplexSignal cascade_gamma_closed_form(const TrialPulse& pulse, const Cascade& scenario,
                                        const TimeGrid& grid);

/// Corrected main drive A and back-port drive B. Both share one
/// normalization so the indistinguishability condition Z_01 = Z_10 holds.
/// Throws SingularityError when the cavity-2 shifts coincide.
CascadeDrives cascade_compensation(const TrialPulse& pulse, const Cascade& scenario,
                                   const TimeGrid& grid);

/// B(w) / A(w) for the known compensation that does not shorten ring-down.
cplx legacy_compensation_response(const Cascade& scenario, double omega);

/// Back-port drive for an arbitrary main drive A.
SynthesizedDrive legacy_compensation(const ComplexSignal& a, const Cascade& scenario,
                                     std::size_t pad_factor = 4);

}  // namespace cdpulse
