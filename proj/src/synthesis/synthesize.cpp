#include "cdpulse/error.hpp"
#include "cdpulse/synthesis.hpp"

#include <algorithm>
#include <cmath>

namespace cdpulse {
namespace {

constexpr double kSameEnergyTol = 1e-12;

bool same_value(cplx a, cplx b) {
  return std::abs(a - b) <= kSameEnergyTol * std::max({1.0, std::abs(a), std::abs(b)});
}

bool same_polynomial(const Polynomial& a, const Polynomial& b) {
  if (a.degree() != b.degree()) return false;
  for (std::size_t k = 0; k < a.coeffs().size(); ++k)
    if (!same_value(a.coeffs()[k], b.coeffs()[k])) return false;
  return true;
}

bool same_transfer(const TransferFunction& a, const TransferFunction& b) {
  return same_polynomial(a.numerator, b.numerator) && same_polynomial(a.denominator, b.denominator);
}

}  // namespace

const char* provenance_name(DriveProvenance p) {
  switch (p) {
    case DriveProvenance::TrialPulse: return "trial_pulse";
    case DriveProvenance::TimeDomainExpansion: return "time_domain_expansion";
    case DriveProvenance::FrequencyDomainInverse: return "frequency_domain_inverse";
    case DriveProvenance::CascadeCompensation: return "cascade_compensation";
    case DriveProvenance::LegacyCompensation: return "legacy_compensation";
  }
  return "unknown";
}

double SynthesizedDrive::boundary_ratio(const PulseWindow& window) const {
  const double peak = time_signal.max_abs();
  if (peak == 0.0) return 0.0;
  const auto& g = time_signal.grid;
  const double a = std::abs(time_signal[g.index_at_or_before(window.t_start)]);
  const double b = std::abs(time_signal[g.index_at_or_before(window.t_end)]);
  return std::max(a, b) / peak;
}

SynthesizedDrive trial_drive(const TrialPulse& pulse, const TimeGrid& grid) {
  return {evaluate_pulse(pulse, 0, grid), std::nullopt, DriveProvenance::TrialPulse};
}

SynthesizedDrive synthesize_frequency_domain(const TrialPulse& pulse,
                                             std::span<const TransferFunction> transfers,
                                             const TimeGrid& grid, std::size_t pad_factor) {
  ComplexSignal omega_t = evaluate_pulse(pulse, 0, grid);
  Spectrum spectrum = fourier_transform(omega_t, pad_factor);
  cplx norm{1.0};
  for (const auto& tf : transfers) norm *= tf.inverse(0.0);
  if (norm == cplx{0.0})
    throw SingularityError("synthesize_frequency_domain: inverse transfer vanishes at w = 0");
  for (std::size_t k = 0; k < spectrum.values.size(); ++k) {
    cplx r{1.0};
    for (const auto& tf : transfers) r *= tf.inverse(spectrum.omega[k]);
    spectrum.values[k] *= r / norm;
  }
  ComplexSignal a = inverse_fourier_transform(spectrum, grid);
  return {std::move(a), std::move(spectrum), DriveProvenance::FrequencyDomainInverse};
}

Polynomial inverse_transfer_product(std::span<const TransferFunction> transfers) {
  Polynomial product = Polynomial::constant(1.0);
  for (const auto& tf : transfers) {
    if (tf.numerator.degree() != 0)
      throw Error("inverse_transfer_product: transfer numerator is not constant");
    if (tf.numerator.is_zero())
      throw SingularityError("inverse_transfer_product: transfer numerator is zero");
    product = (1.0 / tf.numerator.coeffs()[0]) * (product * tf.denominator);
  }
  const cplx r0 = product(0.0);
  if (r0 == cplx{0.0})
    throw SingularityError("inverse_transfer_product: inverse transfer vanishes at w = 0");
  return (1.0 / r0) * product;
}

std::vector<TransferFunction> drive_transfers(const NetworkScenario& scenario) {
  std::vector<TransferFunction> out;
  if (const auto* cs = std::get_if<Cascade>(&scenario.topology)) {
    for (const auto* cav : {&cs->cavity1, &cs->cavity2})
      for (int q = 0; q < 2; ++q)
        out.push_back(single_cavity_transfer(cav->kappa, cav->delta, cav->chi[q]));
    return out;
  }
  for (const auto& state : enumerate_states(scenario)) {
    TransferFunction tf = state_transfer(scenario, state);
    const bool seen = std::any_of(out.begin(), out.end(),
                                  [&](const TransferFunction& o) { return same_transfer(o, tf); });
    if (!seen) out.push_back(std::move(tf));
  }
  return out;
}

std::vector<cplx> drive_energies(const NetworkScenario& scenario) {
  if (std::holds_alternative<Purcell>(scenario.topology))
    throw Error("drive_energies: Purcell modes are hybridized; use the inverse-transfer product");
  std::vector<cplx> out;
  for (const auto& tf : drive_transfers(scenario)) out.push_back(tf.denominator.coeffs()[0]);
  return out;
}

}  // namespace cdpulse
