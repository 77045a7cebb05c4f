#include "cdpulse/error.hpp"
#include "cdpulse/synthesis.hpp"

#include <algorithm>
#include <cmath>

namespace cdpulse {
namespace {

struct CascadePoles {
  std::array<cplx, 2> e1;
  std::array<cplx, 2> e2;
  double kappa1;
  double kappa2;
};

CascadePoles poles_of(const Cascade& sc) {
  if (!(sc.cavity1.kappa > 0) || !(sc.cavity2.kappa > 0))
    throw Error("cascade: both cavities need a positive kappa");
  return {cavity_energies(sc.cavity1), cavity_energies(sc.cavity2), sc.cavity1.kappa,
          sc.cavity2.kappa};
}

void require_distinct_second_cavity(const CascadePoles& p) {
  const double scale = std::max({std::abs(p.e2[0]), std::abs(p.e2[1]), 1.0});
  if (std::abs(p.e2[0] - p.e2[1]) <= 1e-12 * scale)
    throw SingularityError(
        "cascade compensation: cavity 2 shifts are degenerate (chi[0] == chi[1]); the "
        "compensation field is undefined");
}

// Coefficients of (E1_0 + iw)(E2_1 + iw) - (E1_1 + iw)(E2_0 + iw) = c0 + c1 (iw).
std::pair<cplx, cplx> gamma_numerator(const CascadePoles& p) {
  const cplx c0 = p.e1[0] * p.e2[1] - p.e1[1] * p.e2[0];
  const cplx c1 = p.e1[0] + p.e2[1] - p.e1[1] - p.e2[0];
  return {c0, c1};
}

}  // namespace

std::array<cplx, 2> cavity_energies(const CavityParams& cavity) {
  return {kI * (cavity.delta + cavity.chi[0]) - cavity.kappa / 2.0,
          kI * (cavity.delta + cavity.chi[1]) - cavity.kappa / 2.0};
}

cplx cascade_gamma_response(const Cascade& scenario, double omega) {
  const CascadePoles p = poles_of(scenario);
  auto h = [&](double kappa, cplx e) { return kappa / (e + kI * omega); };
  const cplx h1_0 = h(p.kappa1, p.e1[0]), h1_1 = h(p.kappa1, p.e1[1]);
  const cplx h2_0 = h(p.kappa2, p.e2[0]), h2_1 = h(p.kappa2, p.e2[1]);
  return (h2_0 / h1_0 - h2_1 / h1_1) / (h2_1 - h2_0);
}

ComplexSignal cascade_gamma_closed_form(const TrialPulse& pulse, const Cascade& scenario,
                                        const TimeGrid& grid) {
  const CascadePoles p = poles_of(scenario);
  require_distinct_second_cavity(p);
  const auto [c0, c1] = gamma_numerator(p);
  const cplx scale = 1.0 / (p.kappa1 * (p.e2[0] - p.e2[1]));
  const ComplexSignal omega = evaluate_pulse(pulse, 0, grid);
  const ComplexSignal d_omega = evaluate_pulse(pulse, 1, grid);
  ComplexSignal out(grid);
  for (std::size_t i = 0; i < grid.size(); ++i)
    out[i] = scale * (c0 * omega[i] - c1 * d_omega[i]);
  return out;
}

CascadeDrives cascade_compensation(const TrialPulse& pulse, const Cascade& scenario,
                                   const TimeGrid& grid) {
  const CascadePoles p = poles_of(scenario);
  require_distinct_second_cavity(p);

  // prod_i H1_i^{-1} prod_k H2_k^{-1} as a polynomial in w.
  const double k1 = p.kappa1, k2 = p.kappa2;
  Polynomial h2_inv = (1.0 / (k2 * k2)) * (Polynomial({p.e2[0], kI}) * Polynomial({p.e2[1], kI}));
  Polynomial h1_inv = (1.0 / (k1 * k1)) * (Polynomial({p.e1[0], kI}) * Polynomial({p.e1[1], kI}));
  const Polynomial a_poly = h1_inv * h2_inv;
  const cplx norm = a_poly(0.0);
  if (norm == cplx{0.0}) throw SingularityError("cascade compensation: pole at zero energy");
  const cplx s = 1.0 / norm;

  // Gamma(w)/Omega(w) = (c0 + c1 i w) / (kappa1 (E2_0 - E2_1)).
  const auto [c0, c1] = gamma_numerator(p);
  const Polynomial gamma_poly =
      (1.0 / (k1 * (p.e2[0] - p.e2[1]))) * Polynomial({c0, kI * c1});
  const Polynomial b_poly = s * (gamma_poly * h2_inv);

  CascadeDrives out{
      {apply_response_polynomial(pulse, s * a_poly, grid), std::nullopt,
       DriveProvenance::CascadeCompensation},
      {apply_response_polynomial(pulse, b_poly, grid), std::nullopt,
       DriveProvenance::CascadeCompensation},
      0.0};

  const ComplexSignal closed = cascade_gamma_closed_form(pulse, scenario, grid);
  const ComplexSignal rational = apply_frequency_response(
      evaluate_pulse(pulse, 0, grid), [&](double w) { return cascade_gamma_response(scenario, w); });
  const ComplexSignal omega = evaluate_pulse(pulse, 0, grid);
  const double reference = std::max(rational.l2(), omega.l2());
  out.gamma_mismatch = reference > 0.0 ? (closed - rational).l2() / reference : 0.0;
  return out;
}

cplx legacy_compensation_response(const Cascade& scenario, double omega) {
  const CascadePoles p = poles_of(scenario);
  auto h = [&](double kappa, cplx e) { return kappa / (e + kI * omega); };
  const cplx h1_0 = h(p.kappa1, p.e1[0]), h1_1 = h(p.kappa1, p.e1[1]);
  const cplx h2_0 = h(p.kappa2, p.e2[0]), h2_1 = h(p.kappa2, p.e2[1]);
  return (h2_0 * h1_1 - h2_1 * h1_0) / (h2_1 - h2_0);
}

SynthesizedDrive legacy_compensation(const ComplexSignal& a, const Cascade& scenario,
                                     std::size_t pad_factor) {
  require_distinct_second_cavity(poles_of(scenario));
  ComplexSignal b = apply_frequency_response(
      a, [&](double w) { return legacy_compensation_response(scenario, w); }, pad_factor);
  return {std::move(b), std::nullopt, DriveProvenance::LegacyCompensation};
}

}  // namespace cdpulse
