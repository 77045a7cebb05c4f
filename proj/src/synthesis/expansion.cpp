#include "cdpulse/error.hpp"
#include "cdpulse/kernels.hpp"
#include "cdpulse/synthesis.hpp"

#include <cmath>

namespace cdpulse {
namespace {

cplx i_pow(int j) {
  static constexpr cplx cycle[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return cycle[j & 3];
}

ComplexSignal combine_derivatives(const TrialPulse& pulse, const std::vector<cplx>& weights,
                                  const TimeGrid& grid) {
  const int order = static_cast<int>(weights.size()) - 1;
  const auto stack = derivative_stack(pulse, order, grid);
  std::vector<const double*> basis;
  basis.reserve(stack.size());
  for (const auto& d : stack) basis.push_back(d.data());
  ComplexSignal out(grid);
  kernels::active_kernels().combine_real_basis(weights.data(), basis.data(), basis.size(),
                                               grid.size(), out.samples.data());
  return out;
}

}  // namespace

std::vector<cplx> elementary_symmetric(std::span<const cplx> values) {
  std::vector<cplx> e(values.size() + 1, cplx{0.0});
  e[0] = 1.0;
  for (std::size_t l = 0; l < values.size(); ++l) {
    for (std::size_t j = l + 1; j >= 1; --j) e[j] += e[j - 1] * values[l];
  }
  return e;
}

cplx DerivativeExpansion::basis_weight(int j) const {
  return i_pow(j) * coefficients.at(static_cast<std::size_t>(j));
}

cplx DerivativeExpansion::derivative_weight(int j) const {
  const cplx b = coefficients.at(static_cast<std::size_t>(j));
  return (j % 2 == 0) ? b : -b;
}

DerivativeExpansion cd_coefficients(std::span<const cplx> energies) {
  if (energies.empty()) throw Error("cd_coefficients: empty energy list");
  std::vector<cplx> inv;
  inv.reserve(energies.size());
  for (const cplx e : energies) {
    if (e == cplx{0.0}) throw SingularityError("cd_coefficients: zero pole energy");
    inv.push_back(1.0 / e);
  }
  return {elementary_symmetric(inv)};
}

DerivativeExpansion expansion_from_response(const Polynomial& response) {
  const auto& r = response.coeffs();
  if (r.empty() || r[0] == cplx{0.0})
    throw SingularityError("expansion_from_response: response vanishes at w = 0");
  DerivativeExpansion out;
  out.coefficients.resize(r.size());
  for (std::size_t j = 0; j < r.size(); ++j)
    out.coefficients[j] = r[j] / r[0] / i_pow(static_cast<int>(j));
  return out;
}

ComplexSignal apply_response_polynomial(const TrialPulse& pulse, const Polynomial& response,
                                        const TimeGrid& grid) {
  std::vector<cplx> weights(response.coeffs());
  if (weights.empty()) return ComplexSignal(grid);
  // w^k <-> (i d/dt)^k
  for (std::size_t k = 0; k < weights.size(); ++k) weights[k] *= i_pow(static_cast<int>(k));
  return combine_derivatives(pulse, weights, grid);
}

SynthesizedDrive synthesize_time_domain(const TrialPulse& pulse,
                                        const DerivativeExpansion& expansion,
                                        const TimeGrid& grid) {
  if (expansion.order() > pulse.max_order())
    throw Error("synthesize_time_domain: expansion order " + std::to_string(expansion.order()) +
                " exceeds the pulse's derivative limit " + std::to_string(pulse.max_order()));
  std::vector<cplx> weights(expansion.coefficients.size());
  for (int j = 0; j <= expansion.order(); ++j) weights[j] = expansion.derivative_weight(j);
  return {combine_derivatives(pulse, weights, grid), std::nullopt,
          DriveProvenance::TimeDomainExpansion};
}

}  // namespace cdpulse
