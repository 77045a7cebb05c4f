#include "doctest.h"
#include "test_support.hpp"

#include <cmath>

using namespace cdpulse;
using namespace cdpulse::testing;

namespace {

Cascade random_cascade(std::mt19937_64& g) {
  Cascade cc;
  for (CavityParams* c : {&cc.cavity1, &cc.cavity2}) {
    c->kappa = uniform(g, 0.5, 4.0);
    c->delta = uniform(g, -1.0, 1.0);
    c->chi = {uniform(g, 0.2, 2.5), -uniform(g, 0.2, 2.5)};
  }
  return cc;
}

// Time-domain drive from pole energies; Purcell energies come from the
// hybridized roots of each distinct state.
SynthesizedDrive time_domain_drive(const NetworkScenario& sc, const TrialPulse& pulse, const TimeGrid& grid) {
  std::vector<cplx> energies;
  if (const auto* pc = std::get_if<Purcell>(&sc.topology)) {
    for (const auto& state : enumerate_states(sc))
      for (const cplx e : purcell_hybridized_energies(*pc, state)) energies.push_back(e);
  } else {
    energies = drive_energies(sc);
  }
  return synthesize_time_domain(pulse, cd_coefficients(energies), grid);
}

}  // namespace

TEST_SUITE("property/synthesis") {

TEST_CASE("time-domain and frequency-domain synthesis agree") {
  auto g = make_rng(301);
  for (int trial = 0; trial < kPropertyCases; ++trial) {
    NetworkScenario sc;
    switch (trial % 3) {
      case 0: {
        SingleCavity s;
        s.kappa = uniform(g, 0.5, 5.0);
        s.delta = uniform(g, -1.0, 1.0);
        s.chis.clear();
        for (int k = uniform_int(g, 1, 2); k > 0; --k) s.chis.push_back(uniform(g, 0.2, 3.0));
        sc.topology = s;
        break;
      }
      case 1: {
        Purcell p;
        p.G = uniform(g, 2.0, 20.0);
        p.delta_c = uniform(g, -1.0, 1.0);
        p.delta_f = uniform(g, -10.0, 10.0);
        p.kappa = uniform(g, 0.5, 5.0);
        p.chis = {uniform(g, 0.2, 3.0)};
        sc.topology = p;
        break;
      }
      default:
        sc.topology = random_cascade(g);
    }
    const auto transfers = drive_transfers(sc);
    const int order = expansion_from_response(inverse_transfer_product(transfers)).order();
    const TrialPulse pulse = sine_pulse(order + 4);
    const TimeGrid grid(0.0, 1.0, 2049);
    const auto td = time_domain_drive(sc, pulse, grid);
    const auto fd = synthesize_frequency_domain(pulse, transfers, grid);
    CAPTURE(sc.topology_name());
    CHECK(relative_l2(fd.time_signal, td.time_signal) < 1e-4);
  }
}

TEST_CASE("coefficients equal the expanded product of (1 + x / E)") {
  auto g = make_rng(302);
  for (int trial = 0; trial < kPropertyCases; ++trial) {
    const int n = uniform_int(g, 1, 6);
    std::vector<cplx> e;
    Polynomial product = Polynomial::constant(1.0);
    for (int k = 0; k < n; ++k) {
      e.push_back(random_energy(g));
      product = product * Polynomial({cplx{1.0}, 1.0 / e.back()});
    }
    const auto b = cd_coefficients(e);
    REQUIRE(b.order() == n);
    for (int j = 0; j <= n; ++j) {
      const cplx want = product.coeffs()[j];
      CHECK(std::abs(b.coefficients[j] - want) <= 1e-12 * std::max(std::abs(want), 1e-300));
    }
  }
}

TEST_CASE("conjugated energies conjugate the drive of a real pulse") {
  auto g = make_rng(303);
  const TimeGrid grid(0.0, 1.0, 401);
  for (int trial = 0; trial < kPropertyCases; ++trial) {
    const int n = uniform_int(g, 1, 5);
    std::vector<cplx> e, ec;
    for (int k = 0; k < n; ++k) {
      e.push_back(random_energy(g));
      ec.push_back(std::conj(e.back()));
    }
    const TrialPulse pulse = uniform_int(g, 0, 1) ? sine_pulse(n + 2) : gaussian_pulse(uniform(g, 0.08, 0.2), 0.5);
    const auto a = synthesize_time_domain(pulse, cd_coefficients(e), grid).time_signal;
    const auto b = synthesize_time_domain(pulse, cd_coefficients(ec), grid).time_signal;
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) worst = std::max(worst, std::abs(b[i] - std::conj(a[i])));
    CHECK(worst <= 1e-12 * a.max_abs());
  }
}

TEST_CASE("compensation field closed form agrees with the rational form") {
  auto g = make_rng(304);
  const TimeGrid grid(0.0, 1.0, 2049);
  for (int trial = 0; trial < kPropertyCases; ++trial) {
    const Cascade cc = random_cascade(g);
    // Closed form written out from the cavity parameters.
    const auto e1 = cavity_energies(cc.cavity1);
    const auto e2 = cavity_energies(cc.cavity2);
    for (int k = 0; k < 5; ++k) {
      const double w = uniform(g, -30.0, 30.0);
      const cplx iw = kI * w;
      const cplx numerator = (e1[0] + iw) * (e2[1] + iw) - (e1[1] + iw) * (e2[0] + iw);
      const cplx closed = numerator / (cc.cavity1.kappa * (e2[0] - e2[1]));
      const cplx rational = cascade_gamma_response(cc, w);
      CHECK(std::abs(closed - rational) <= 1e-6 * std::abs(rational));
    }
    const auto drives = cascade_compensation(sine_pulse(uniform_int(g, 4, 10)), cc, grid);
    CHECK(drives.gamma_mismatch < 1e-6);
  }
}

}
