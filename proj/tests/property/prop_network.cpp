#include "doctest.h"
#include "test_support.hpp"

#include <cmath>
#include <set>

using namespace cdpulse;
using namespace cdpulse::testing;

namespace {

NetworkScenario random_scenario(std::mt19937_64& g) {
  switch (uniform_int(g, 0, 2)) {
    case 0: {
      SingleCavity sc;
      sc.kappa = uniform(g, 0.1, 10.0);
      sc.delta = uniform(g, -3.0, 3.0);
      sc.chis.clear();
      for (int k = uniform_int(g, 1, 3); k > 0; --k) sc.chis.push_back(uniform(g, -4.0, 4.0));
      return {sc};
    }
    case 1: {
      Purcell pc;
      pc.G = std::polar(uniform(g, 0.5, 25.0), uniform(g, 0.0, 6.28));
      pc.delta_c = uniform(g, -2.0, 2.0);
      pc.delta_f = uniform(g, -25.0, 25.0);
      pc.kappa = uniform(g, 0.5, 10.0);
      pc.chis = {uniform(g, 0.1, 4.0)};
      return {pc};
    }
    default: {
      Cascade cc;
      cc.cavity1 = {uniform(g, 0.1, 5.0), uniform(g, -2.0, 2.0), {uniform(g, -3.0, 3.0), uniform(g, -3.0, 3.0)}};
      cc.cavity2 = {uniform(g, 0.1, 5.0), uniform(g, -2.0, 2.0), {uniform(g, -3.0, 3.0), uniform(g, -3.0, 3.0)}};
      return {cc};
    }
  }
}

Polynomial random_polynomial(std::mt19937_64& g, int degree) {
  std::vector<cplx> c;
  for (int k = 0; k <= degree; ++k) c.emplace_back(uniform(g, -2.0, 2.0), uniform(g, -2.0, 2.0));
  return Polynomial(c);
}

}  // namespace

TEST_SUITE("property/network") {

TEST_CASE("every mode of every state decays") {
  auto g = make_rng(201);
  for (int trial = 0; trial < kPropertyCases; ++trial) {
    const NetworkScenario sc = random_scenario(g);
    CAPTURE(sc.topology_name());
    for (const auto& state : enumerate_states(sc)) {
      for (const cplx root : state_transfer(sc, state).poles()) {
        CHECK(root.imag() < 0.0);
        CHECK(energy_from_root(root).real() < 0.0);
      }
    }
  }
}

TEST_CASE("state enumeration is a bijection and odd under bit flips") {
  auto g = make_rng(202);
  for (int trial = 0; trial < kPropertyCases; ++trial) {
    SingleCavity sc;
    const int n = uniform_int(g, 1, 6);
    sc.chis.clear();
    for (int k = 0; k < n; ++k) sc.chis.push_back(uniform(g, -5.0, 5.0));
    if (uniform_int(g, 0, 1) == 1)
      for (int k = 0; k < n; ++k) sc.signs.push_back(uniform_int(g, 0, 1) ? 1 : -1);
    const auto states = enumerate_states(NetworkScenario{sc});
    REQUIRE(states.size() == (std::size_t{1} << n));
    std::set<std::string> labels;
    for (std::size_t b = 0; b < states.size(); ++b) {
      const auto& s = states[b];
      labels.insert(s.label);
      REQUIRE(s.label.size() == static_cast<std::size_t>(n));
      double chi = 0.0;
      std::size_t value = 0;
      for (int q = 0; q < n; ++q) {
        const bool one = s.label[q] == '1';
        value = (value << 1) | (one ? 1u : 0u);
        const double sign = sc.signs.empty() ? 1.0 : sc.signs[q];
        chi += (one ? -1.0 : 1.0) * sign * sc.chis[q];
      }
      CHECK(value == b);
      CHECK(s.modes[0].chi == doctest::Approx(chi).epsilon(1e-12));
      const auto& flipped = states[states.size() - 1 - b];
      CHECK(flipped.modes[0].chi == doctest::Approx(-s.modes[0].chi).epsilon(1e-12));
    }
    CHECK(labels.size() == states.size());
  }
}

TEST_CASE("cascade transfer equals the product of its factors") {
  auto g = make_rng(203);
  for (int trial = 0; trial < kPropertyCases; ++trial) {
    const TransferFunction a{random_polynomial(g, uniform_int(g, 0, 2)), random_polynomial(g, uniform_int(g, 1, 3))};
    const TransferFunction b{random_polynomial(g, uniform_int(g, 0, 2)), random_polynomial(g, uniform_int(g, 1, 3))};
    const TransferFunction ab = cascade_transfer(a, b);
    for (int k = 0; k < 5; ++k) {
      const double w = uniform(g, -20.0, 20.0);
      const cplx expected = a(w) * b(w);
      CHECK(std::abs(ab(w) - expected) <= 1e-10 * std::max(1.0, std::abs(expected)));
    }
  }
}

}
