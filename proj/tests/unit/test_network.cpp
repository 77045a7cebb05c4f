#include "doctest.h"
#include "test_support.hpp"

#include <algorithm>
#include <cmath>

using namespace cdpulse;
using namespace cdpulse::testing;

namespace {

bool near(cplx a, cplx b, double tol = 1e-12) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

}  // namespace

TEST_SUITE("network") {

TEST_CASE("single cavity transfer at zero frequency") {
  CHECK(near(single_cavity_transfer(2.0, 0.0, 0.0)(0.0), cplx{-2.0}));
  CHECK(near(single_cavity_transfer(2.0, 0.3, 2.0)(0.0), 2.0 / (2.3 * kI - 1.0)));
  CHECK(std::abs(single_cavity_transfer(2.0, 0.3, 2.0)(1e6)) < 1e-5);
  CHECK_THROWS_AS(single_cavity_transfer(0.0, 0.0, 0.0), Error);
  CHECK_THROWS_AS(single_cavity_transfer(-1.0, 0.0, 0.0), Error);
}

TEST_CASE("single cavity pole lies in the lower half plane") {
  const auto poles = single_cavity_transfer(2.0, 0.3, 2.0).poles();
  REQUIRE(poles.size() == 1);
  CHECK(poles[0].imag() < 0.0);
  CHECK(near(energy_from_root(poles[0]), cplx{-1.0, 2.3}));
}

TEST_CASE("polynomial algebra and roots") {
  const Polynomial p({cplx{2.0}, cplx{-3.0}, cplx{1.0}});
  CHECK(near(p(cplx{2.0}), cplx{0.0}));
  auto r = p.roots();
  std::sort(r.begin(), r.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
  CHECK(near(r[0], cplx{1.0}));
  CHECK(near(r[1], cplx{2.0}));
  const Polynomial q = p * Polynomial({cplx{0.0}, cplx{1.0}});
  CHECK(q.degree() == 3);
  CHECK(near(q(cplx{3.0}), 3.0 * p(cplx{3.0})));
  CHECK((p - p).is_zero());
}

TEST_CASE("cascade transfer is the pointwise product") {
  const TransferFunction a = single_cavity_transfer(2.0, 0.3, 1.0);
  const TransferFunction b = single_cavity_transfer(1.5, -0.2, 0.8);
  const TransferFunction one{Polynomial::constant(1.0), Polynomial::constant(1.0)};
  for (double w : {-7.0, -1.3, 0.0, 0.4, 11.0}) {
    CHECK(near(cascade_transfer(a, one)(w), a(w)));
    CHECK(near(cascade_transfer(a, b)(w), a(w) * b(w)));
  }
  const auto poles = cascade_transfer(a, a).poles();
  REQUIRE(poles.size() == 2);
  CHECK(std::abs(poles[0] - poles[1]) < 1e-6);
}

TEST_CASE("purcell inverse transfer") {
  Purcell pc;
  pc.G = 20.0;
  pc.delta_c = 0.2;
  pc.delta_f = 20.0;
  pc.kappa = 2.0;
  pc.chis = {2.0};
  const auto states = enumerate_states(NetworkScenario{pc});
  REQUIRE(states.size() == 2);
  const Polynomial p0 = purcell_inverse_transfer(pc, states[0]);
  CHECK(p0.degree() == 2);
  CHECK(near(p0(cplx{0.0}), (0.2 * kI + 2.0 * kI) * (20.0 * kI - 1.0) + 400.0));
  const Polynomial p1 = purcell_inverse_transfer(pc, states[1]);
  CHECK(near(p1(cplx{0.0}), (0.2 * kI - 2.0 * kI) * (20.0 * kI - 1.0) + 400.0));

  auto roots = (p0 * p1).roots();
  REQUIRE(roots.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(roots[i].imag() < 0.0);
    for (std::size_t j = i + 1; j < 4; ++j) CHECK(std::abs(roots[i] - roots[j]) > 1e-3);
  }
  const auto e0 = purcell_hybridized_energies(pc, states[0]);
  REQUIRE(e0.size() == 2);
  for (const cplx e : e0) CHECK(std::abs(p0(kI * e)) < 1e-9 * 400.0);
}

TEST_CASE("purcell without coupling decouples") {
  Purcell pc;
  pc.G = 0.0;
  pc.chis = {1.5};
  const auto states = enumerate_states(NetworkScenario{pc});
  const Polynomial p = purcell_inverse_transfer(pc, states[1]);
  for (double w : {-3.0, 0.0, 2.0}) {
    const cplx expected = (kI * pc.delta_c - 1.5 * kI + kI * w) * (kI * pc.delta_f - pc.kappa / 2.0 + kI * w);
    CHECK(near(p(cplx{w}), expected));
  }
}

TEST_CASE("purcell state transfer is the filter output") {
  Purcell pc;
  const NetworkScenario sc{pc};
  const auto states = enumerate_states(sc);
  const TransferFunction h = state_transfer(sc, states[0]);
  const Polynomial inv = purcell_inverse_transfer(pc, states[0]);
  for (double w : {-5.0, 0.0, 3.0}) {
    CHECK(near(h(w) * inv(cplx{w}), kI * std::sqrt(pc.kappa) * std::conj(pc.G)));
  }
}

TEST_CASE("state enumeration and sign convention") {
  SingleCavity one;
  one.chis = {2.0};
  auto s = enumerate_states(NetworkScenario{one});
  REQUIRE(s.size() == 2);
  CHECK(s[0].label == "0");
  CHECK(s[0].modes[0].chi == 2.0);
  CHECK(s[1].label == "1");
  CHECK(s[1].modes[0].chi == -2.0);

  SingleCavity three;
  three.chis = {3.6, 2.0, 1.1};
  s = enumerate_states(NetworkScenario{three});
  REQUIRE(s.size() == 8);
  CHECK(s[0].label == "000");
  CHECK(s[0].modes[0].chi == doctest::Approx(6.7));
  CHECK(s[7].label == "111");
  CHECK(s[7].modes[0].chi == doctest::Approx(-6.7));
  CHECK(s[3].label == "011");
  CHECK(s[3].modes[0].chi == doctest::Approx(3.6 - 2.0 - 1.1));

  SingleCavity pair;
  pair.chis = {1.0, 1.0};
  s = enumerate_states(NetworkScenario{pair});
  CHECK(s[1].modes[0].chi == s[2].modes[0].chi);

  SingleCavity flipped;
  flipped.chis = {1.0, 0.5};
  flipped.signs = {-1, 1};
  s = enumerate_states(NetworkScenario{flipped});
  CHECK(s[0].modes[0].chi == doctest::Approx(-0.5));
}

TEST_CASE("state modes carry the complex energy") {
  SingleCavity sc;
  sc.kappa = 3.0;
  sc.delta = 0.4;
  sc.chis = {1.0, -1.0, 2.5};
  sc.chi_mode = ChiMode::States;
  const auto s = enumerate_states(NetworkScenario{sc});
  REQUIRE(s.size() == 3);
  CHECK(s[2].label == "s2");
  CHECK(near(s[2].modes[0].energy, cplx{-1.5, 2.9}));
  for (const auto& st : s) CHECK(st.modes[0].energy.real() == -1.5);
}

TEST_CASE("cascade enumerates four two-qubit states") {
  Cascade cc;
  cc.cavity1 = {2.0, 0.3, {1.0, -1.0}};
  cc.cavity2 = {1.5, -0.2, {0.8, -1.2}};
  const auto s = enumerate_states(NetworkScenario{cc});
  REQUIRE(s.size() == 4);
  CHECK(s[1].label == "01");
  CHECK(s[1].modes[0].chi == 1.0);
  CHECK(s[1].modes[1].chi == -1.2);
  CHECK(s[2].label == "10");
  CHECK(s[2].modes[0].chi == -1.0);
  CHECK(s[2].modes[1].chi == 0.8);

  const TransferFunction h = state_transfer(NetworkScenario{cc}, s[2]);
  const double w = 0.7;
  CHECK(near(h(w), single_cavity_transfer(2.0, 0.3, -1.0)(w) * single_cavity_transfer(1.5, -0.2, 0.8)(w)));
}

TEST_CASE("removing dispersive shifts") {
  Cascade cc;
  const NetworkScenario zero = NetworkScenario{cc}.without_dispersive_shifts();
  for (const auto& st : enumerate_states(zero))
    for (const auto& m : st.modes) CHECK(m.chi == 0.0);
  SingleCavity sc;
  sc.chis = {1.0, 2.0};
  for (const auto& st : enumerate_states(NetworkScenario{sc}.without_dispersive_shifts()))
    CHECK(st.modes[0].chi == 0.0);
}

}
