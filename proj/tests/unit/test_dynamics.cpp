#include "doctest.h"
#include "test_support.hpp"

#include <cmath>
#include <vector>

using namespace cdpulse;
using namespace cdpulse::testing;

namespace {

Cascade fig5_cascade() {
  Cascade cc;
  cc.cavity1 = {2.0, 0.3, {1.0, -1.0}};
  cc.cavity2 = {1.5, -0.2, {0.8, -1.2}};
  return cc;
}

ComplexSignal zero_drive(const TimeGrid& g) { return ComplexSignal(g); }

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("free decay from an initial field") {
  const cplx e{-1.0, 2.3};
  const StateMode mode = mode_from_energy(e);
  const TimeGrid g(0.0, 3.0, 601);
  const cplx c0{0.4, -0.7};
  for (Integrator method : {Integrator::Exponential, Integrator::RK4}) {
    const auto traj = integrate_single_cavity(zero_drive(g), mode, method, c0);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
      worst = std::max(worst, std::abs(traj.intracavity[0][i] - c0 * std::exp(e * g.at(i))));
    CHECK(worst < (method == Integrator::Exponential ? 1e-13 : 1e-9));
  }
}

TEST_CASE("vacuum initial condition") {
  const auto traj = integrate_single_cavity(evaluate_pulse(sine_pulse(4), 0, TimeGrid(0.0, 1.0, 101)),
                                            mode_from_energy({-1.0, 0.5}));
  CHECK(traj.intracavity[0][0] == cplx{0.0});
  CHECK(traj.output[0] == cplx{0.0});
}

TEST_CASE("constant drive reaches the zero-frequency transfer") {
  const double kappa = 2.0, delta = 0.3, chi = 2.0;
  SingleCavity sc{kappa, delta, {chi}, ChiMode::Qubits, {}};
  const auto states = enumerate_states(NetworkScenario{sc});
  const TimeGrid g(0.0, 30.0, 6001);
  const ComplexSignal a = square_pulse(1.0, {0.0, 30.0}, g);
  const auto traj = integrate_single_cavity(a, states[0].modes[0]);
  const cplx ratio = traj.output[g.size() - 1] / a[g.size() - 1];
  CHECK(std::abs(ratio - single_cavity_transfer(kappa, delta, chi)(0.0)) < 1e-9);
}

TEST_CASE("one-mode corrected drive keeps the field proportional to the pulse") {
  const cplx e{-1.0, 2.3};
  const TrialPulse pulse = sine_pulse(4);
  const TimeGrid g(0.0, 1.0, 2001);
  const auto drive = synthesize_time_domain(pulse, cd_coefficients(std::vector<cplx>{e}), g);
  const StateMode mode = mode_from_energy(e);
  const auto traj = integrate_single_cavity(drive.time_signal, mode);
  const ComplexSignal expected = (std::sqrt(mode.kappa) / e) * evaluate_pulse(pulse, 0, g);
  CHECK(relative_l2(traj.intracavity[0], expected) < 1e-6);
  CHECK(std::abs(traj.intracavity[0][g.size() - 1]) < 1e-9);
}

TEST_CASE("superadiabatic coefficients for small cases") {
  const std::vector<cplx> one{cplx{-2.0, 1.0}};
  auto c = superadiabatic_coefficients(one, 0);
  REQUIRE(c.size() == 1);
  CHECK(std::abs(c[0] - 1.0 / one[0]) < 1e-15);

  const std::vector<cplx> two{cplx{1.0}, cplx{2.0}};
  c = superadiabatic_coefficients(two, 0);
  REQUIRE(c.size() == 2);
  CHECK(std::abs(c[0] - 1.0) < 1e-15);
  CHECK(std::abs(c[1] - 0.5) < 1e-15);
}

TEST_CASE("purcell without coupling leaves the filter empty") {
  Purcell pc;
  pc.G = 0.0;
  const auto states = enumerate_states(NetworkScenario{pc});
  const TimeGrid g(0.0, 1.0, 1001);
  const auto traj = integrate_purcell(evaluate_pulse(sine_pulse(4), 0, g), pc, states[0]);
  REQUIRE(traj.intracavity.size() == 2);
  CHECK(traj.intracavity[1].max_abs() == 0.0);
  CHECK(traj.intracavity[0].max_abs() > 0.0);
  // Lossless measurement cavity: the field keeps ringing after the pulse.
  CHECK(std::abs(traj.intracavity[0][g.size() - 1]) > 0.01 * traj.intracavity[0].max_abs());
}

TEST_CASE("exponential integrator agrees with RK4 on every topology") {
  const TimeGrid g(0.0, 2.0, 4001);
  const ComplexSignal a = evaluate_pulse(gaussian_pulse(0.15, 0.5), 0, g);
  const ComplexSignal b = (0.3 * kI) * evaluate_pulse(sine_pulse(3), 0, g);
  Purcell pc;
  pc.G = 5.0;
  pc.delta_f = 3.0;
  SingleCavity sc;
  sc.chis = {1.0, 0.4};
  for (const NetworkScenario& scenario :
       {NetworkScenario{sc}, NetworkScenario{pc}, NetworkScenario{fig5_cascade()}}) {
    for (const auto& state : enumerate_states(scenario)) {
      const auto ex = integrate_state(scenario, state, a, &b, Integrator::Exponential);
      const auto rk = integrate_state(scenario, state, a, &b, Integrator::RK4);
      for (std::size_t m = 0; m < ex.intracavity.size(); ++m)
        CHECK(relative_l2(rk.intracavity[m], ex.intracavity[m]) < 1e-6);
      CHECK(relative_l2(rk.output, ex.output) < 1e-6);
    }
  }
}

TEST_CASE("output equals the transfer function applied to the drive") {
  const TimeGrid g(0.0, 12.0, 12001);
  const ComplexSignal a = evaluate_pulse(sine_pulse(6, 0.0, 1.0), 0, g);
  const Cascade cc = fig5_cascade();
  const NetworkScenario sc{cc};
  for (const auto& state : enumerate_states(sc)) {
    const auto traj = integrate_state(sc, state, a, nullptr);
    const TransferFunction h = state_transfer(sc, state);
    const ComplexSignal expected = apply_frequency_response(a, [&](double w) { return h(w); });
    CHECK(relative_l2(traj.output, expected) < 1e-3);
  }
}

TEST_CASE("cascade back port enters the second cavity") {
  Cascade cc = fig5_cascade();
  const auto states = enumerate_states(NetworkScenario{cc});
  const TimeGrid g(0.0, 1.0, 501);
  const ComplexSignal b = evaluate_pulse(sine_pulse(3), 0, g);
  const auto traj = integrate_cascade(zero_drive(g), b, cc, states[0]);
  CHECK(traj.intracavity[0].max_abs() == 0.0);
  CHECK(traj.intracavity[1].max_abs() > 0.0);
}

TEST_CASE("compensated cascade drives make the mixed states indistinguishable") {
  const Cascade cc = fig5_cascade();
  const TrialPulse pulse = sine_pulse(8);
  const TimeGrid g(0.0, 1.0, 4001);
  const auto drives = cascade_compensation(pulse, cc, g);
  const auto states = enumerate_states(NetworkScenario{cc});
  std::vector<FieldTrajectory> traj;
  for (const auto& s : states) traj.push_back(integrate_cascade(drives.a.time_signal, drives.b.time_signal, cc, s));
  CHECK(relative_l2(traj[1].output, traj[2].output) < 1e-4);
  CHECK(relative_l2(traj[0].output, traj[3].output) > 1e-2);
  for (const auto& t : traj) CHECK(residual_report(t, 1.0, 0.5).residual_ratio < 1e-4);
}

TEST_CASE("residual report") {
  const TimeGrid g(0.0, 10.0, 10001);
  const StateMode mode = mode_from_energy({-1.0, 0.0});
  const auto zero = residual_report(integrate_single_cavity(zero_drive(g), mode), 1.0, 0.0);
  CHECK(zero.peak_amplitude == 0.0);
  CHECK(zero.residual_ratio == 0.0);
  CHECK(zero.ring_down_time == 0.0);

  const ComplexSignal sq = square_pulse(1.0, {0.0, 1.0}, g);
  const auto rep = residual_report(integrate_single_cavity(sq, mode), 1.0, peak_time(sq));
  CHECK(rep.ring_down_resolved);
  CHECK(rep.residual_ratio > 0.5);
  // About ln(100) / (kappa / 2) after the pulse ends.
  CHECK(rep.ring_down_time > 1.0 + 2.0 * 2.0 / mode.kappa);
  CHECK(rep.ring_down_time < 1.0 + 6.0 * 2.0 / mode.kappa);

  const TimeGrid short_grid(0.0, 1.5, 1501);
  const auto cut = residual_report(
      integrate_single_cavity(square_pulse(1.0, {0.0, 1.0}, short_grid), mode), 1.0, 0.0);
  CHECK_FALSE(cut.ring_down_resolved);
}

TEST_CASE("baseline drives") {
  const TimeGrid g(0.0, 2.0, 201);
  const ComplexSignal sq = square_pulse(cplx{0.0, 2.0}, {0.5, 1.5}, g);
  CHECK(sq[48] == cplx{0.0});
  CHECK(sq[52] == cplx{0.0, 2.0});
  CHECK(sq[148] == cplx{0.0, 2.0});
  CHECK(sq[152] == cplx{0.0});

  const std::vector<PulseSegment> segs{{0.2, 1.0}, {0.3, -0.5}, {0.1, 0.25}, {0.4, 0.0}};
  const ComplexSignal pw = piecewise_constant(segs, 0.1, g);
  CHECK(pw[5] == cplx{0.0});
  CHECK(pw[20] == cplx{1.0});
  CHECK(pw[45] == cplx{-0.5});
  CHECK(pw[65] == cplx{0.25});
  CHECK(pw[90] == cplx{0.0});
  CHECK(pw[150] == cplx{0.0});
}

TEST_CASE("default time step") {
  SingleCavity sc;
  sc.kappa = 2.0;
  sc.chis = {60.0};
  CHECK(default_time_step(NetworkScenario{sc}, 1.0) == doctest::Approx(0.01 / std::abs(cplx{-1.0, 60.0})));
  sc.chis = {0.1};
  CHECK(default_time_step(NetworkScenario{sc}, 1.0) == doctest::Approx(1.0 / 4000.0));
  Purcell pc;
  CHECK(default_time_step(NetworkScenario{pc}, 1.0) <= 0.01 / 20.0);
  CHECK(slowest_decay_rate(NetworkScenario{sc}) == doctest::Approx(1.0));
}

TEST_CASE("integration rejects mismatched input grids") {
  const Cascade cc = fig5_cascade();
  const auto states = enumerate_states(NetworkScenario{cc});
  CHECK_THROWS_AS(integrate_cascade(ComplexSignal(TimeGrid(0.0, 1.0, 11)), ComplexSignal(TimeGrid(0.0, 1.0, 12)),
                                    cc, states[0]),
                  Error);
}

}
