#include "cdpulse/error.hpp"
#include "cdpulse/harness.hpp"
#include "cdpulse/kernels.hpp"

#include "csv_writer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace cdpulse {
namespace {

using detail::CsvWriter;

ComplexSignal base_drive(const RunConfig& c, const TimeGrid& grid) {
  switch (c.drive.kind) {
    case DriveKind::Square: return square_pulse(c.drive.amplitude, c.pulse.window, grid);
    case DriveKind::Piecewise: return piecewise_constant(c.drive.segments, c.pulse.window.t_start, grid);
    case DriveKind::Pulse: break;
  }
  return evaluate_pulse(c.pulse, 0, grid);
}

// Same slot structure as drive_transfers, with every dispersive shift removed.
std::vector<TransferFunction> reference_transfers(const NetworkScenario& scenario,
                                                  std::size_t count) {
  const NetworkScenario ref = scenario.without_dispersive_shifts();
  if (const auto* cc = std::get_if<Cascade>(&ref.topology)) {
    const auto h1 = single_cavity_transfer(cc->cavity1.kappa, cc->cavity1.delta, 0.0);
    const auto h2 = single_cavity_transfer(cc->cavity2.kappa, cc->cavity2.delta, 0.0);
    return {h1, h1, h2, h2};
  }
  const auto states = enumerate_states(ref);
  return std::vector<TransferFunction>(count, state_transfer(ref, states.front()));
}

cplx inverse_gain_at_zero(std::span<const TransferFunction> transfers) {
  cplx g{1.0};
  for (const auto& tf : transfers) g *= tf.inverse(0.0);
  return g;
}

Polynomial raw_inverse_product(std::span<const TransferFunction> transfers) {
  Polynomial p = Polynomial::constant(1.0);
  for (const auto& tf : transfers) p = (1.0 / tf.numerator.coeffs().at(0)) * (p * tf.denominator);
  return p;
}

struct Drives {
  DriveSet main;
  DriveSet reference;
};

Drives synthesize(const RunConfig& c, const TimeGrid& grid) {
  Drives d;
  const ComplexSignal omega = base_drive(c, grid);
  switch (c.synthesis) {
    case SynthesisKind::None:
      d.main = {omega, std::nullopt, DriveProvenance::TrialPulse, 0.0};
      d.reference = d.main;
      return d;

    case SynthesisKind::LegacyCompensated: {
      const auto& cc = std::get<Cascade>(c.scenario.topology);
      SynthesizedDrive b = legacy_compensation(omega, cc);
      d.main = {omega, std::move(b.time_signal), DriveProvenance::LegacyCompensation, 0.0};
      d.reference = d.main;
      return d;
    }

    case SynthesisKind::CascadeCompensated: {
      const auto& cc = std::get<Cascade>(c.scenario.topology);
      CascadeDrives cd = cascade_compensation(c.pulse, cc, grid);
      const auto transfers = drive_transfers(c.scenario);
      const auto refs = reference_transfers(c.scenario, transfers.size());
      const Polynomial ref_poly = (1.0 / inverse_gain_at_zero(transfers)) * raw_inverse_product(refs);
      d.main = {cd.a.time_signal, cd.b.time_signal, DriveProvenance::CascadeCompensation,
                cd.gamma_mismatch};
      d.reference = {apply_response_polynomial(c.pulse, ref_poly, grid), cd.b.time_signal,
                     DriveProvenance::CascadeCompensation, 0.0};
      return d;
    }

    case SynthesisKind::TimeDomain:
    case SynthesisKind::FrequencyDomain: break;
  }

  const auto transfers = drive_transfers(c.scenario);
  const auto refs = reference_transfers(c.scenario, transfers.size());
  const cplx norm = inverse_gain_at_zero(transfers);
  if (c.synthesis == SynthesisKind::TimeDomain) {
    const bool purcell = std::holds_alternative<Purcell>(c.scenario.topology);
    const DerivativeExpansion expansion =
        purcell ? expansion_from_response(inverse_transfer_product(transfers))
                : cd_coefficients(drive_energies(c.scenario));
    d.main = {synthesize_time_domain(c.pulse, expansion, grid).time_signal, std::nullopt,
              DriveProvenance::TimeDomainExpansion, 0.0};
    d.reference = {apply_response_polynomial(c.pulse, (1.0 / norm) * raw_inverse_product(refs), grid),
                   std::nullopt, DriveProvenance::TimeDomainExpansion, 0.0};
  } else {
    d.main = {synthesize_frequency_domain(c.pulse, transfers, grid).time_signal, std::nullopt,
              DriveProvenance::FrequencyDomainInverse, 0.0};
    d.reference = {apply_frequency_response(omega,
                                            [&](double w) {
                                              cplx r{1.0};
                                              for (const auto& tf : refs) r *= tf.inverse(w);
                                              return r / norm;
                                            }),
                   std::nullopt, DriveProvenance::FrequencyDomainInverse, 0.0};
  }
  return d;
}

std::vector<ComplexSignal> drive_list(const DriveSet& d) {
  std::vector<ComplexSignal> out{d.a};
  if (d.b) out.push_back(*d.b);
  return out;
}

void scale_drive_set(DriveSet& d, double s) {
  d.a *= s;
  if (d.b) *d.b *= s;
}

std::string column_name(std::string s) {
  std::replace(s.begin(), s.end(), ':', '_');
  return s;
}

Json report_json(const ResidualReport& r) {
  return {{"peak_amplitude", r.peak_amplitude},
          {"final_amplitude", r.final_amplitude},
          {"residual_ratio", r.residual_ratio},
          {"ring_down_time", r.ring_down_time},
          {"ring_down_resolved", r.ring_down_resolved}};
}

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

TimeGrid simulation_grid(const RunConfig& c) {
  const double duration = c.pulse.window.duration();
  const double dt = c.simulation.dt.value_or(default_time_step(c.scenario, duration));
  double tail = 0.0;
  if (c.simulation.tail) {
    tail = *c.simulation.tail;
  } else {
    const double gamma = slowest_decay_rate(c.scenario);
    tail = gamma > 0 ? std::clamp(7.0 / gamma, duration, 40.0 * duration) : duration;
  }
  const auto n_pulse = static_cast<std::size_t>(std::max(1.0, std::ceil(duration / dt - 1e-9)));
  const double h = duration / static_cast<double>(n_pulse);
  const auto n_tail = static_cast<std::size_t>(std::ceil(tail / h - 1e-9));
  const std::size_t n = n_pulse + n_tail;
  const double t0 = c.pulse.window.t_start;
  const double t1 = n_tail == 0 ? c.pulse.window.t_end : t0 + static_cast<double>(n) * h;
  return TimeGrid(t0, t1, n + 1);
}

RunResult run_scenario(const RunConfig& config) {
  RunResult r;
  r.config = config;
  r.grid = simulation_grid(config);
  r.t_final = config.pulse.window.t_end;

  Drives drives = synthesize(config, r.grid);
  r.drives = std::move(drives.main);
  r.reference_drives = std::move(drives.reference);

  r.states = enumerate_states(config.scenario);
  const ComplexSignal* b = r.drives.b ? &*r.drives.b : nullptr;
  for (const auto& state : r.states)
    r.trajectories.push_back(integrate_state(config.scenario, state, r.drives.a, b));

  const NetworkScenario ref_scenario = config.scenario.without_dispersive_shifts();
  const auto ref_states = enumerate_states(ref_scenario);
  const ComplexSignal* ref_b = r.reference_drives.b ? &*r.reference_drives.b : nullptr;
  FieldTrajectory ref_traj =
      integrate_state(ref_scenario, ref_states.front(), r.reference_drives.a, ref_b);

  if (config.normalization.enabled) {
    const auto dl = drive_list(r.drives);
    r.scale = normalization_scale(dl, r.trajectories, config.normalization.mode,
                                  config.normalization.cap);
    scale_drive_set(r.drives, r.scale);
    scale_drive_set(r.reference_drives, r.scale);
    apply_scale(r.scale, {}, r.trajectories);
    apply_scale(r.scale, {}, std::span(&ref_traj, 1));
  }

  const double t_peak = peak_time(r.drives.a);
  for (const auto& t : r.trajectories) {
    r.reports.push_back(residual_report(t, r.t_final, t_peak));
    const auto& rep = r.reports.back();
    r.worst.peak_amplitude = std::max(r.worst.peak_amplitude, rep.peak_amplitude);
    r.worst.final_amplitude = std::max(r.worst.final_amplitude, rep.final_amplitude);
    r.worst.residual_ratio = std::max(r.worst.residual_ratio, rep.residual_ratio);
    r.worst.ring_down_time = std::max(r.worst.ring_down_time, rep.ring_down_time);
    r.worst.ring_down_resolved = r.worst.ring_down_resolved && rep.ring_down_resolved;
  }
  {
    SynthesizedDrive sd{r.drives.a, std::nullopt, r.drives.provenance};
    r.drive_boundary_ratio = sd.boundary_ratio(config.pulse.window);
  }

  if (r.states.size() >= 2) {
    std::vector<ComplexSignal> outputs;
    std::vector<std::string> labels;
    for (const auto& t : r.trajectories) {
      outputs.push_back(t.output);
      labels.push_back(t.state_label);
    }
    r.decomposition = decompose_output(outputs, std::move(labels), ref_traj.output);
    r.homodyne = optimize_homodyne_angle(*r.decomposition, r.t_final);
    if (config.detection.kind != DetectionKind::Homodyne)
      r.synodyne = optimize_synodyne_angle(*r.decomposition, r.t_final, config.detection.objective);
  }

  if (config.baseline && config.synthesis != SynthesisKind::None &&
      config.synthesis != SynthesisKind::LegacyCompensated) {
    RunConfig base = config;
    // The cascade comparison keeps the back-port compensation so that 01 and
    // 10 stay indistinguishable; only the ring-down shortening is removed.
    base.synthesis = config.synthesis == SynthesisKind::CascadeCompensated
                         ? SynthesisKind::LegacyCompensated
                         : SynthesisKind::None;
    base.baseline = false;
    r.baseline = std::make_unique<RunResult>(run_scenario(base));
  }
  return r;
}

Json run_summary(const RunResult& r) {
  const RunConfig& c = r.config;
  Json s;
  s["name"] = c.name;
  s["version"] = kVersion;
  s["config_hash"] = config_hash(c);
  s["topology"] = c.scenario.topology_name();
  s["synthesis"] = synthesis_name(c.synthesis);
  s["provenance"] = provenance_name(r.drives.provenance);
  s["pulse"] = {{"family", c.pulse.family_name()},
                {"t_start", c.pulse.window.t_start},
                {"t_end", c.pulse.window.t_end},
                {"amplitude", c.pulse.amplitude}};
  s["grid"] = {{"t_start", r.grid.t_start()},
               {"t_end", r.grid.t_end()},
               {"dt", r.grid.dt()},
               {"samples", r.grid.size()}};
  s["normalization"] = {{"enabled", c.normalization.enabled},
                        {"mode", normalization_name(c.normalization.mode)},
                        {"cap", c.normalization.cap},
                        {"scale", r.scale}};
  s["drive_boundary_ratio"] = r.drive_boundary_ratio;
  s["drive_energy"] = r.drives.a.energy() + (r.drives.b ? r.drives.b->energy() : 0.0);
  if (c.synthesis == SynthesisKind::CascadeCompensated) s["gamma_mismatch"] = r.drives.gamma_mismatch;
  s["simd_kernels"] = kernels::active_kernels().name;
  Json states = Json::array();
  for (std::size_t j = 0; j < r.states.size(); ++j) {
    Json st;
    st["label"] = r.states[j].label;
    Json modes = Json::array();
    for (const auto& m : r.states[j].modes)
      modes.push_back({{"label", m.label},
                       {"chi", m.chi},
                       {"energy", Json::array({m.energy.real(), m.energy.imag()})}});
    st["modes"] = modes;
    st["residual"] = report_json(r.reports[j]);
    states.push_back(st);
  }
  s["states"] = states;
  s["worst"] = report_json(r.worst);
  if (r.homodyne) {
    s["homodyne"] = {{"alpha", r.homodyne->alpha},
                     {"worst_pair_q", r.homodyne->worst_pair_q},
                     {"worst_pair", Json::array({r.states[r.homodyne->pair_i].label,
                                                 r.states[r.homodyne->pair_j].label})}};
  }
  if (r.synodyne) {
    s["synodyne"] = {{"worst_pair_q", r.synodyne->worst_pair_q},
                     {"pointwise_q", r.synodyne->pointwise_q},
                     {"constant_q", r.synodyne->constant_q},
                     {"constant_schedule", r.synodyne->constant_schedule},
                     {"objective", c.detection.objective == SynodyneObjective::Absolute ? "abs" : "signed"}};
    if (r.homodyne && r.homodyne->worst_pair_q > 0)
      s["synodyne"]["ratio_to_homodyne"] = finite_or_null(r.synodyne->worst_pair_q / r.homodyne->worst_pair_q);
  }
  if (r.baseline) s["baseline"] = run_summary(*r.baseline);
  return s;
}

void write_run_artifacts(const RunResult& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "summary.json");
    if (!out) throw Error("cannot write " + (dir / "summary.json").string());
    out << run_summary(r).dump(2) << '\n';
  }
  const auto t = r.grid.times();
  {
    std::vector<std::string> header{"t", "A_re", "A_im"};
    if (r.drives.b) header.insert(header.end(), {"B_re", "B_im"});
    header.insert(header.end(), {"ref_A_re", "ref_A_im"});
    CsvWriter w(dir / "drive.csv", header);
    for (std::size_t i = 0; i < t.size(); ++i) {
      w.cell(t[i]).cell(r.drives.a[i].real()).cell(r.drives.a[i].imag());
      if (r.drives.b) w.cell((*r.drives.b)[i].real()).cell((*r.drives.b)[i].imag());
      w.cell(r.reference_drives.a[i].real()).cell(r.reference_drives.a[i].imag());
      w.end_row();
    }
  }
  for (const auto& traj : r.trajectories) {
    std::vector<std::string> header{"t"};
    for (const auto& m : traj.mode_labels) {
      header.push_back(column_name(m) + "_re");
      header.push_back(column_name(m) + "_im");
    }
    header.insert(header.end(), {"out_re", "out_im"});
    CsvWriter w(dir / ("trajectory_" + column_name(traj.state_label) + ".csv"), header);
    for (std::size_t i = 0; i < t.size(); ++i) {
      w.cell(t[i]);
      for (const auto& c : traj.intracavity) w.cell(c[i].real()).cell(c[i].imag());
      w.cell(traj.output[i].real()).cell(traj.output[i].imag()).end_row();
    }
  }
  if (r.decomposition) {
    const auto& d = *r.decomposition;
    const std::size_t n = r.grid.index_at_or_before(r.t_final) + 1;
    std::vector<std::string> header{"t", "common_re", "common_im"};
    for (const auto& l : d.labels) {
      header.push_back("D_" + l + "_re");
      header.push_back("D_" + l + "_im");
      header.push_back("hom_" + l);
      if (r.synodyne) header.push_back("syn_" + l);
    }
    if (r.synodyne) header.insert(header.end(), {"syn_alpha", "syn_separation"});
    std::vector<std::vector<double>> hom, syn;
    for (std::size_t j = 0; j < d.states(); ++j) {
      const ComplexSignal z = d.reconstruct(j);
      hom.push_back(homodyne_trace(z, r.homodyne->alpha));
      if (r.synodyne) syn.push_back(synodyne_trace(z, r.synodyne->alpha));
    }
    CsvWriter w(dir / "traces.csv", header);
    for (std::size_t i = 0; i < n; ++i) {
      w.cell(t[i]).cell(d.common[i].real()).cell(d.common[i].imag());
      for (std::size_t j = 0; j < d.states(); ++j) {
        w.cell(d.offsets[j][i].real()).cell(d.offsets[j][i].imag()).cell(hom[j][i]);
        if (r.synodyne) w.cell(syn[j][i]);
      }
      if (r.synodyne) w.cell(r.synodyne->alpha[i]).cell(r.synodyne->separation[i]);
      w.end_row();
    }
  }
  if (r.baseline) write_run_artifacts(*r.baseline, dir / "baseline");
}

}  // namespace cdpulse
