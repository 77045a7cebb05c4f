#include "cdpulse/error.hpp"
#include "cdpulse/harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <regex>
#include <set>

namespace cdpulse {
namespace {

constexpr double kMHzLinear = 2.0 * std::numbers::pi;

std::string join(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

std::string index_path(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

double units_factor(const Json& units, const std::string& path) {
  if (!units.is_string()) throw ConfigError(path, "units must be a string");
  const auto u = units.get<std::string>();
  if (u == "rad_per_us") return 1.0;
  if (u == "MHz_linear") return kMHzLinear;
  if (u == "MHz_angular") return 1.0;
  throw ConfigError(path, "unknown units '" + u + "' (expected rad_per_us, MHz_linear or MHz_angular)");
}

// Object reader that tracks the field path and rejects unknown keys.
class Section {
 public:
  Section(const Json& obj, std::string path, double rate_factor)
      : obj_(obj), path_(std::move(path)), rate_factor_(rate_factor) {
    if (!obj_.is_object()) throw ConfigError(path_, "expected an object");
  }

  bool has(const std::string& key) const { return obj_.contains(key) && !obj_.at(key).is_null(); }
  const Json& raw(const std::string& key) {
    used_.insert(key);
    if (!obj_.contains(key)) throw ConfigError(join(path_, key), "missing required field");
    return obj_.at(key);
  }
  std::string path(const std::string& key) const { return join(path_, key); }
  double rate_factor() const { return rate_factor_; }
  /// Accepts an absent optional field.
  void skip(const std::string& key) { used_.insert(key); }

  double number(const std::string& key) {
    const Json& v = raw(key);
    if (!v.is_number()) throw ConfigError(path(key), "expected a number");
    return v.get<double>();
  }
  double number(const std::string& key, double fallback) {
    if (!has(key)) {
      used_.insert(key);
      return fallback;
    }
    return number(key);
  }
  std::optional<double> optional_number(const std::string& key) {
    used_.insert(key);
    if (!has(key)) return std::nullopt;
    return number(key);
  }
  int integer(const std::string& key, int fallback) {
    if (!has(key)) {
      used_.insert(key);
      return fallback;
    }
    const Json& v = raw(key);
    if (!v.is_number_integer()) throw ConfigError(path(key), "expected an integer");
    return v.get<int>();
  }
  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) {
      used_.insert(key);
      return fallback;
    }
    const Json& v = raw(key);
    if (!v.is_boolean()) throw ConfigError(path(key), "expected true or false");
    return v.get<bool>();
  }
  std::string string(const std::string& key, const std::string& fallback) {
    if (!has(key)) {
      used_.insert(key);
      return fallback;
    }
    const Json& v = raw(key);
    if (!v.is_string()) throw ConfigError(path(key), "expected a string");
    return v.get<std::string>();
  }

  /// A rate: plain number in the document's units or {"value", "units"}.
  double rate_value(const Json& v, const std::string& p) const {
    if (v.is_number()) return v.get<double>() * rate_factor_;
    if (v.is_object()) {
      Section s(v, p, rate_factor_);
      const double value = s.number("value");
      const double f = units_factor(s.raw("units"), s.path("units"));
      s.finish();
      return value * f;
    }
    throw ConfigError(p, "expected a rate (number or {\"value\", \"units\"})");
  }
  double rate(const std::string& key) { return rate_value(raw(key), path(key)); }
  double rate(const std::string& key, double fallback_rad_per_us) {
    if (!has(key)) {
      used_.insert(key);
      return fallback_rad_per_us;
    }
    return rate(key);
  }
  std::vector<double> rates(const std::string& key) {
    const Json& v = raw(key);
    if (!v.is_array()) throw ConfigError(path(key), "expected an array");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(rate_value(v[i], index_path(path(key), i)));
    return out;
  }
  cplx complex_rate(const std::string& key, cplx fallback) {
    if (!has(key)) {
      used_.insert(key);
      return fallback;
    }
    const Json& v = raw(key);
    if (v.is_array()) {
      if (v.size() != 2) throw ConfigError(path(key), "complex value must be [re, im]");
      return {rate_value(v[0], index_path(path(key), 0)), rate_value(v[1], index_path(path(key), 1))};
    }
    return {rate_value(v, path(key)), 0.0};
  }

  void finish() const {
    for (const auto& [k, _] : obj_.items())
      if (!used_.count(k)) throw ConfigError(join(path_, k), "unknown field");
  }

 private:
  const Json& obj_;
  std::string path_;
  double rate_factor_;
  std::set<std::string> used_;
};

cplx parse_complex(const Json& v, const std::string& path) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ConfigError(path, "expected a number or [re, im]");
}

Json complex_json(cplx z) { return Json::array({z.real(), z.imag()}); }

ChiMode parse_chi_mode(const std::string& s, const std::string& path) {
  if (s == "qubits") return ChiMode::Qubits;
  if (s == "states") return ChiMode::States;
  throw ConfigError(path, "chi_mode must be 'qubits' or 'states'");
}

std::vector<int> parse_signs(Section& s, std::size_t n_chis, ChiMode mode) {
  s.skip("signs");
  if (!s.has("signs")) return {};
  const Json& v = s.raw("signs");
  if (!v.is_array()) throw ConfigError(s.path("signs"), "expected an array of +1/-1");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer() || std::abs(v[i].get<int>()) != 1)
      throw ConfigError(index_path(s.path("signs"), i), "sign must be +1 or -1");
    out.push_back(v[i].get<int>());
  }
  if (!out.empty() && mode == ChiMode::Qubits && out.size() != n_chis)
    throw ConfigError(s.path("signs"), "needs one sign per qubit");
  return out;
}

void check_chis(const std::vector<double>& chis, ChiMode mode, const std::string& path) {
  if (chis.empty()) throw ConfigError(path, "at least one dispersive shift is required");
  if (mode == ChiMode::Qubits && chis.size() > 10) throw ConfigError(path, "at most 10 qubits");
}

void check_positive(double v, const std::string& path) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(path, "must be positive");
}

NetworkScenario parse_scenario(Section s) {
  const std::string topology = s.string("topology", "");
  NetworkScenario out;
  if (topology == "single_cavity") {
    SingleCavity sc;
    sc.kappa = s.rate("kappa");
    check_positive(sc.kappa, s.path("kappa"));
    sc.delta = s.rate("delta", 0.0);
    sc.chis = s.rates("chis");
    sc.chi_mode = parse_chi_mode(s.string("chi_mode", "qubits"), s.path("chi_mode"));
    check_chis(sc.chis, sc.chi_mode, s.path("chis"));
    sc.signs = parse_signs(s, sc.chis.size(), sc.chi_mode);
    out.topology = sc;
  } else if (topology == "purcell") {
    Purcell pc;
    pc.G = s.complex_rate("G", pc.G);
    pc.delta_c = s.rate("delta_c", pc.delta_c);
    pc.delta_f = s.rate("delta_f", pc.delta_f);
    pc.kappa = s.rate("kappa");
    check_positive(pc.kappa, s.path("kappa"));
    pc.chis = s.rates("chis");
    pc.chi_mode = parse_chi_mode(s.string("chi_mode", "qubits"), s.path("chi_mode"));
    check_chis(pc.chis, pc.chi_mode, s.path("chis"));
    pc.signs = parse_signs(s, pc.chis.size(), pc.chi_mode);
    pc.cavity1_loss = s.rate("cavity1_loss", 0.0);
    if (pc.cavity1_loss < 0) throw ConfigError(s.path("cavity1_loss"), "must be non-negative");
    if (pc.G == cplx{0.0}) throw ConfigError(s.path("G"), "coupling must be nonzero");
    out.topology = pc;
  } else if (topology == "cascade") {
    Cascade cc;
    auto parse_cavity = [&](const char* key, CavityParams& cav) {
      const Json& obj = s.raw(key);
      const std::string p = s.path(key);
      if (!obj.is_object()) throw ConfigError(p, "expected an object");
      Section c(obj, p, s.rate_factor());
      cav.kappa = c.rate("kappa");
      check_positive(cav.kappa, c.path("kappa"));
      cav.delta = c.rate("delta", 0.0);
      const auto chi = c.rates("chi");
      if (chi.size() != 2) throw ConfigError(c.path("chi"), "needs two shifts [qubit in 0, qubit in 1]");
      cav.chi = {chi[0], chi[1]};
      c.finish();
    };
    parse_cavity("cavity1", cc.cavity1);
    parse_cavity("cavity2", cc.cavity2);
    out.topology = cc;
  } else {
    throw ConfigError(s.path("topology"), "must be single_cavity, purcell or cascade");
  }
  s.finish();
  return out;
}

TrialPulse parse_pulse(Section s) {
  TrialPulse p;
  const double duration = s.number("duration", 1.0);
  check_positive(duration, s.path("duration"));
  const double t0 = s.number("t_start", 0.0);
  p.window = {t0, t0 + duration};
  p.amplitude = s.number("amplitude", 1.0);
  const std::string family = s.string("family", "sine_power");
  if (family == "sine_power") {
    const int power = s.integer("p", 8);
    if (power < 1) throw ConfigError(s.path("p"), "must be >= 1");
    p.family = SinePower{power};
  } else if (family == "gaussian") {
    TruncatedGaussian g;
    g.sigma = s.number("sigma", duration / 8.0);
    check_positive(g.sigma, s.path("sigma"));
    g.center = s.number("center", t0 + duration / 2.0);
    p.family = g;
  } else {
    throw ConfigError(s.path("family"), "must be sine_power or gaussian");
  }
  s.finish();
  return p;
}

DriveSpec parse_drive(Section s) {
  DriveSpec d;
  const std::string kind = s.string("kind", "pulse");
  if (kind == "pulse") {
    d.kind = DriveKind::Pulse;
  } else if (kind == "square") {
    d.kind = DriveKind::Square;
    if (s.has("amplitude")) d.amplitude = parse_complex(s.raw("amplitude"), s.path("amplitude"));
  } else if (kind == "piecewise") {
    d.kind = DriveKind::Piecewise;
    const Json& segs = s.raw("segments");
    const std::string sp = s.path("segments");
    if (!segs.is_array() || segs.empty()) throw ConfigError(sp, "expected a nonempty array");
    for (std::size_t i = 0; i < segs.size(); ++i) {
      Section seg(segs[i], index_path(sp, i), 1.0);
      PulseSegment ps;
      ps.duration = seg.number("duration");
      if (ps.duration < 0) throw ConfigError(seg.path("duration"), "must be non-negative");
      ps.value = parse_complex(seg.raw("value"), seg.path("value"));
      seg.finish();
      d.segments.push_back(ps);
    }
  } else {
    throw ConfigError(s.path("kind"), "must be pulse, square or piecewise");
  }
  if (d.kind != DriveKind::Square && s.has("amplitude"))
    throw ConfigError(s.path("amplitude"), "only valid for square drives");
  if (d.kind != DriveKind::Piecewise && s.has("segments"))
    throw ConfigError(s.path("segments"), "only valid for piecewise drives");
  s.finish();
  return d;
}

SynthesisKind parse_synthesis(const std::string& v, const std::string& path) {
  if (v == "none") return SynthesisKind::None;
  if (v == "time_domain") return SynthesisKind::TimeDomain;
  if (v == "frequency_domain") return SynthesisKind::FrequencyDomain;
  if (v == "cascade_compensated") return SynthesisKind::CascadeCompensated;
  if (v == "legacy_compensated") return SynthesisKind::LegacyCompensated;
  throw ConfigError(path,
                    "must be none, time_domain, frequency_domain, cascade_compensated or "
                    "legacy_compensated");
}

DetectionKind parse_detection_kind(const std::string& v, const std::string& path) {
  if (v == "homodyne") return DetectionKind::Homodyne;
  if (v == "synodyne") return DetectionKind::Synodyne;
  if (v == "both") return DetectionKind::Both;
  throw ConfigError(path, "must be homodyne, synodyne or both");
}

NormalizationMode parse_normalization_mode(const std::string& v, const std::string& path) {
  if (v == "cavity") return NormalizationMode::MaxIntracavity;
  if (v == "power") return NormalizationMode::InputPower;
  throw ConfigError(path, "must be cavity or power");
}

double sweep_factor(const Json& doc, const std::string& path, double rate_factor);

std::vector<SweepAxis> parse_sweep(const Json& v, const std::string& path, const Json& doc,
                                   double rate_factor) {
  std::vector<SweepAxis> axes;
  if (v.is_null()) return axes;
  if (!v.is_array()) throw ConfigError(path, "expected an array of axes");
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string ap = index_path(path, i);
    Section s(v[i], ap, 1.0);
    SweepAxis axis;
    axis.path = s.string("path", "");
    if (axis.path.empty()) throw ConfigError(s.path("path"), "missing parameter path");
    if (s.has("values")) {
      const Json& vals = s.raw("values");
      if (!vals.is_array()) throw ConfigError(s.path("values"), "expected an array");
      for (std::size_t k = 0; k < vals.size(); ++k) {
        if (!vals[k].is_number()) throw ConfigError(index_path(s.path("values"), k), "expected a number");
        axis.values.push_back(vals[k].get<double>());
      }
    } else {
      const double start = s.number("start");
      const double stop = s.number("stop");
      const int count = s.integer("count", 0);
      if (count < 1) throw ConfigError(s.path("count"), "must be >= 1");
      const std::string spacing = s.string("spacing", "linear");
      if (spacing != "linear" && spacing != "log")
        throw ConfigError(s.path("spacing"), "must be linear or log");
      if (spacing == "log" && !(start > 0 && stop > 0))
        throw ConfigError(ap, "log spacing needs positive start and stop");
      for (int k = 0; k < count; ++k) {
        const double u = count == 1 ? 0.0 : static_cast<double>(k) / (count - 1);
        axis.values.push_back(spacing == "linear" ? start + u * (stop - start)
                                                  : start * std::pow(stop / start, u));
      }
    }
    if (axis.values.empty()) throw ConfigError(ap, "sweep range is empty");
    s.finish();
    double f = 1.0;
    try {
      f = sweep_factor(doc, axis.path, rate_factor);
    } catch (const ConfigError& e) {
      throw ConfigError(s.path("path"), e.what());
    }
    for (auto& x : axis.values) x *= f;
    axes.push_back(std::move(axis));
  }
  return axes;
}

struct PathStep {
  std::string key;
  std::optional<std::size_t> index;
};

std::vector<PathStep> split_path(const std::string& path) {
  static const std::regex step(R"(^([A-Za-z_][A-Za-z0-9_]*)(?:\[(\d+)\])?$)");
  std::vector<PathStep> out;
  std::size_t begin = 0;
  while (begin <= path.size()) {
    const std::size_t dot = path.find('.', begin);
    const std::string part = path.substr(begin, dot == std::string::npos ? std::string::npos : dot - begin);
    std::smatch m;
    if (!std::regex_match(part, m, step)) throw ConfigError(path, "malformed parameter path");
    PathStep ps{m[1].str(), std::nullopt};
    if (m[2].matched) ps.index = static_cast<std::size_t>(std::stoul(m[2].str()));
    out.push_back(std::move(ps));
    if (dot == std::string::npos) break;
    begin = dot + 1;
  }
  return out;
}

Json& resolve(Json& doc, const std::string& path) {
  Json* node = &doc;
  for (const auto& step : split_path(path)) {
    if (!node->is_object() || !node->contains(step.key))
      throw ConfigError(path, "parameter path does not resolve ('" + step.key + "' not found)");
    node = &(*node)[step.key];
    if (step.index) {
      if (!node->is_array() || *step.index >= node->size())
        throw ConfigError(path, "parameter path index out of range");
      node = &(*node)[*step.index];
    }
  }
  const bool rate_object = node->is_object() && node->contains("value") && (*node)["value"].is_number();
  if (!rate_object && !node->is_number()) throw ConfigError(path, "parameter path does not name a number");
  return *node;
}

// Factor converting sweep values at `path` to the canonical units.
double sweep_factor(const Json& doc, const std::string& path, double rate_factor) {
  Json copy = doc;
  const Json& node = resolve(copy, path);
  if (node.is_object()) return units_factor(node.at("units"), path + ".units");
  const bool is_rate = path.rfind("scenario.", 0) == 0 && path.find(".signs") == std::string::npos;
  return is_rate ? rate_factor : 1.0;
}

}  // namespace

const char* synthesis_name(SynthesisKind k) {
  switch (k) {
    case SynthesisKind::None: return "none";
    case SynthesisKind::TimeDomain: return "time_domain";
    case SynthesisKind::FrequencyDomain: return "frequency_domain";
    case SynthesisKind::CascadeCompensated: return "cascade_compensated";
    case SynthesisKind::LegacyCompensated: return "legacy_compensated";
  }
  return "none";
}

const char* detection_name(DetectionKind k) {
  switch (k) {
    case DetectionKind::Homodyne: return "homodyne";
    case DetectionKind::Synodyne: return "synodyne";
    case DetectionKind::Both: return "both";
  }
  return "both";
}

Json with_override(const Json& doc, const std::string& path, double value) {
  Json out = doc;
  Json& node = resolve(out, path);
  if (node.is_object()) node["value"] = value;
  else node = value;
  return out;
}

RunConfig parse_config(const Json& doc) {
  Section root(doc, "", 1.0);
  double rate_factor = 1.0;
  if (root.has("units")) {
    Section u(root.raw("units"), "units", 1.0);
    std::string rates = u.string("rates", "rad_per_us");
    // "MHz" is ambiguous about 2 pi; the angular flag settles it.
    if (rates == "MHz") rates = u.boolean("angular", false) ? "MHz_angular" : "MHz_linear";
    else if (u.has("angular")) throw ConfigError("units.angular", "only valid with rates = \"MHz\"");
    rate_factor = units_factor(Json(rates), "units.rates");
    u.finish();
  } else {
    root.skip("units");
  }

  RunConfig c;
  c.name = root.string("name", "run");
  root.string("description", "");
  c.scenario = parse_scenario(Section(root.raw("scenario"), "scenario", rate_factor));
  c.pulse = parse_pulse(Section(root.has("pulse") ? root.raw("pulse") : Json::object(), "pulse", 1.0));
  if (root.has("drive")) c.drive = parse_drive(Section(root.raw("drive"), "drive", 1.0));
  else root.skip("drive");
  c.synthesis = parse_synthesis(root.string("synthesis", "time_domain"), "synthesis");
  c.baseline = root.boolean("baseline", false);

  if (root.has("normalization")) {
    const Json& n = root.raw("normalization");
    if (n.is_string() && n.get<std::string>() == "none") {
      c.normalization.enabled = false;
    } else {
      Section s(n, "normalization", 1.0);
      c.normalization.mode = parse_normalization_mode(s.string("mode", "cavity"), s.path("mode"));
      c.normalization.cap = s.number("cap", 1.0);
      check_positive(c.normalization.cap, s.path("cap"));
      s.finish();
    }
  } else {
    root.skip("normalization");
  }

  if (root.has("detection")) {
    Section s(root.raw("detection"), "detection", 1.0);
    c.detection.kind = parse_detection_kind(s.string("mode", "both"), s.path("mode"));
    const std::string obj = s.string("synodyne_objective", "abs");
    if (obj == "abs") c.detection.objective = SynodyneObjective::Absolute;
    else if (obj == "signed") c.detection.objective = SynodyneObjective::Signed;
    else throw ConfigError(s.path("synodyne_objective"), "must be abs or signed");
    s.finish();
  } else {
    root.skip("detection");
  }

  if (root.has("simulation")) {
    Section s(root.raw("simulation"), "simulation", 1.0);
    c.simulation.dt = s.optional_number("dt");
    c.simulation.tail = s.optional_number("tail");
    if (c.simulation.dt) check_positive(*c.simulation.dt, s.path("dt"));
    if (c.simulation.tail && *c.simulation.tail < 0) throw ConfigError(s.path("tail"), "must be non-negative");
    s.finish();
  } else {
    root.skip("simulation");
  }

  c.output_dir = root.string("output_dir", "out/" + c.name);
  c.sweep = parse_sweep(root.has("sweep") ? root.raw("sweep") : Json(), "sweep", doc,
                        rate_factor);
  if (!root.has("sweep")) root.skip("sweep");
  root.finish();

  const bool cascade = std::holds_alternative<Cascade>(c.scenario.topology);
  if ((c.synthesis == SynthesisKind::CascadeCompensated ||
       c.synthesis == SynthesisKind::LegacyCompensated) && !cascade)
    throw ConfigError("synthesis", "compensated synthesis requires the cascade topology");
  if (c.drive.kind != DriveKind::Pulse && c.synthesis != SynthesisKind::None &&
      c.synthesis != SynthesisKind::LegacyCompensated)
    throw ConfigError("drive.kind", "square/piecewise drives cannot be derivative-corrected");
  return c;
}

Json load_json(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("", "cannot open config file " + file.string());
  try {
    return Json::parse(in, nullptr, true, true);
  } catch (const Json::parse_error& e) {
    throw ConfigError("", file.string() + ": " + e.what());
  }
}

RunConfig load_config(const std::filesystem::path& file) { return parse_config(load_json(file)); }

Json to_json(const RunConfig& c) {
  Json doc;
  doc["name"] = c.name;
  doc["units"] = {{"rates", "rad_per_us"}};
  Json sc;
  std::visit(
      [&](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        auto chi_mode = [](ChiMode m) { return m == ChiMode::Qubits ? "qubits" : "states"; };
        if constexpr (std::is_same_v<T, SingleCavity>) {
          sc["topology"] = "single_cavity";
          sc["kappa"] = t.kappa;
          sc["delta"] = t.delta;
          sc["chis"] = t.chis;
          sc["chi_mode"] = chi_mode(t.chi_mode);
          sc["signs"] = t.signs;
        } else if constexpr (std::is_same_v<T, Purcell>) {
          sc["topology"] = "purcell";
          sc["G"] = complex_json(t.G);
          sc["delta_c"] = t.delta_c;
          sc["delta_f"] = t.delta_f;
          sc["kappa"] = t.kappa;
          sc["chis"] = t.chis;
          sc["chi_mode"] = chi_mode(t.chi_mode);
          sc["signs"] = t.signs;
          sc["cavity1_loss"] = t.cavity1_loss;
        } else {
          sc["topology"] = "cascade";
          for (auto [key, cav] : {std::pair{"cavity1", &t.cavity1}, std::pair{"cavity2", &t.cavity2}}) {
            sc[key] = {{"kappa", cav->kappa},
                       {"delta", cav->delta},
                       {"chi", Json::array({cav->chi[0], cav->chi[1]})}};
          }
        }
      },
      c.scenario.topology);
  doc["scenario"] = sc;

  Json pulse;
  if (const auto* sp = std::get_if<SinePower>(&c.pulse.family)) {
    pulse["family"] = "sine_power";
    pulse["p"] = sp->p;
  } else {
    const auto& g = std::get<TruncatedGaussian>(c.pulse.family);
    pulse["family"] = "gaussian";
    pulse["sigma"] = g.sigma;
    pulse["center"] = g.center;
  }
  pulse["duration"] = c.pulse.window.duration();
  pulse["t_start"] = c.pulse.window.t_start;
  pulse["amplitude"] = c.pulse.amplitude;
  doc["pulse"] = pulse;

  Json drive;
  switch (c.drive.kind) {
    case DriveKind::Pulse: drive["kind"] = "pulse"; break;
    case DriveKind::Square:
      drive["kind"] = "square";
      drive["amplitude"] = complex_json(c.drive.amplitude);
      break;
    case DriveKind::Piecewise:
      drive["kind"] = "piecewise";
      drive["segments"] = Json::array();
      for (const auto& s : c.drive.segments)
        drive["segments"].push_back({{"duration", s.duration}, {"value", complex_json(s.value)}});
      break;
  }
  doc["drive"] = drive;
  doc["synthesis"] = synthesis_name(c.synthesis);
  doc["baseline"] = c.baseline;
  if (c.normalization.enabled)
    doc["normalization"] = {{"mode", normalization_name(c.normalization.mode)},
                            {"cap", c.normalization.cap}};
  else
    doc["normalization"] = "none";
  doc["detection"] = {{"mode", detection_name(c.detection.kind)},
                      {"synodyne_objective",
                       c.detection.objective == SynodyneObjective::Absolute ? "abs" : "signed"}};
  Json sim = Json::object();
  sim["dt"] = c.simulation.dt ? Json(*c.simulation.dt) : Json(nullptr);
  sim["tail"] = c.simulation.tail ? Json(*c.simulation.tail) : Json(nullptr);
  doc["simulation"] = sim;
  doc["output_dir"] = c.output_dir;
  doc["sweep"] = Json::array();
  for (const auto& a : c.sweep) doc["sweep"].push_back({{"path", a.path}, {"values", a.values}});
  return doc;
}

std::string config_hash(const RunConfig& config) {
  const std::string text = to_json(config).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (const unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace cdpulse
