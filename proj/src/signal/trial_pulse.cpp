#include "cdpulse/error.hpp"
#include "cdpulse/signal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

namespace cdpulse {
namespace {

// d^k/dtheta^k sin^p(theta) written as sum c * sin^a * cos^b.
struct SinCosTerm {
  int sin_pow;
  int cos_pow;
  double coeff;
};

std::vector<SinCosTerm> sine_power_terms(int p, int order) {
  std::map<std::pair<int, int>, double> terms{{{p, 0}, 1.0}};
  for (int k = 0; k < order; ++k) {
    std::map<std::pair<int, int>, double> next;
    for (const auto& [powers, c] : terms) {
      const auto [a, b] = powers;
      if (a > 0) next[{a - 1, b + 1}] += c * a;
      if (b > 0) next[{a + 1, b - 1}] -= c * b;
    }
    std::erase_if(next, [](const auto& kv) { return kv.second == 0.0; });
    terms = std::move(next);
  }
  std::vector<SinCosTerm> out;
  out.reserve(terms.size());
  for (const auto& [powers, c] : terms) out.push_back({powers.first, powers.second, c});
  return out;
}

// sin(pi u), cos(pi u) with sin exactly zero at u = 0 and u = 1.
std::pair<double, double> sin_cos_pi(double u) {
  using std::numbers::pi;
  if (u <= 0.5) return {std::sin(pi * u), std::cos(pi * u)};
  return {std::sin(pi * (1.0 - u)), -std::cos(pi * (1.0 - u))};
}

double eval_terms(const std::vector<SinCosTerm>& terms, double s, double c) {
  double acc = 0.0;
  for (const auto& term : terms) {
    double v = term.coeff;
    for (int i = 0; i < term.sin_pow; ++i) v *= s;
    for (int i = 0; i < term.cos_pow; ++i) v *= c;
    acc += v;
  }
  return acc;
}

// Probabilists' Hermite polynomial He_n(x).
double hermite_he(int n, double x) {
  double h0 = 1.0, h1 = x;
  if (n == 0) return h0;
  for (int k = 1; k < n; ++k) {
    const double h2 = x * h1 - k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

void check_order(const TrialPulse& pulse, int order) {
  if (order < 0 || order > pulse.max_order())
    throw Error(std::string("derivative order ") + std::to_string(order) + " unsupported for " +
                pulse.family_name() + " (limit " + std::to_string(pulse.max_order()) + ")");
}

bool inside(const PulseWindow& w, double t) { return t >= w.t_start && t <= w.t_end; }

// Evaluator hoisting the per-order setup out of sample loops.
class DerivativeEvaluator {
 public:
  DerivativeEvaluator(const TrialPulse& pulse, int order) : pulse_(pulse), order_(order) {
    check_order(pulse, order);
    if (const auto* sp = std::get_if<SinePower>(&pulse.family)) {
      if (sp->p < 1) throw Error("SinePower exponent must be >= 1");
      terms_ = sine_power_terms(sp->p, order);
      scale_ = pulse.amplitude * std::pow(std::numbers::pi / pulse.window.duration(), order);
    } else {
      const auto& g = std::get<TruncatedGaussian>(pulse.family);
      if (!(g.sigma > 0)) throw Error("TruncatedGaussian sigma must be positive");
      scale_ = pulse.amplitude * std::pow(-1.0 / g.sigma, order);
    }
  }

  double operator()(double t) const {
    const PulseWindow& w = pulse_.window;
    if (!inside(w, t)) return 0.0;
    if (std::holds_alternative<SinePower>(pulse_.family)) {
      const double u = std::clamp((t - w.t_start) / w.duration(), 0.0, 1.0);
      const auto [s, c] = sin_cos_pi(u);
      return scale_ * eval_terms(terms_, s, c);
    }
    const auto& g = std::get<TruncatedGaussian>(pulse_.family);
    const double x = (t - g.center) / g.sigma;
    return scale_ * hermite_he(order_, x) * std::exp(-0.5 * x * x);
  }

 private:
  const TrialPulse& pulse_;
  int order_;
  std::vector<SinCosTerm> terms_;
  double scale_ = 1.0;
};

}  // namespace

int TrialPulse::max_order() const { return kMaxDerivativeOrder; }

const char* TrialPulse::family_name() const {
  return std::holds_alternative<SinePower>(family) ? "SinePower" : "TruncatedGaussian";
}

double pulse_derivative(const TrialPulse& pulse, int order, double t) {
  return DerivativeEvaluator(pulse, order)(t);
}

ComplexSignal evaluate_pulse(const TrialPulse& pulse, int order, const TimeGrid& grid) {
  DerivativeEvaluator eval(pulse, order);
  ComplexSignal out(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = eval(grid.at(i));
  return out;
}

std::vector<std::vector<double>> derivative_stack(const TrialPulse& pulse, int max_order,
                                                  const TimeGrid& grid) {
  check_order(pulse, max_order);
  std::vector<std::vector<double>> stack;
  stack.reserve(static_cast<std::size_t>(max_order) + 1);
  const auto t = grid.times();
  for (int k = 0; k <= max_order; ++k) {
    DerivativeEvaluator eval(pulse, k);
    std::vector<double> d(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) d[i] = eval(t[i]);
    stack.push_back(std::move(d));
  }
  return stack;
}

double check_derivatives(const TrialPulse& pulse, int order, int refine) {
  if (order <= 0) return 0.0;
  check_order(pulse, order);
  const PulseWindow& w = pulse.window;
  const std::size_t intervals = 1024u * static_cast<std::size_t>(std::max(1, refine));
  const double h = w.duration() / static_cast<double>(intervals);
  DerivativeEvaluator lower(pulse, order - 1);
  DerivativeEvaluator exact(pulse, order);
  double max_dev = 0.0, max_ref = 0.0;
  for (std::size_t i = 1; i < intervals; ++i) {
    const double t = w.t_start + static_cast<double>(i) * h;
    const double fd = (lower(t + h) - lower(t - h)) / (2.0 * h);
    const double ref = exact(t);
    max_dev = std::max(max_dev, std::abs(fd - ref));
    max_ref = std::max(max_ref, std::abs(ref));
  }
  return max_ref > 0.0 ? max_dev / max_ref : max_dev;
}

std::vector<double> boundary_residuals(const TrialPulse& pulse, int max_order) {
  check_order(pulse, max_order);
  const PulseWindow& w = pulse.window;
  const TimeGrid grid(w.t_start, w.t_end, 4097);
  std::vector<double> out;
  for (int k = 0; k <= max_order; ++k) {
    DerivativeEvaluator eval(pulse, k);
    double peak = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) peak = std::max(peak, std::abs(eval(grid.at(i))));
    const double edge = std::max(std::abs(eval(w.t_start)), std::abs(eval(w.t_end)));
    out.push_back(peak > 0.0 ? edge / peak : 0.0);
  }
  return out;
}

}  // namespace cdpulse
