#include "cdpulse/error.hpp"
#include "cdpulse/kernels.hpp"
#include "cdpulse/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace cdpulse {
namespace {

using std::numbers::pi;

constexpr std::size_t kAngleGrid = 1024;
constexpr double kAngleTol = 1e-6;

// Golden-section maximization of f on [a, b].
template <class F>
double golden_max(F&& f, double a, double b, double tol) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

double wrap(double alpha, double period) {
  double a = std::fmod(alpha, period);
  if (a < 0) a += period;
  if (a >= period) a = 0.0;
  return a;
}

struct PairDiffs {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::vector<cplx>> diffs;  // per pair, samples [0, n)
  std::vector<double> weights;
  std::size_t n = 0;
};

PairDiffs pair_differences(const OutputDecomposition& decomp, double t_end) {
  if (decomp.states() < 2) throw Error("detection: at least two states are required");
  PairDiffs pd;
  const TimeGrid& grid = decomp.common.grid;
  pd.weights = trapezoid_weights(grid, t_end);
  pd.n = pd.weights.size();
  for (std::size_t i = 0; i < decomp.states(); ++i) {
    for (std::size_t j = i + 1; j < decomp.states(); ++j) {
      require_same_grid(decomp.offsets[i], decomp.offsets[j], "detection");
      std::vector<cplx> d(pd.n);
      for (std::size_t k = 0; k < pd.n; ++k) d[k] = decomp.offsets[i][k] - decomp.offsets[j][k];
      pd.pairs.emplace_back(i, j);
      pd.diffs.push_back(std::move(d));
    }
  }
  return pd;
}

// min over pairs of Q(alpha); also reports the minimizing pair.
double worst_pair(const PairDiffs& pd, double alpha, std::size_t* which = nullptr) {
  const auto& k = kernels::active_kernels();
  const double c = std::cos(alpha), s = std::sin(alpha);
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < pd.diffs.size(); ++p) {
    const double q = k.weighted_abs_projection(pd.diffs[p].data(), pd.weights.data(), pd.n, c, s);
    if (q < worst) {
      worst = q;
      if (which) *which = p;
    }
  }
  return worst;
}

}  // namespace

std::vector<double> homodyne_trace(const ComplexSignal& z, double alpha) {
  std::vector<double> out(z.size());
  kernels::active_kernels().project(z.samples.data(), z.size(), std::cos(alpha), std::sin(alpha),
                                    out.data());
  return out;
}

std::vector<double> synodyne_trace(const ComplexSignal& z, std::span<const double> alpha) {
  const std::size_t n = std::min(z.size(), alpha.size());
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = std::cos(alpha[i]) * z[i].real() + std::sin(alpha[i]) * z[i].imag();
  return out;
}

std::vector<double> trapezoid_weights(const TimeGrid& grid, double t_end) {
  const std::size_t last = grid.index_at_or_before(t_end);
  std::vector<double> w(last + 1, grid.dt());
  if (last == 0) return {0.0};
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

double distinguishability(std::span<const double> a, std::span<const double> b,
                          const TimeGrid& grid, double t_end) {
  const std::vector<double> w = trapezoid_weights(grid, t_end);
  if (a.size() < w.size() || b.size() < w.size())
    throw Error("distinguishability: traces shorter than the integration range");
  return kernels::active_kernels().weighted_abs_diff(a.data(), b.data(), w.data(), w.size());
}

double homodyne_distinguishability(const ComplexSignal& a, const ComplexSignal& b, double alpha,
                                   double t_end) {
  require_same_grid(a, b, "homodyne_distinguishability");
  const std::vector<double> w = trapezoid_weights(a.grid, t_end);
  std::vector<cplx> d(w.size());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = a[k] - b[k];
  return kernels::active_kernels().weighted_abs_projection(d.data(), w.data(), w.size(),
                                                           std::cos(alpha), std::sin(alpha));
}

HomodyneResult optimize_homodyne_angle(const OutputDecomposition& decomp, double t_end) {
  const PairDiffs pd = pair_differences(decomp, t_end);
  const double step = pi / static_cast<double>(kAngleGrid);
  std::size_t best_k = 0;
  double best = -1.0;
  for (std::size_t k = 0; k < kAngleGrid; ++k) {
    const double v = worst_pair(pd, step * static_cast<double>(k));
    if (v > best) {
      best = v;
      best_k = k;
    }
  }
  double alpha = step * static_cast<double>(best_k);
  const double refined = golden_max([&](double a) { return worst_pair(pd, a); }, alpha - step,
                                    alpha + step, kAngleTol);
  const double refined_value = worst_pair(pd, refined);
  if (refined_value > best) {
    best = refined_value;
    alpha = wrap(refined, pi);
  }
  HomodyneResult r;
  r.alpha = alpha;
  std::size_t p = 0;
  r.worst_pair_q = worst_pair(pd, alpha, &p);
  r.pair_i = pd.pairs[p].first;
  r.pair_j = pd.pairs[p].second;
  return r;
}

SynodyneResult optimize_synodyne_angle(const OutputDecomposition& decomp, double t_end,
                                       SynodyneObjective objective) {
  const PairDiffs pd = pair_differences(decomp, t_end);
  const bool absolute = objective == SynodyneObjective::Absolute;
  const double period = absolute ? pi : 2.0 * pi;
  const std::size_t n_angles = absolute ? kAngleGrid : 2 * kAngleGrid;
  const double step = period / static_cast<double>(n_angles);
  std::vector<double> cos_a(n_angles), sin_a(n_angles);
  for (std::size_t k = 0; k < n_angles; ++k) {
    cos_a[k] = std::cos(step * static_cast<double>(k));
    sin_a[k] = std::sin(step * static_cast<double>(k));
  }

  const HomodyneResult hom = optimize_homodyne_angle(decomp, t_end);
  SynodyneResult r;
  r.homodyne_alpha = hom.alpha;
  r.constant_q = hom.worst_pair_q;
  r.alpha.resize(pd.n);
  r.separation.resize(pd.n);

  const std::size_t n_pairs = pd.pairs.size();
  std::vector<double> dx(n_pairs), dy(n_pairs);
  auto objective_at = [&](double a) {
    const double c = std::cos(a), s = std::sin(a);
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < n_pairs; ++p) {
      double v = dx[p] * c + dy[p] * s;
      if (absolute) v = std::abs(v);
      m = std::min(m, v);
    }
    return m;
  };

  const auto& kern = kernels::active_kernels();
  double previous = hom.alpha;
  for (std::size_t i = 0; i < pd.n; ++i) {
    bool all_zero = true;
    for (std::size_t p = 0; p < n_pairs; ++p) {
      dx[p] = pd.diffs[p][i].real();
      dy[p] = pd.diffs[p][i].imag();
      all_zero = all_zero && dx[p] == 0.0 && dy[p] == 0.0;
    }
    double best = 0.0;
    const std::size_t k = kern.max_min_projection(dx.data(), dy.data(), n_pairs, cos_a.data(),
                                                   sin_a.data(), n_angles, absolute, &best);
    if (all_zero || (absolute && best <= 0.0)) {
      r.alpha[i] = previous;
      r.separation[i] = objective_at(previous);
      continue;
    }
    double alpha = step * static_cast<double>(k);
    const double refined = golden_max(objective_at, alpha - step, alpha + step, kAngleTol);
    const double refined_value = objective_at(refined);
    if (refined_value > best) {
      best = refined_value;
      alpha = wrap(refined, period);
    }
    r.alpha[i] = alpha;
    r.separation[i] = best;
    previous = alpha;
  }

  double pointwise = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < n_pairs; ++p) {
    double q = 0.0;
    for (std::size_t i = 0; i < pd.n; ++i) {
      const cplx d = pd.diffs[p][i];
      q += pd.weights[i] * std::abs(std::cos(r.alpha[i]) * d.real() + std::sin(r.alpha[i]) * d.imag());
    }
    pointwise = std::min(pointwise, q);
  }
  r.pointwise_q = pointwise;
  r.constant_schedule = r.constant_q > r.pointwise_q;
  r.worst_pair_q = std::max(r.pointwise_q, r.constant_q);
  if (r.constant_schedule) std::fill(r.alpha.begin(), r.alpha.end(), hom.alpha);
  return r;
}

}  // namespace cdpulse
