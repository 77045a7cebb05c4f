#include "cdpulse/error.hpp"
#include "cdpulse/signal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cdpulse {

TimeGrid::TimeGrid(double t_start, double t_end, std::size_t n_samples)
    : t_start_(t_start), t_end_(t_end), n_(n_samples) {
  if (!(t_end > t_start)) throw Error("TimeGrid: t_end must exceed t_start");
  if (n_samples < 2) throw Error("TimeGrid: need at least 2 samples");
}

TimeGrid TimeGrid::with_max_step(double t_start, double t_end, double max_dt) {
  if (!(max_dt > 0)) throw Error("TimeGrid: step must be positive");
  const double intervals = std::ceil((t_end - t_start) / max_dt - 1e-9);
  return TimeGrid(t_start, t_end, static_cast<std::size_t>(std::max(1.0, intervals)) + 1);
}

double TimeGrid::at(std::size_t i) const {
  if (i + 1 == n_) return t_end_;
  return t_start_ + static_cast<double>(i) * dt();
}

std::vector<double> TimeGrid::times() const {
  std::vector<double> t(n_);
  for (std::size_t i = 0; i < n_; ++i) t[i] = at(i);
  return t;
}

std::size_t TimeGrid::index_at_or_before(double t) const {
  if (t <= t_start_) return 0;
  if (t >= t_end_) return n_ - 1;
  auto i = static_cast<std::size_t>(std::floor((t - t_start_) / dt() + 1e-9));
  return std::min(i, n_ - 1);
}

ComplexSignal::ComplexSignal(TimeGrid g) : grid(g), samples(g.size()) {}

ComplexSignal::ComplexSignal(TimeGrid g, std::vector<cplx> s) : grid(g), samples(std::move(s)) {
  if (samples.size() != grid.size())
    throw Error("ComplexSignal: " + std::to_string(samples.size()) + " samples for a grid of " +
                std::to_string(grid.size()));
}

double ComplexSignal::max_abs() const {
  double m = 0.0;
  for (const auto& z : samples) m = std::max(m, std::abs(z));
  return m;
}

double ComplexSignal::energy() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double w = (i == 0 || i + 1 == samples.size()) ? 0.5 : 1.0;
    acc += w * std::norm(samples[i]);
  }
  return acc * grid.dt();
}

double ComplexSignal::l2() const {
  double acc = 0.0;
  for (const auto& z : samples) acc += std::norm(z);
  return std::sqrt(acc);
}

void require_same_grid(const ComplexSignal& a, const ComplexSignal& b, const char* what) {
  if (!(a.grid == b.grid)) throw Error(std::string(what) + ": signals live on different grids");
}

ComplexSignal& ComplexSignal::operator+=(const ComplexSignal& other) {
  require_same_grid(*this, other, "operator+=");
  for (std::size_t i = 0; i < samples.size(); ++i) samples[i] += other.samples[i];
  return *this;
}

ComplexSignal& ComplexSignal::operator-=(const ComplexSignal& other) {
  require_same_grid(*this, other, "operator-=");
  for (std::size_t i = 0; i < samples.size(); ++i) samples[i] -= other.samples[i];
  return *this;
}

ComplexSignal& ComplexSignal::operator*=(cplx factor) {
  for (auto& z : samples) z *= factor;
  return *this;
}

ComplexSignal operator+(ComplexSignal a, const ComplexSignal& b) { return a += b; }
ComplexSignal operator-(ComplexSignal a, const ComplexSignal& b) { return a -= b; }
ComplexSignal operator*(cplx factor, ComplexSignal a) { return a *= factor; }

double relative_l2(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw Error("relative_l2: length mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  if (den == 0.0) return num == 0.0 ? 0.0 : INFINITY;
  return std::sqrt(num / den);
}

double relative_l2(const ComplexSignal& a, const ComplexSignal& b) {
  require_same_grid(a, b, "relative_l2");
  return relative_l2(std::span<const cplx>(a.samples), std::span<const cplx>(b.samples));
}

}  // namespace cdpulse
