#include "cdpulse/kernels.hpp"

#include <cmath>
#include <limits>

namespace cdpulse::kernels {
namespace {

void combine_real_basis(const cplx* weights, const double* const* basis, std::size_t n_basis,
                        std::size_t n, cplx* out) {
  for (std::size_t i = 0; i < n; ++i) {
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < n_basis; ++k) {
      const double d = basis[k][i];
      re += weights[k].real() * d;
      im += weights[k].imag() * d;
    }
    out[i] = {re, im};
  }
}

void project(const cplx* z, std::size_t n, double c, double s, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = c * z[i].real() + s * z[i].imag();
}

double weighted_abs_projection(const cplx* z, const double* w, std::size_t n, double c, double s) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += w[i] * std::abs(c * z[i].real() + s * z[i].imag());
  return acc;
}

double weighted_abs_diff(const double* a, const double* b, const double* w, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += w[i] * std::abs(a[i] - b[i]);
  return acc;
}

std::size_t max_min_projection(const double* dx, const double* dy, std::size_t n_pairs,
                               const double* cos_a, const double* sin_a, std::size_t n_angles,
                               bool absolute, double* best) {
  std::size_t arg = 0;
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < n_angles; ++a) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < n_pairs; ++p) {
      double v = dx[p] * cos_a[a] + dy[p] * sin_a[a];
      if (absolute) v = std::abs(v);
      m = std::min(m, v);
    }
    if (m > top) {
      top = m;
      arg = a;
    }
  }
  *best = top;
  return arg;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar",           combine_real_basis, project,
                                 weighted_abs_projection, weighted_abs_diff, max_min_projection};
  return table;
}

}  // namespace cdpulse::kernels
