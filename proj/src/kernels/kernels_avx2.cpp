// Compiled with -mavx2; only reached after a runtime CPU check.
#include "cdpulse/kernels.hpp"

#include <immintrin.h>

#include <cmath>
#include <limits>

namespace cdpulse::kernels {
namespace {

inline __m256d abs_pd(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

inline double hsum(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

void combine_real_basis(const cplx* weights, const double* const* basis, std::size_t n_basis,
                        std::size_t n, cplx* out) {
  auto* dst = reinterpret_cast<double*>(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t k = 0; k < n_basis; ++k) {
      const __m256d w = _mm256_setr_pd(weights[k].real(), weights[k].imag(), weights[k].real(),
                                       weights[k].imag());
      const __m128d d2 = _mm_loadu_pd(basis[k] + i);
      // [d0, d0, d1, d1]
      const __m256d d = _mm256_permute4x64_pd(_mm256_castpd128_pd256(d2), 0b01010000);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(w, d));
    }
    _mm256_storeu_pd(dst + 2 * i, acc);
  }
  for (; i < n; ++i) {
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < n_basis; ++k) {
      re += weights[k].real() * basis[k][i];
      im += weights[k].imag() * basis[k][i];
    }
    out[i] = {re, im};
  }
}

void project(const cplx* z, std::size_t n, double c, double s, double* out) {
  const auto* src = reinterpret_cast<const double*>(z);
  const __m256d cs = _mm256_setr_pd(c, s, c, s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_mul_pd(_mm256_loadu_pd(src + 2 * i), cs);
    const __m256d b = _mm256_mul_pd(_mm256_loadu_pd(src + 2 * i + 4), cs);
    // [z0, z2, z1, z3] -> [z0, z1, z2, z3]
    const __m256d h = _mm256_permute4x64_pd(_mm256_hadd_pd(a, b), 0b11011000);
    _mm256_storeu_pd(out + i, h);
  }
  for (; i < n; ++i) out[i] = c * z[i].real() + s * z[i].imag();
}

double weighted_abs_projection(const cplx* z, const double* w, std::size_t n, double c, double s) {
  const auto* src = reinterpret_cast<const double*>(z);
  const __m256d cs = _mm256_setr_pd(c, s, c, s);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_mul_pd(_mm256_loadu_pd(src + 2 * i), cs);
    const __m256d b = _mm256_mul_pd(_mm256_loadu_pd(src + 2 * i + 4), cs);
    const __m256d h = _mm256_permute4x64_pd(_mm256_hadd_pd(a, b), 0b11011000);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(w + i), abs_pd(h)));
  }
  double total = hsum(acc);
  for (; i < n; ++i) total += w[i] * std::abs(c * z[i].real() + s * z[i].imag());
  return total;
}

double weighted_abs_diff(const double* a, const double* b, const double* w, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(w + i), abs_pd(d)));
  }
  double total = hsum(acc);
  for (; i < n; ++i) total += w[i] * std::abs(a[i] - b[i]);
  return total;
}

std::size_t max_min_projection(const double* dx, const double* dy, std::size_t n_pairs,
                               const double* cos_a, const double* sin_a, std::size_t n_angles,
                               bool absolute, double* best) {
  std::size_t arg = 0;
  double top = -std::numeric_limits<double>::infinity();
  alignas(32) double lanes[4];
  std::size_t a = 0;
  for (; a + 4 <= n_angles; a += 4) {
    const __m256d c = _mm256_loadu_pd(cos_a + a);
    const __m256d s = _mm256_loadu_pd(sin_a + a);
    __m256d m = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    for (std::size_t p = 0; p < n_pairs; ++p) {
      __m256d v = _mm256_add_pd(_mm256_mul_pd(_mm256_set1_pd(dx[p]), c),
                                _mm256_mul_pd(_mm256_set1_pd(dy[p]), s));
      if (absolute) v = abs_pd(v);
      m = _mm256_min_pd(m, v);
    }
    _mm256_store_pd(lanes, m);
    for (std::size_t j = 0; j < 4; ++j) {
      if (lanes[j] > top) {
        top = lanes[j];
        arg = a + j;
      }
    }
  }
  for (; a < n_angles; ++a) {
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

const KernelTable& avx2_table() {
  static const KernelTable table{"avx2",           combine_real_basis, project,
                                 weighted_abs_projection, weighted_abs_diff, max_min_projection};
  return table;
}

}  // namespace cdpulse::kernels
