#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference version and,
// where the target supports it, an AVX2 version; the active table is chosen
// once at startup from CPU features (override with CDPULSE_SIMD=scalar|avx2).
//
// Elementwise kernels are bit-identical across variants. Reductions differ
// only in summation order.

#include <complex>
#include <cstddef>
#include <span>

namespace cdpulse::kernels {

using cplx = std::complex<double>;

struct KernelTable {
  const char* name;

  /// out[i] = sum_k weights[k] * basis[k][i]   (complex weights, real basis)
  void (*combine_real_basis)(const cplx* weights, const double* const* basis, std::size_t n_basis,
                             std::size_t n, cplx* out);

  /// out[i] = c * Re z[i] + s * Im z[i]
  void (*project)(const cplx* z, std::size_t n, double c, double s, double* out);

  /// sum_i w[i] * |c * Re z[i] + s * Im z[i]|
  double (*weighted_abs_projection)(const cplx* z, const double* w, std::size_t n, double c,
                                    double s);

  /// sum_i w[i] * |a[i] - b[i]|
  double (*weighted_abs_diff)(const double* a, const double* b, const double* w, std::size_t n);

  /// For each angle a: m_a = min_p f(dx[p] cos[a] + dy[p] sin[a]) with f = |.|
  /// (absolute) or identity. Returns the first index maximizing m_a and
  /// stores the maximum in *best.
  std::size_t (*max_min_projection)(const double* dx, const double* dy, std::size_t n_pairs,
                                    const double* cos_a, const double* sin_a, std::size_t n_angles,
                                    bool absolute, double* best);
};

const KernelTable& scalar_kernels();

/// AVX2 table, or nullptr when not compiled in or unsupported by the CPU.
const KernelTable* avx2_kernels();

/// Table used by the library.
const KernelTable& active_kernels();

/// Overrides the active table (tests and benchmarking).
void set_active_kernels(const KernelTable& table);

}  // namespace cdpulse::kernels
