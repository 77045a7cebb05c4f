#pragma once

// Time grids, complex signals, trial pulses with closed-form derivatives and
// the Fourier convention shared by the whole library.
//
// Fourier convention:  F[f](w) = Integral f(t) exp(+i w t) dt,
// so that d/dt <-> -i w and F[i dOmega/dt] = w F[Omega].

#include <complex>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace cdpulse {

using cplx = std::complex<double>;
inline constexpr cplx kI{0.0, 1.0};

/// Uniform sampling of [t_start, t_end] with n_samples points (both ends
/// included).
class TimeGrid {
 public:
  TimeGrid(double t_start, double t_end, std::size_t n_samples);

  /// Grid with spacing no larger than `max_dt` covering [t_start, t_end].
  static TimeGrid with_max_step(double t_start, double t_end, double max_dt);

  double t_start() const { return t_start_; }
  double t_end() const { return t_end_; }
  std::size_t size() const { return n_; }
  double dt() const { return (t_end_ - t_start_) / static_cast<double>(n_ - 1); }
  double at(std::size_t i) const;
  std::vector<double> times() const;

  /// Index of the last sample with time <= t (clamped to the grid).
  std::size_t index_at_or_before(double t) const;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  double t_start_;
  double t_end_;
  std::size_t n_;
};

/// Complex time series on a TimeGrid.
struct ComplexSignal {
  TimeGrid grid;
  std::vector<cplx> samples;

  explicit ComplexSignal(TimeGrid g);
  ComplexSignal(TimeGrid g, std::vector<cplx> s);

  std::size_t size() const { return samples.size(); }
  cplx operator[](std::size_t i) const { return samples[i]; }
  cplx& operator[](std::size_t i) { return samples[i]; }

  double max_abs() const;
  /// Trapezoidal integral of |f|^2.
  double energy() const;
  /// sqrt(sum |f_i|^2), the discrete L2 norm.
  double l2() const;

  ComplexSignal& operator+=(const ComplexSignal& other);
  ComplexSignal& operator-=(const ComplexSignal& other);
  ComplexSignal& operator*=(cplx factor);
};

ComplexSignal operator+(ComplexSignal a, const ComplexSignal& b);
ComplexSignal operator-(ComplexSignal a, const ComplexSignal& b);
ComplexSignal operator*(cplx factor, ComplexSignal a);

/// ||a - b|| / ||b|| in the discrete L2 norm (0 when both vanish).
double relative_l2(const ComplexSignal& a, const ComplexSignal& b);
double relative_l2(std::span<const cplx> a, std::span<const cplx> b);

void require_same_grid(const ComplexSignal& a, const ComplexSignal& b, const char* what);

// ---------------------------------------------------------------------------
// Trial pulses
// ---------------------------------------------------------------------------

/// sin^p(pi (t - t0) / L) on its support: the pulse and its first p-1
/// derivatives vanish at both ends.
struct SinePower {
  int p = 4;
};

/// exp(-(t - center)^2 / (2 sigma^2)) truncated to the support. Boundary
/// values are small but not zero; see boundary_residuals().
struct TruncatedGaussian {
  double sigma = 0.125;
  double center = 0.5;
};

using PulseFamily = std::variant<SinePower, TruncatedGaussian>;

/// Support interval of a trial pulse; the pulse is identically zero outside.
struct PulseWindow {
  double t_start = 0.0;
  double t_end = 1.0;
  double duration() const { return t_end - t_start; }
};

struct TrialPulse {
  PulseFamily family;
  double amplitude = 1.0;
  PulseWindow window;

  /// Highest derivative order with a closed form for this family.
  int max_order() const;
  const char* family_name() const;
};

inline constexpr int kMaxDerivativeOrder = 16;

/// order-th derivative of the pulse at time t (zero outside the window).
double pulse_derivative(const TrialPulse& pulse, int order, double t);

/// order-th time derivative of the pulse sampled on `grid`. Throws Error for
/// orders beyond the family's closed-form limit.
ComplexSignal evaluate_pulse(const TrialPulse& pulse, int order, const TimeGrid& grid);

/// Real-valued derivative stack d^0 .. d^max_order sampled on grid.
std::vector<std::vector<double>> derivative_stack(const TrialPulse& pulse, int max_order,
                                                  const TimeGrid& grid);

/// Max relative deviation between the closed-form derivative and a central
/// finite difference of the (order-1)-th closed-form derivative, over the
/// interior of the pulse window, on a grid refined by `refine` relative to a
/// 1024-interval base grid.
double check_derivatives(const TrialPulse& pulse, int order, int refine = 16);

/// |d^k at endpoints| / max |d^k| for k = 0 .. max_order.
std::vector<double> boundary_residuals(const TrialPulse& pulse, int max_order);

// ---------------------------------------------------------------------------
// Fourier transform
// ---------------------------------------------------------------------------

/// Samples of F[f](w) on the DFT frequency grid (natural FFT ordering:
/// non-negative frequencies first, then negative ones).
struct Spectrum {
  std::vector<double> omega;
  std::vector<cplx> values;
  double t_origin = 0.0;  ///< time of sample 0 of the transformed signal
  double dt = 0.0;
};

/// Discrete approximation of Integral f(t) exp(i w t) dt. `pad_factor` > 1
/// appends zeros to the signal before transforming.
Spectrum fourier_transform(const ComplexSignal& signal, std::size_t pad_factor = 1);

/// Inverse of fourier_transform, truncated back onto `grid`.
ComplexSignal inverse_fourier_transform(const Spectrum& spectrum, const TimeGrid& grid);

/// Multiplies the spectrum of `signal` by response(w) and transforms back.
/// The signal is zero padded by `pad_factor` to suppress wrap-around.
template <class Response>
ComplexSignal apply_frequency_response(const ComplexSignal& signal, Response&& response,
                                       std::size_t pad_factor = 4) {
  Spectrum s = fourier_transform(signal, pad_factor);
  for (std::size_t k = 0; k < s.values.size(); ++k) s.values[k] *= response(s.omega[k]);
  return inverse_fourier_transform(s, signal.grid);
}

}  // namespace cdpulse
