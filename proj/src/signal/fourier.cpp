#include "cdpulse/error.hpp"
#include "cdpulse/signal.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

namespace cdpulse {
namespace {

// FFTW planning is not thread safe; execution with new-array execute is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void run_fft(std::vector<cplx>& data, int sign) {
  const int n = static_cast<int>(data.size());
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw Error("FFTW planning failed");
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

}  // namespace

Spectrum fourier_transform(const ComplexSignal& signal, std::size_t pad_factor) {
  const std::size_t n = signal.size() * std::max<std::size_t>(1, pad_factor);
  const double dt = signal.grid.dt();
  Spectrum s;
  s.t_origin = signal.grid.t_start();
  s.dt = dt;
  s.values.assign(n, cplx{});
  std::copy(signal.samples.begin(), signal.samples.end(), s.values.begin());
  // exp(+i w t) kernel is FFTW's backward sign.
  run_fft(s.values, FFTW_BACKWARD);
  s.omega.resize(n);
  const double dw = 2.0 * std::numbers::pi / (static_cast<double>(n) * dt);
  for (std::size_t k = 0; k < n; ++k) {
    const double kk = k < (n + 1) / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
    s.omega[k] = kk * dw;
    s.values[k] *= dt * std::exp(kI * s.omega[k] * s.t_origin);
  }
  return s;
}

ComplexSignal inverse_fourier_transform(const Spectrum& spectrum, const TimeGrid& grid) {
  const std::size_t n = spectrum.values.size();
  if (grid.size() > n) throw Error("inverse_fourier_transform: grid longer than spectrum");
  std::vector<cplx> work(n);
  for (std::size_t k = 0; k < n; ++k)
    work[k] = spectrum.values[k] * std::exp(-kI * spectrum.omega[k] * spectrum.t_origin);
  run_fft(work, FFTW_FORWARD);
  const double norm = 1.0 / (static_cast<double>(n) * spectrum.dt);
  ComplexSignal out(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = work[i] * norm;
  return out;
}

}  // namespace cdpulse
