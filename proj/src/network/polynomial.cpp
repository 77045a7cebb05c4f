#include "cdpulse/error.hpp"
#include "cdpulse/network.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>

namespace cdpulse {

Polynomial::Polynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
  while (coeffs_.size() > 1 && coeffs_.back() == cplx{}) coeffs_.pop_back();
  if (coeffs_.empty()) coeffs_.push_back(cplx{});
}

bool Polynomial::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](cplx c) { return c == cplx{}; });
}

cplx Polynomial::operator()(cplx x) const {
  cplx acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<cplx> Polynomial::roots() const {
  const int n = degree();
  if (n < 1) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  const cplx lead = coeffs_.back();
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -coeffs_[static_cast<std::size_t>(i)] / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw Error("Polynomial::roots: eigen solver failed");
  std::vector<cplx> r(solver.eigenvalues().begin(), solver.eigenvalues().end());
  std::sort(r.begin(), r.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  std::vector<cplx> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<cplx> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + cplx{-1.0} * b; }

Polynomial operator*(cplx s, const Polynomial& a) {
  std::vector<cplx> c = a.coeffs_;
  for (auto& x : c) x *= s;
  return Polynomial(std::move(c));
}

cplx TransferFunction::operator()(double omega) const {
  return numerator(omega) / denominator(omega);
}

cplx TransferFunction::inverse(double omega) const {
  if (numerator.is_zero()) throw SingularityError("transfer function has a zero numerator");
  return denominator(omega) / numerator(omega);
}

}  // namespace cdpulse
