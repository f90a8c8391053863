#include "semife/cfunc.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace semife {

double CFunc::max_abs() const noexcept {
  double m = 0.0;
  for (const Complex& v : values_) m = std::max(m, std::abs(v));
  return m;
}

CFunc& CFunc::operator+=(const CFunc& other) {
  assert(other.size() == size());
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other[i];
  return *this;
}

CFunc& CFunc::operator-=(const CFunc& other) {
  assert(other.size() == size());
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other[i];
  return *this;
}

CFunc& CFunc::operator*=(Complex s) {
  for (Complex& v : values_) v *= s;
  return *this;
}

CFunc& CFunc::operator/=(Complex s) {
  for (Complex& v : values_) v /= s;
  return *this;
}

CFunc operator+(CFunc a, const CFunc& b) { return a += b; }
CFunc operator-(CFunc a, const CFunc& b) { return a -= b; }
CFunc operator-(CFunc a) { return a *= -1.0; }
CFunc operator*(Complex s, CFunc a) { return a *= s; }
CFunc operator*(CFunc a, Complex s) { return a *= s; }
CFunc operator/(CFunc a, Complex s) { return a /= s; }

double max_abs_diff(const CFunc& a, const CFunc& b) {
  assert(a.size() == b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Complex inner(const CFunc& a, const CFunc& b) {
  assert(a.size() == b.size());
  Complex s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

Complex fit_scalar(const CFunc& basis, const CFunc& target) {
  const double nn = std::real(inner(basis, basis));
  if (nn == 0.0) return {};
  return inner(basis, target) / nn;
}

int lex_compare(const CFunc& a, const CFunc& b, double tol) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double dr = a[i].real() - b[i].real();
    if (std::abs(dr) > tol) return dr < 0 ? -1 : 1;
    const double di = a[i].imag() - b[i].imag();
    if (std::abs(di) > tol) return di < 0 ? -1 : 1;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

}  // namespace semife
