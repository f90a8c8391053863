#ifndef SEMIFE_CFUNC_HPP_
#define SEMIFE_CFUNC_HPP_

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace semife {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

// A complex-valued function on a finite semigroup, stored as the value table
// indexed by element.
class CFunc {
 public:
  CFunc() = default;
  explicit CFunc(std::size_t n, Complex fill = {}) : values_(n, fill) {}
  explicit CFunc(std::vector<Complex> values) : values_(std::move(values)) {}
  CFunc(std::initializer_list<Complex> values) : values_(values) {}

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  Complex& operator[](std::size_t i) { return values_[i]; }
  Complex operator[](std::size_t i) const { return values_[i]; }

  auto begin() noexcept { return values_.begin(); }
  auto end() noexcept { return values_.end(); }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  const std::vector<Complex>& values() const noexcept { return values_; }

  // Largest modulus over all entries; 0 for the empty function.
  double max_abs() const noexcept;

  // True iff every entry has modulus <= tol.
  bool is_zero(double tol = 0.0) const noexcept { return max_abs() <= tol; }

  CFunc& operator+=(const CFunc& other);
  CFunc& operator-=(const CFunc& other);
  CFunc& operator*=(Complex s);
  CFunc& operator/=(Complex s);

  friend bool operator==(const CFunc&, const CFunc&) = default;

 private:
  std::vector<Complex> values_;
};

CFunc operator+(CFunc a, const CFunc& b);
CFunc operator-(CFunc a, const CFunc& b);
CFunc operator-(CFunc a);
CFunc operator*(Complex s, CFunc a);
CFunc operator*(CFunc a, Complex s);
CFunc operator/(CFunc a, Complex s);

double max_abs_diff(const CFunc& a, const CFunc& b);

// Hermitian inner product <a, b> = sum conj(a_i) b_i.
Complex inner(const CFunc& a, const CFunc& b);

// Least-squares coefficient t minimizing |target - t * basis|.
// Returns 0 when basis is zero.
Complex fit_scalar(const CFunc& basis, const CFunc& target);

// Three-way lexicographic comparison by (re, im) of each entry; components
// within tol compare equal.
int lex_compare(const CFunc& a, const CFunc& b, double tol = 1e-9);
inline bool lex_less(const CFunc& a, const CFunc& b, double tol = 1e-9) {
  return lex_compare(a, b, tol) < 0;
}

}  // namespace semife

#endif  // SEMIFE_CFUNC_HPP_
