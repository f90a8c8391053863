#ifndef SEMIFE_FUNCSPACE_HPP_
#define SEMIFE_FUNCSPACE_HPP_

#include <cstddef>
#include <vector>

#include "semife/cfunc.hpp"
#include "semife/semigroup.hpp"

namespace semife {

inline constexpr double kMultTol = 1e-9;
inline constexpr double kDepTol = 1e-8;
inline constexpr double kZeroTol = 1e-10;

// (f o sigma)(x) = f(sigma(x)).
CFunc compose_sigma(const CFunc& f, const Automorphism& sigma);

// Per element x, the least index i >= 1 and period p >= 1 with x^(i+p) = x^i.
struct IndexPeriod {
  std::vector<std::size_t> index;
  std::vector<std::size_t> period;
};

IndexPeriod index_period(const FiniteSemigroup& s);

// max over (x, y) of |f(xy) - f(x) f(y)|.
double multiplicative_residual(const FiniteSemigroup& s, const CFunc& f);

struct MultiplicativeFunction {
  CFunc chi;
  double residual = 0.0;

  bool is_zero() const { return chi.is_zero(); }
};

// e^(2 pi i k / p), exact at multiples of a quarter turn.
Complex root_of_unity(std::size_t k, std::size_t p);

// All multiplicative functions on s. Each value chi(x) is 0 or a p-th root of
// unity (p = period of x), so the search is a finite backtrack over those
// candidates. Sorted lexicographically; the zero function only when asked.
std::vector<MultiplicativeFunction> enumerate_multiplicative(const FiniteSemigroup& s,
                                                             bool include_zero = false);

// Which twist behaviour to impose on solutions of the special sine law.
enum class TwistParity { kAny, kEven, kOdd };

// Basis of {phi : phi(xy) = phi(x) chi(y) + phi(y) chi(x)}. With a sigma and
// parity kEven/kOdd, additionally phi o sigma = +phi / -phi.
std::vector<CFunc> solve_special_sine(const FiniteSemigroup& s, const CFunc& chi);
std::vector<CFunc> solve_special_sine(const FiniteSemigroup& s, const CFunc& chi,
                                      const Automorphism& sigma, TwistParity parity);

// max over (x, y) of |phi(xy) - phi(x) chi(y) - phi(y) chi(x)|.
double special_sine_residual(const FiniteSemigroup& s, const CFunc& chi, const CFunc& phi);

struct Dependence {
  enum class Kind { kBothZero, kFirstZero, kSecondZero, kProportional, kIndependent };
  Kind kind;
  // g = lambda * f when kind == kProportional.
  Complex lambda{};
};

// Rank of the n x 2 matrix [f g], decided by the largest 2x2 minor after
// scaling each column to unit max-norm.
Dependence linear_dependence(const CFunc& f, const CFunc& g, double dep_tol = kDepTol,
                             double zero_tol = kZeroTol);

const char* to_string(Dependence::Kind kind);

}  // namespace semife

#endif  // SEMIFE_FUNCSPACE_HPP_
