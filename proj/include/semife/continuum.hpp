#ifndef SEMIFE_CONTINUUM_HPP_
#define SEMIFE_CONTINUUM_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "semife/cfunc.hpp"
#include "semife/equations.hpp"

namespace semife {

// (R, +) with sigma(x) = beta x.
struct RealTwist {
  double beta;
  // Throws InvalidBeta for beta in {0, 1, -1} or non-finite beta.
  static RealTwist make(double beta);
};

// The matrix [[a, b], [0, 1]], a > 0.
struct AxBElement {
  double a = 1.0, b = 0.0;
};

AxBElement operator*(const AxBElement& x, const AxBElement& y);
// sigma scales b by k.
AxBElement axb_sigma(const AxBElement& x, double k);

inline constexpr double kDefaultAxBScale = 2023.0;

enum class Carrier { kReal, kAxB };

// A closed-form solution family member. Only the cosine-subtraction and
// sine-addition equations (twisted, right form) are covered.
struct ContinuumFamily {
  enum class Kind {
    kZero,        // real cos-sub: f = g = 0
    kConst,       // real: cos-sub f = a/(1+a^2), g = 1/(1+a^2); sine-add f = 1/(2a), g = 1/2
    kOne,         // real cos-sub: f = 0, g = 1
    kFZero,       // real sine-add: f = 0, g arbitrary (seeded pseudo-random)
    kScaledChar,  // axb: cos-sub alpha a^l/(1+alpha^2), a^l/(1+alpha^2); sine-add a^l/(2 alpha), a^l/2
    kLog,         // axb: cos-sub -i c a^l log a, a^l +- c a^l log a; sine-add c a^l log a, a^l
  };
  Carrier carrier = Carrier::kReal;
  EquationTag eq = EquationTag::kCosSub;
  Kind kind = Kind::kZero;
  double beta = 2.0;                // real carrier
  double scale = kDefaultAxBScale;  // axb carrier
  Complex alpha{}, c{}, lambda{};
  int sign = 1;
  std::uint64_t g_seed = 0;  // kFZero

  std::string describe() const;
};

// (f(x), g(x)) at a real point or at (a, b) in G.
std::pair<Complex, Complex> evaluate(const ContinuumFamily& fam, double x);
std::pair<Complex, Complex> evaluate(const ContinuumFamily& fam, const AxBElement& x);

// The solution list on (R, +) for eq in {kCosSub, kSineAdd}, with alpha
// choosing the member of the one-parameter family.
std::vector<ContinuumFamily> real_families(EquationTag eq, RealTwist twist, Complex alpha = 2.0,
                                           std::uint64_t g_seed = 1);

// The non-zero continuous solution list on G. alpha picks the scaled
// character member, c the logarithmic one. Throws ConstraintViolation for
// excluded parameters or a scale of 0 or +-1.
std::vector<ContinuumFamily> axb_families(EquationTag eq, Complex alpha, Complex c, Complex lambda,
                                          double scale = kDefaultAxBScale);

enum class Sampler { kGrid, kRandom };

// Max equation residual over n_samples (x, y) pairs: x, y in [-10, 10] on R;
// a log-uniform in [0.1, 10] and b in [-10, 10] on G.
double sample_residual(const ContinuumFamily& fam, std::size_t n_samples,
                       Sampler sampler = Sampler::kRandom, std::uint64_t seed = 7);

// The rates s among candidates with |exp(s (beta - 1) x) - 1| <= tol at every
// sample x, i.e. characters x -> e^{sx} with chi(beta x) = chi(x) there.
std::vector<Complex> invariant_exponential_rates(double beta, std::span<const double> xs,
                                                 std::span<const Complex> candidates,
                                                 double tol = 1e-9);

}  // namespace semife

#endif  // SEMIFE_CONTINUUM_HPP_
