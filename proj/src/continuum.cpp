#include "semife/continuum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <sstream>

#include "semife/errors.hpp"

namespace semife {

namespace {

constexpr double kRange = 10.0;
constexpr double kParamFloor = 1e-12;

bool near(Complex z, Complex w) { return std::abs(z - w) <= kParamFloor; }

// splitmix64 finalizer; gives an arbitrary but reproducible g.
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Complex hashed_value(std::uint64_t seed, double x) {
  const std::uint64_t h = mix(seed ^ std::bit_cast<std::uint64_t>(x));
  const double re = static_cast<double>(h >> 32) / 4294967296.0;
  const double im = static_cast<double>(h & 0xffffffffULL) / 4294967296.0;
  return {4.0 * re - 2.0, 4.0 * im - 2.0};
}

std::pair<Complex, Complex> from_power(const ContinuumFamily& fam, double a) {
  const Complex chi = std::pow(Complex{a, 0.0}, fam.lambda);
  const Complex one = 1.0;
  using K = ContinuumFamily::Kind;
  if (fam.eq == EquationTag::kCosSub) {
    if (fam.kind == K::kScaledChar) {
      const Complex d = one + fam.alpha * fam.alpha;
      return {fam.alpha * chi / d, chi / d};
    }
    const Complex phi = fam.c * chi * std::log(a);
    return {-kI * phi, chi + static_cast<double>(fam.sign) * phi};
  }
  if (fam.kind == K::kScaledChar) return {chi / (2.0 * fam.alpha), chi / 2.0};
  return {fam.c * chi * std::log(a), chi};
}

std::pair<Complex, Complex> real_values(const ContinuumFamily& fam, double x) {
  using K = ContinuumFamily::Kind;
  const Complex one = 1.0;
  switch (fam.kind) {
    case K::kZero: return {0.0, 0.0};
    case K::kOne: return {0.0, 1.0};
    case K::kFZero: return {0.0, hashed_value(fam.g_seed, x)};
    case K::kConst:
      if (fam.eq == EquationTag::kCosSub) {
        const Complex d = one + fam.alpha * fam.alpha;
        return {fam.alpha / d, one / d};
      }
      return {one / (2.0 * fam.alpha), 0.5};
    default: break;
  }
  throw InputError("family is not defined on the real line");
}

double pair_residual(EquationTag eq, std::pair<Complex, Complex> x, std::pair<Complex, Complex> y,
                     std::pair<Complex, Complex> lhs) {
  const auto [fx, gx] = x;
  const auto [fy, gy] = y;
  if (eq == EquationTag::kCosSub) return std::abs(lhs.second - (gx * gy + fx * fy));
  return std::abs(lhs.first - (fx * gy + fy * gx));
}

void check_equation(EquationTag eq) {
  if (eq != EquationTag::kCosSub && eq != EquationTag::kSineAdd)
    throw InputError("continuum families cover cos-sub and sine-add only");
}

}  // namespace

RealTwist RealTwist::make(double beta) {
  if (!std::isfinite(beta) || beta == 0.0 || beta == 1.0 || beta == -1.0)
    throw InvalidBeta("beta must be a real number outside {0, 1, -1}");
  return RealTwist{beta};
}

AxBElement operator*(const AxBElement& x, const AxBElement& y) {
  return {x.a * y.a, x.a * y.b + x.b};
}

AxBElement axb_sigma(const AxBElement& x, double k) { return {x.a, k * x.b}; }

std::string ContinuumFamily::describe() const {
  auto num = [](Complex z) {
    std::ostringstream os;
    os << z.real();
    if (z.imag() != 0.0) os << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return os.str();
  };
  using K = Kind;
  const bool cos = eq == EquationTag::kCosSub;
  switch (kind) {
    case K::kZero: return "f = 0, g = 0";
    case K::kOne: return "f = 0, g = 1";
    case K::kFZero: return "f = 0, g arbitrary (seed " + std::to_string(g_seed) + ")";
    case K::kConst:
      return cos ? "f = a/(1+a^2), g = 1/(1+a^2), a = " + num(alpha)
                 : "f = 1/(2a), g = 1/2, a = " + num(alpha);
    case K::kScaledChar:
      return (cos ? "f = a*x^l/(1+a^2), g = x^l/(1+a^2), a = " : "f = x^l/(2a), g = x^l/2, a = ") +
             num(alpha) + ", l = " + num(lambda);
    case K::kLog:
      return (cos ? std::string("f = -i c x^l log x, g = x^l ") + (sign > 0 ? "+" : "-") +
                        " c x^l log x, c = "
                  : std::string("f = c x^l log x, g = x^l, c = ")) +
             num(c) + ", l = " + num(lambda);
  }
  return {};
}

std::pair<Complex, Complex> evaluate(const ContinuumFamily& fam, double x) {
  if (fam.carrier != Carrier::kReal) throw InputError("family lives on the (ax+b)-group");
  return real_values(fam, x);
}

std::pair<Complex, Complex> evaluate(const ContinuumFamily& fam, const AxBElement& x) {
  if (fam.carrier != Carrier::kAxB) throw InputError("family lives on the real line");
  if (!(x.a > 0)) throw InputError("group elements need a > 0");
  return from_power(fam, x.a);
}

std::vector<ContinuumFamily> real_families(EquationTag eq, RealTwist twist, Complex alpha,
                                           std::uint64_t g_seed) {
  check_equation(eq);
  twist = RealTwist::make(twist.beta);
  using K = ContinuumFamily::Kind;
  ContinuumFamily base{.carrier = Carrier::kReal, .eq = eq, .beta = twist.beta};
  std::vector<ContinuumFamily> out;
  auto add = [&](K kind) {
    ContinuumFamily fam = base;
    fam.kind = kind;
    fam.alpha = alpha;
    fam.g_seed = g_seed;
    out.push_back(fam);
  };
  if (eq == EquationTag::kCosSub) {
    if (near(alpha, kI) || near(alpha, -kI)) throw ConstraintViolation("alpha must not be +-i");
    add(K::kZero);
    add(K::kConst);
    add(K::kOne);
  } else {
    if (near(alpha, 0.0)) throw ConstraintViolation("alpha must be non-zero");
    add(K::kFZero);
    add(K::kConst);
  }
  return out;
}

std::vector<ContinuumFamily> axb_families(EquationTag eq, Complex alpha, Complex c, Complex lambda,
                                          double scale) {
  check_equation(eq);
  if (!std::isfinite(scale) || scale == 0.0 || scale == 1.0 || scale == -1.0)
    throw ConstraintViolation("the scale factor must lie outside {0, 1, -1}");
  if (near(alpha, 0.0) || (eq == EquationTag::kCosSub && (near(alpha, kI) || near(alpha, -kI))))
    throw ConstraintViolation("alpha is excluded");
  if (near(c, 0.0)) throw ConstraintViolation("c must be non-zero");
  using K = ContinuumFamily::Kind;
  ContinuumFamily base{.carrier = Carrier::kAxB, .eq = eq, .scale = scale, .alpha = alpha, .c = c,
                       .lambda = lambda};
  std::vector<ContinuumFamily> out;
  ContinuumFamily fam = base;
  fam.kind = K::kScaledChar;
  out.push_back(fam);
  fam.kind = K::kLog;
  out.push_back(fam);
  if (eq == EquationTag::kCosSub) {
    fam.sign = -1;
    out.push_back(fam);
  }
  return out;
}

double sample_residual(const ContinuumFamily& fam, std::size_t n_samples, Sampler sampler,
                       std::uint64_t seed) {
  if (n_samples == 0) throw InputError("n_samples must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> lin(-kRange, kRange);
  std::uniform_real_distribution<double> loga(std::log(0.1), std::log(kRange));
  // grid: a side x side lattice covering the sampling box
  const std::size_t side = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::sqrt(n_samples))));
  auto grid = [&](std::size_t i, double lo, double hi) {
    return side == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(side - 1);
  };
  double worst = 0.0;
  for (std::size_t k = 0; k < n_samples; ++k) {
    const std::size_t i = k / side % side, j = k % side;
    if (fam.carrier == Carrier::kReal) {
      double x, y;
      if (sampler == Sampler::kGrid) {
        x = grid(i, -kRange, kRange);
        y = grid(j, -kRange, kRange);
      } else {
        x = lin(rng);
        y = lin(rng);
      }
      worst = std::max(worst, pair_residual(fam.eq, evaluate(fam, x), evaluate(fam, y),
                                            evaluate(fam, x + fam.beta * y)));
    } else {
      AxBElement x, y;
      if (sampler == Sampler::kGrid) {
        x = {std::exp(grid(i, std::log(0.1), std::log(kRange))), grid(j, -kRange, kRange)};
        y = {std::exp(grid(j, std::log(0.1), std::log(kRange))), grid(i, -kRange, kRange)};
      } else {
        x.a = std::exp(loga(rng));
        x.b = lin(rng);
        y.a = std::exp(loga(rng));
        y.b = lin(rng);
      }
      worst = std::max(worst, pair_residual(fam.eq, evaluate(fam, x), evaluate(fam, y),
                                            evaluate(fam, x * axb_sigma(y, fam.scale))));
    }
  }
  return worst;
}

std::vector<Complex> invariant_exponential_rates(double beta, std::span<const double> xs,
                                                 std::span<const Complex> candidates, double tol) {
  std::vector<Complex> out;
  for (Complex s : candidates) {
    const bool ok = std::all_of(xs.begin(), xs.end(), [&](double x) {
      return std::abs(std::exp(s * (beta - 1.0) * x) - 1.0) <= tol;
    });
    if (ok) out.push_back(s);
  }
  return out;
}

}  // namespace semife
