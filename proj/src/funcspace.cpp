#include "semife/funcspace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "semife/linalg.hpp"

namespace semife {

CFunc compose_sigma(const CFunc& f, const Automorphism& sigma) {
  CFunc out(f.size());
  for (Element x = 0; x < f.size(); ++x) out[x] = f[sigma(x)];
  return out;
}

IndexPeriod index_period(const FiniteSemigroup& s) {
  const std::size_t n = s.order();
  IndexPeriod out{std::vector<std::size_t>(n), std::vector<std::size_t>(n)};
  std::vector<std::size_t> first_seen(n);
  for (Element x = 0; x < n; ++x) {
    std::fill(first_seen.begin(), first_seen.end(), 0);
    Element power = x;
    for (std::size_t k = 1;; ++k) {
      if (first_seen[power] != 0) {
        out.index[x] = first_seen[power];
        out.period[x] = k - first_seen[power];
        break;
      }
      first_seen[power] = k;
      power = s.product(power, x);
    }
  }
  return out;
}

double multiplicative_residual(const FiniteSemigroup& s, const CFunc& f) {
  double r = 0.0;
  for (Element x = 0; x < s.order(); ++x)
    for (Element y = 0; y < s.order(); ++y)
      r = std::max(r, std::abs(f[s.product(x, y)] - f[x] * f[y]));
  return r;
}

Complex root_of_unity(std::size_t k, std::size_t p) {
  k %= p;
  if ((4 * k) % p == 0) {
    switch ((4 * k) / p) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(p));
}

std::vector<MultiplicativeFunction> enumerate_multiplicative(const FiniteSemigroup& s,
                                                             bool include_zero) {
  const std::size_t n = s.order();
  const IndexPeriod ip = index_period(s);
  std::vector<std::vector<Complex>> candidates(n);
  for (Element x = 0; x < n; ++x) {
    candidates[x].push_back(0.0);
    for (std::size_t k = 0; k < ip.period[x]; ++k) candidates[x].push_back(root_of_unity(k, ip.period[x]));
  }

  CFunc chi(n);
  std::vector<MultiplicativeFunction> out;
  // Elements 0..k are assigned; verify every pair that touches k.
  auto consistent = [&](Element k) {
    for (Element x = 0; x <= k; ++x)
      for (Element y = 0; y <= k; ++y) {
        const Element xy = s.product(x, y);
        if (xy > k || (x != k && y != k && xy != k)) continue;
        if (std::abs(chi[xy] - chi[x] * chi[y]) > kMultTol) return false;
      }
    return true;
  };
  auto search = [&](auto& self, Element k) -> void {
    if (k == n) {
      out.push_back({chi, multiplicative_residual(s, chi)});
      return;
    }
    for (const Complex& v : candidates[k]) {
      chi[k] = v;
      if (consistent(k)) self(self, k + 1);
    }
    chi[k] = 0.0;
  };
  search(search, 0);

  std::sort(out.begin(), out.end(), [](const MultiplicativeFunction& a, const MultiplicativeFunction& b) {
    return lex_compare(a.chi, b.chi, 0.0) < 0;
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const MultiplicativeFunction& a, const MultiplicativeFunction& b) {
                          return a.chi == b.chi;
                        }),
            out.end());
  if (!include_zero)
    std::erase_if(out, [](const MultiplicativeFunction& m) { return m.is_zero(); });
  return out;
}

namespace {

ComplexMatrix special_sine_system(const FiniteSemigroup& s, const CFunc& chi, std::size_t extra_rows) {
  const std::size_t n = s.order();
  ComplexMatrix a(n * n + extra_rows, n);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      const std::size_t r = x * n + y;
      a(r, s.product(x, y)) += 1.0;
      a(r, x) -= chi[y];
      a(r, y) -= chi[x];
    }
  return a;
}

}  // namespace

std::vector<CFunc> solve_special_sine(const FiniteSemigroup& s, const CFunc& chi) {
  return nullspace(special_sine_system(s, chi, 0));
}

std::vector<CFunc> solve_special_sine(const FiniteSemigroup& s, const CFunc& chi,
                                      const Automorphism& sigma, TwistParity parity) {
  if (parity == TwistParity::kAny) return solve_special_sine(s, chi);
  const std::size_t n = s.order();
  ComplexMatrix a = special_sine_system(s, chi, n);
  const double sign = parity == TwistParity::kEven ? -1.0 : 1.0;
  for (Element x = 0; x < n; ++x) {
    a(n * n + x, sigma(x)) += 1.0;
    a(n * n + x, x) += sign;
  }
  return nullspace(std::move(a));
}

double special_sine_residual(const FiniteSemigroup& s, const CFunc& chi, const CFunc& phi) {
  double r = 0.0;
  for (Element x = 0; x < s.order(); ++x)
    for (Element y = 0; y < s.order(); ++y)
      r = std::max(r, std::abs(phi[s.product(x, y)] - phi[x] * chi[y] - phi[y] * chi[x]));
  return r;
}

Dependence linear_dependence(const CFunc& f, const CFunc& g, double dep_tol, double zero_tol) {
  const double nf = f.max_abs();
  const double ng = g.max_abs();
  const double m = std::max(nf, ng);
  if (m <= zero_tol) return {Dependence::Kind::kBothZero};
  if (nf <= std::max(zero_tol, dep_tol * m)) return {Dependence::Kind::kFirstZero};
  if (ng <= std::max(zero_tol, dep_tol * m)) return {Dependence::Kind::kSecondZero};
  double minor = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j)
      minor = std::max(minor, std::abs(f[i] * g[j] - f[j] * g[i]));
  if (minor / (nf * ng) <= dep_tol) return {Dependence::Kind::kProportional, fit_scalar(f, g)};
  return {Dependence::Kind::kIndependent};
}

const char* to_string(Dependence::Kind kind) {
  switch (kind) {
    case Dependence::Kind::kBothZero: return "both-zero";
    case Dependence::Kind::kFirstZero: return "first-zero";
    case Dependence::Kind::kSecondZero: return "second-zero";
    case Dependence::Kind::kProportional: return "proportional";
    case Dependence::Kind::kIndependent: return "independent";
  }
  return "?";
}

}  // namespace semife
