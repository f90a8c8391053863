// Fixtures, independent oracles and small generators shared by the unit
// tests and the acceptance runner. Nothing here calls into the code it checks
// except to load fixtures.
#ifndef SEMIFE_TESTS_SUPPORT_HPP_
#define SEMIFE_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "semife/cfunc.hpp"
#include "semife/equations.hpp"
#include "semife/families.hpp"
#include "semife/semigroup.hpp"

#ifndef SEMIFE_TEST_DATA
#define SEMIFE_TEST_DATA "tests/data"
#endif

namespace semife::testing {

inline std::string data_path(const std::string& name) { return std::string(SEMIFE_TEST_DATA) + "/" + name; }

struct Fixture {
  std::string name;
  FiniteSemigroup s;
  Automorphism sigma;
};

inline std::string z15_double() {
  std::string out;
  for (int x = 0; x < 15; ++x) out += (x ? "," : "") + std::to_string(2 * x % 15);
  return out;
}

// The six fixtures, each with its distinguished automorphism.
inline std::vector<Fixture> fixtures() {
  const std::vector<std::pair<std::string, std::string>> list = {
      {"z2", "id"}, {"n2", "id"}, {"rz3", "1,2,0"}, {"t3", "id"}, {"s4", "0,2,1,3"}, {"z15", z15_double()}};
  std::vector<Fixture> out;
  for (const auto& [name, sig] : list) {
    FiniteSemigroup s = load_cayley(data_path(name + ".tbl"));
    Automorphism a = parse_automorphism(sig, s);
    out.push_back({name, std::move(s), std::move(a)});
  }
  return out;
}

inline Fixture fixture(const std::string& name) {
  for (auto& f : fixtures())
    if (f.name == name) return f;
  throw std::runtime_error("no fixture " + name);
}

// ---- semigroups ---------------------------------------------------------

inline bool naive_associative(const std::vector<std::size_t>& t, std::size_t n) {
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (t[t[x * n + y] * n + z] != t[x * n + t[y * n + z]]) return false;
  return true;
}

// Every table in n^(n^2), filtered.
inline std::vector<std::vector<std::size_t>> naive_semigroups(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> t(n * n, 0);
  while (true) {
    if (naive_associative(t, n)) out.push_back(t);
    std::size_t i = n * n;
    while (i > 0) {
      --i;
      if (++t[i] < n) break;
      t[i] = 0;
      if (i == 0) return out;
    }
  }
}

inline std::vector<std::vector<std::size_t>> all_permutations(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline std::vector<std::vector<std::size_t>> naive_automorphisms(const FiniteSemigroup& s) {
  const std::size_t n = s.order();
  std::vector<std::vector<std::size_t>> out;
  for (const auto& p : all_permutations(n)) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x)
      for (std::size_t y = 0; y < n && ok; ++y) ok = p[s.product(x, y)] == s.product(p[x], p[y]);
    if (ok) out.push_back(p);
  }
  return out;
}

// Minimum relabeled table, by brute force over permutations.
inline std::vector<std::size_t> naive_canonical(const std::vector<std::size_t>& t, std::size_t n) {
  std::vector<std::size_t> best;
  for (const auto& p : all_permutations(n)) {
    std::vector<std::size_t> inv(n), r(n * n);
    for (std::size_t i = 0; i < n; ++i) inv[p[i]] = i;
    // relabel x -> p[x]
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) r[a * n + b] = p[t[inv[a] * n + inv[b]]];
    if (best.empty() || r < best) best = r;
  }
  return best;
}

// ---- multiplicative functions -------------------------------------------

// Candidate grid {0} and the 12th roots of unity; covers every period <= 4
// and 6, so every semigroup of order <= 3.
inline std::vector<Complex> unity_grid() {
  std::vector<Complex> out{0.0};
  for (int k = 0; k < 12; ++k) out.push_back(std::polar(1.0, 2.0 * M_PI * k / 12.0));
  return out;
}

inline double naive_mult_residual(const FiniteSemigroup& s, const CFunc& f) {
  double r = 0.0;
  for (std::size_t x = 0; x < s.order(); ++x)
    for (std::size_t y = 0; y < s.order(); ++y)
      r = std::max(r, std::abs(f[s.product(x, y)] - f[x] * f[y]));
  return r;
}

inline std::vector<CFunc> brute_multiplicative(const FiniteSemigroup& s, bool include_zero) {
  const auto grid = unity_grid();
  const std::size_t n = s.order();
  std::vector<CFunc> out;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    CFunc f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = grid[idx[i]];
    if (naive_mult_residual(s, f) <= 1e-9 && (include_zero || !f.is_zero(1e-12))) out.push_back(f);
    std::size_t i = 0;
    while (i < n && ++idx[i] == grid.size()) idx[i++] = 0;
    if (i == n) break;
  }
  return out;
}

// Same set within tol, ignoring order.
inline bool same_function_set(const std::vector<CFunc>& a, const std::vector<CFunc>& b, double tol = 1e-9) {
  if (a.size() != b.size()) return false;
  for (const CFunc& x : a)
    if (std::none_of(b.begin(), b.end(), [&](const CFunc& y) { return max_abs_diff(x, y) <= tol; }))
      return false;
  return true;
}

// Dimension of {phi : phi(xy) = phi(x) chi(y) + phi(y) chi(x)} by numerical rank.
inline std::size_t naive_special_sine_dim(const FiniteSemigroup& s, const CFunc& chi) {
  const std::size_t n = s.order();
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n * n, n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const auto r = x * n + y;
      a(r, s.product(x, y)) += 1.0;
      a(r, x) -= chi[y];
      a(r, y) -= chi[x];
    }
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(a);
  lu.setThreshold(1e-10);
  return n - lu.rank();
}

// ---- equations ----------------------------------------------------------

// Each equation written out directly.
inline double naive_residual(EquationTag eq, const FiniteSemigroup& s, const Automorphism& sigma, const CFunc& f,
                             const CFunc& g) {
  double r = 0.0;
  const std::size_t n = s.order();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t xs = s.product(x, sigma(y)), sx = s.product(sigma(y), x), xy = s.product(x, y);
      Complex d;
      switch (eq) {
        case EquationTag::kCosSub: d = g[xs] - (g[x] * g[y] + f[x] * f[y]); break;
        case EquationTag::kSineAdd: d = f[xs] - (f[x] * g[y] + f[y] * g[x]); break;
        case EquationTag::kSineSub: d = f[xs] - (f[x] * g[y] - f[y] * g[x]); break;
        case EquationTag::kCosSubVariant: d = g[sx] - (g[x] * g[y] + f[x] * f[y]); break;
        case EquationTag::kSineAddVariant: d = f[sx] - (f[x] * g[y] + f[y] * g[x]); break;
        case EquationTag::kCosAddPlain: d = g[xy] - (g[x] * g[y] - f[x] * f[y]); break;
        case EquationTag::kSineAddPlain: d = f[xy] - (f[x] * g[y] + f[y] * g[x]); break;
      }
      r = std::max(r, std::abs(d));
    }
  return r;
}

inline bool naive_abelian(const FiniteSemigroup& s, const CFunc& f, double tol) {
  const std::size_t n = s.order();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (std::abs(f[s.product(x, y)] - f[s.product(y, x)]) > tol) return false;
      for (std::size_t z = 0; z < n; ++z)
        if (std::abs(f[s.product(s.product(x, y), z)] - f[s.product(s.product(x, z), y)]) > tol) return false;
    }
  return true;
}

// Character x -> e^(2 pi i j x / n) of Z_n.
inline CFunc cyclic_character(std::size_t n, std::size_t j) {
  CFunc chi(n);
  for (std::size_t x = 0; x < n; ++x) chi[x] = std::polar(1.0, 2.0 * M_PI * double(j * x % n) / double(n));
  return chi;
}

// ---- generators ---------------------------------------------------------

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double real(double lo = -2.0, double hi = 2.0) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  Complex complex(double box = 2.0) { return {real(-box, box), real(-box, box)}; }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  CFunc cfunc(std::size_t n, double box = 2.0) {
    CFunc f(n);
    for (auto& v : f) v = complex(box);
    return f;
  }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[index(v.size())];
  }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline constexpr std::array<Theorem, 5> kTheorems = {Theorem::kCosSub, Theorem::kSineAdd, Theorem::kSineSub,
                                          Theorem::kCosAddPlain, Theorem::kSineAddPlain};

inline std::vector<EquationTag> equations_of(Theorem thm) {
  switch (thm) {
    case Theorem::kCosSub: return {EquationTag::kCosSub, EquationTag::kCosSubVariant};
    case Theorem::kSineAdd: return {EquationTag::kSineAdd, EquationTag::kSineAddVariant};
    case Theorem::kSineSub: return {EquationTag::kSineSub};
    case Theorem::kCosAddPlain: return {EquationTag::kCosAddPlain};
    case Theorem::kSineAddPlain: return {EquationTag::kSineAddPlain};
  }
  return {};
}

// Every (S, sigma) with |S| <= max_order.
inline std::vector<std::pair<FiniteSemigroup, Automorphism>> small_universe(std::size_t max_order) {
  std::vector<std::pair<FiniteSemigroup, Automorphism>> out;
  for (std::size_t n = 1; n <= max_order; ++n)
    for (const auto& s : enumerate_semigroups(n))
      for (const auto& a : enumerate_automorphisms(s)) out.emplace_back(s, a);
  return out;
}

}  // namespace semife::testing

#endif  // SEMIFE_TESTS_SUPPORT_HPP_
