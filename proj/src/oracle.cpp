#include "semife/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <thread>

#include "semife/errors.hpp"

namespace semife {

namespace {

constexpr double kDivergeAbove = 1e6;
constexpr double kMaxDamping = 1e12;
constexpr double kRoundScale = 1e6;
constexpr double kRoundoff = 1e-15;
constexpr std::size_t kMaxPolish = 100;
constexpr double kMinDamping = 1e-30;
constexpr std::size_t kQuadIterations = 200;

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

class QuadPolisher;

// The n^2 complex equations with unknowns z = (f, g) in C^{2n}. Each row of
// the complex Jacobian has at most five non-zeros.
class System {
 public:
  System(EquationTag eq, const FiniteSemigroup& s, const Automorphism& sigma)
      : n_(s.order()), shape_(shape_of(eq)), lhs_(n_ * n_) {
    for (Element x = 0; x < n_; ++x)
      for (Element y = 0; y < n_; ++y) lhs_[x * n_ + y] = lhs_element(shape_, s, sigma, x, y);
  }

  std::size_t n() const { return n_; }
  QuadPolisher quad() const;
  std::size_t unknowns() const { return 2 * n_; }
  std::size_t equations() const { return n_ * n_; }

  void residual(const CVector& z, CVector& r) const {
    r.resize(equations());
    for (Element x = 0; x < n_; ++x)
      for (Element y = 0; y < n_; ++y) {
        const std::size_t p = x * n_ + y;
        Complex v = z[at(shape_.target, lhs_[p])];
        for (const auto& t : shape_.terms) v -= t.coef * z[at(t.left, x)] * z[at(t.right, y)];
        r[p] = v;
      }
  }

  struct Row {
    std::array<std::size_t, 5> idx;
    std::array<Complex, 5> val;
    std::size_t size = 0;
    void add(std::size_t i, Complex v) {
      for (std::size_t k = 0; k < size; ++k)
        if (idx[k] == i) {
          val[k] += v;
          return;
        }
      idx[size] = i;
      val[size++] = v;
    }
  };

  Row row(const CVector& z, std::size_t p) const {
    const Element x = p / n_, y = p % n_;
    Row out;
    out.add(at(shape_.target, lhs_[p]), 1.0);
    for (const auto& t : shape_.terms) {
      out.add(at(t.left, x), -t.coef * z[at(t.right, y)]);
      out.add(at(t.right, y), -t.coef * z[at(t.left, x)]);
    }
    return out;
  }

  CMatrix complex_jacobian(const CVector& z) const {
    CMatrix j = CMatrix::Zero(equations(), unknowns());
    for (std::size_t p = 0; p < equations(); ++p) {
      const Row r = row(z, p);
      for (std::size_t k = 0; k < r.size; ++k) j(p, r.idx[k]) = r.val[k];
    }
    return j;
  }

  // Gauss-Newton normal equations J^H J and J^H r.
  void normal(const CVector& z, const CVector& r, CMatrix& h, CVector& grad) const {
    h.setZero(unknowns(), unknowns());
    grad.setZero(unknowns());
    for (std::size_t p = 0; p < equations(); ++p) {
      const Row rw = row(z, p);
      for (std::size_t a = 0; a < rw.size; ++a) {
        const Complex ca = std::conj(rw.val[a]);
        grad[rw.idx[a]] += ca * r[p];
        for (std::size_t b = 0; b < rw.size; ++b) h(rw.idx[a], rw.idx[b]) += ca * rw.val[b];
      }
    }
  }

 private:
  std::size_t at(EquationShape::Unknown u, Element e) const {
    return u == EquationShape::Unknown::kF ? e : n_ + e;
  }

  std::size_t n_;
  EquationShape shape_;
  std::vector<Element> lhs_;
};

CVector to_complex(const CFunc& f, const CFunc& g) {
  const std::size_t n = f.size();
  CVector z(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = f[i];
    z[n + i] = g[i];
  }
  return z;
}

void from_complex(const CVector& z, CFunc& f, CFunc& g) {
  const std::size_t n = static_cast<std::size_t>(z.size()) / 2;
  f = CFunc(n);
  g = CFunc(n);
  for (std::size_t i = 0; i < n; ++i) {
    f[i] = z[i];
    g[i] = z[n + i];
  }
}

double max_modulus(const CVector& r) { return r.size() == 0 ? 0.0 : r.cwiseAbs().maxCoeff(); }

LocalResult levenberg_marquardt(const System& sys, CVector z, const SolverConfig& cfg) {
  LocalResult out;
  CVector r, trial_r, grad;
  CMatrix h;
  sys.residual(z, r);
  double cost = r.squaredNorm();
  double mu = cfg.damping;
  // Below converge_tol keep stepping until the steps stall: at multiple
  // roots and where families meet the residual is tiny (quartic in the
  // distance, say) well before the point itself has settled.
  std::size_t polish = 0;
  bool stalled = false;
  std::size_t it = 0;
  for (; it < cfg.newton_max_iter; ++it) {
    const double res = max_modulus(r);
    if (!(res <= kDivergeAbove)) break;
    if (res <= cfg.converge_tol) {
      if (stalled || res == 0.0 || ++polish > kMaxPolish) break;
      // plain Gauss-Newton from here; heavy damping left over from the
      // approach would make the steps look stalled
      if (polish == 1) mu = kMinDamping;
    }
    sys.normal(z, r, h, grad);
    bool accepted = false;
    while (mu <= kMaxDamping) {
      CMatrix a = h;
      a.diagonal().array() += mu;
      const CVector step = a.ldlt().solve(-grad);
      const CVector trial = z + step;
      sys.residual(trial, trial_r);
      const double trial_cost = trial_r.squaredNorm();
      if (std::isfinite(trial_cost) && trial_cost < cost) {
        stalled = max_modulus(step) <= kRoundoff * std::max(1.0, max_modulus(z));
        z = trial;
        r.swap(trial_r);
        cost = trial_cost;
        mu = std::max(mu / 10.0, kMinDamping);
        accepted = true;
        break;
      }
      mu *= 10.0;
    }
    if (!accepted) break;
  }
  out.iterations = it;
  out.residual = max_modulus(r);
  out.converged = out.residual <= cfg.converge_tol;
  from_complex(z, out.f, out.g);
  return out;
}

// Gauss-Newton in binary128 for points whose double-precision polish is
// limited by rounding: in flat valleys around singular solutions a residual at
// machine precision can still leave the point 1e-5 away from the solution
// set.
class QuadPolisher {
 public:
  using Real = __float128;
  struct QC {
    Real re = 0, im = 0;
  };

  QuadPolisher(std::size_t n, const EquationShape& shape, const std::vector<Element>& lhs)
      : n_(n), shape_(shape), lhs_(lhs) {}

  CVector run(const CVector& z0, std::size_t iterations) const {
    const std::size_t m = 2 * n_;
    std::vector<QC> z(m);
    for (std::size_t i = 0; i < m; ++i) z[i] = {z0[i].real(), z0[i].imag()};
    std::vector<QC> h(m * m), grad(m), step(m);
    for (std::size_t it = 0; it < iterations; ++it) {
      std::fill(h.begin(), h.end(), QC{});
      std::fill(grad.begin(), grad.end(), QC{});
      for (Element x = 0; x < n_; ++x)
        for (Element y = 0; y < n_; ++y) {
          std::array<std::size_t, 5> idx{};
          std::array<QC, 5> val{};
          std::size_t size = 0;
          auto add = [&](std::size_t i, QC v) {
            for (std::size_t k = 0; k < size; ++k)
              if (idx[k] == i) {
                val[k] = plus(val[k], v);
                return;
              }
            idx[size] = i;
            val[size++] = v;
          };
          const std::size_t p = x * n_ + y;
          QC r = z[at(shape_.target, lhs_[p])];
          add(at(shape_.target, lhs_[p]), QC{1, 0});
          for (const auto& t : shape_.terms) {
            const QC l = z[at(t.left, x)], rt = z[at(t.right, y)];
            const Real c = t.coef;
            r = minus(r, scale(times(l, rt), c));
            add(at(t.left, x), scale(rt, -c));
            add(at(t.right, y), scale(l, -c));
          }
          for (std::size_t a = 0; a < size; ++a) {
            const QC ca = conj(val[a]);
            grad[idx[a]] = plus(grad[idx[a]], times(ca, r));
            for (std::size_t b = 0; b < size; ++b)
              h[idx[a] * m + idx[b]] = plus(h[idx[a] * m + idx[b]], times(ca, val[b]));
          }
        }
      Real top = 0;
      for (std::size_t i = 0; i < m; ++i) top = std::max(top, h[i * m + i].re);
      const Real mu = top * Real(1e-32) + Real(1e-60);
      for (std::size_t i = 0; i < m; ++i) h[i * m + i].re += mu;
      if (!solve_hermitian(h, grad, step, m)) break;
      Real biggest = 0;
      for (std::size_t i = 0; i < m; ++i) {
        z[i] = minus(z[i], step[i]);
        biggest = std::max(biggest, std::max(fabsq(step[i].re), fabsq(step[i].im)));
      }
      if (biggest <= Real(1e-28)) break;
    }
    CVector out(m);
    for (std::size_t i = 0; i < m; ++i)
      out[i] = Complex{static_cast<double>(z[i].re), static_cast<double>(z[i].im)};
    return out;
  }

 private:
  static Real fabsq(Real v) { return v < 0 ? -v : v; }
  static QC plus(QC a, QC b) { return {a.re + b.re, a.im + b.im}; }
  static QC minus(QC a, QC b) { return {a.re - b.re, a.im - b.im}; }
  static QC times(QC a, QC b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
  static QC scale(QC a, Real s) { return {a.re * s, a.im * s}; }
  static QC conj(QC a) { return {a.re, -a.im}; }

  // LDL^H without pivoting; h is Hermitian positive definite after damping.
  static bool solve_hermitian(std::vector<QC> h, const std::vector<QC>& b, std::vector<QC>& x,
                              std::size_t m) {
    std::vector<Real> d(m);
    for (std::size_t j = 0; j < m; ++j) {
      Real dj = h[j * m + j].re;
      for (std::size_t k = 0; k < j; ++k) {
        const QC l = h[j * m + k];
        dj -= (l.re * l.re + l.im * l.im) * d[k];
      }
      if (!(dj > 0)) return false;
      d[j] = dj;
      for (std::size_t i = j + 1; i < m; ++i) {
        QC s = h[i * m + j];
        for (std::size_t k = 0; k < j; ++k) s = minus(s, scale(times(h[i * m + k], conj(h[j * m + k])), d[k]));
        h[i * m + j] = scale(s, 1 / dj);
      }
    }
    x = b;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < i; ++k) x[i] = minus(x[i], times(h[i * m + k], x[k]));
    for (std::size_t i = 0; i < m; ++i) x[i] = scale(x[i], 1 / d[i]);
    for (std::size_t i = m; i-- > 0;)
      for (std::size_t k = i + 1; k < m; ++k) x[i] = minus(x[i], times(conj(h[k * m + i]), x[k]));
    return true;
  }

  std::size_t at(EquationShape::Unknown u, Element e) const {
    return u == EquationShape::Unknown::kF ? e : n_ + e;
  }

  std::size_t n_;
  const EquationShape& shape_;
  const std::vector<Element>& lhs_;
};

QuadPolisher System::quad() const { return QuadPolisher(n_, shape_, lhs_); }

CFunc random_table(std::size_t n, double box, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-box, box);
  CFunc out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double re = u(rng);
    out[i] = Complex{re, u(rng)};
  }
  return out;
}

std::vector<long long> rounded_key(const FoundSolution& s) {
  std::vector<long long> key;
  key.reserve(4 * s.f.size());
  for (const CFunc* h : {&s.f, &s.g})
    for (Complex v : *h) {
      key.push_back(std::llround(v.real() * kRoundScale));
      key.push_back(std::llround(v.imag() * kRoundScale));
    }
  return key;
}

bool report_less(const FoundSolution& a, const FoundSolution& b) {
  const int ta = a.cls.match ? static_cast<int>(a.cls.match->tag) : -1;
  const int tb = b.cls.match ? static_cast<int>(b.cls.match->tag) : -1;
  if (ta != tb) return ta < tb;
  return rounded_key(a) < rounded_key(b);
}

Classification classify_point(EquationTag eq, const FamilyContext& ctx, const CFunc& f,
                              const CFunc& g, const ClassifyTolerances& tol) {
  try {
    return classify(eq, ctx, f, g, tol);
  } catch (const NotASolution& e) {
    Classification c;
    c.residual = e.max_residual;
    c.profile.residual = e.max_residual;
    c.profile.note = "residual above the classification tolerance";
    return c;
  }
}

}  // namespace

void validate(const SolverConfig& cfg) {
  if (cfg.n_starts == 0 && !cfg.seeded_starts) throw InputError("no starts requested");
  if (cfg.newton_max_iter == 0) throw InputError("newton_max_iter must be positive");
  if (!(cfg.converge_tol > 0) || !(cfg.damping > 0) || !(cfg.start_box > 0) || !(cfg.dedup_tol > 0))
    throw InputError("solver tolerances must be positive");
  if (!(cfg.classify.class_tol > 0) || !(cfg.classify.fit_tol > 0))
    throw InputError("classification tolerances must be positive");
}

Eigen::VectorXd pack(const CFunc& f, const CFunc& g) {
  const CVector z = to_complex(f, g);
  Eigen::VectorXd u(2 * z.size());
  u << z.real(), z.imag();
  return u;
}

void unpack(const Eigen::VectorXd& u, CFunc& f, CFunc& g) {
  const Eigen::Index m = u.size() / 2;
  CVector z(m);
  z.real() = u.head(m);
  z.imag() = u.tail(m);
  from_complex(z, f, g);
}

Eigen::VectorXd residual_vector(EquationTag eq, const FiniteSemigroup& s, const Automorphism& sigma,
                                const Eigen::VectorXd& u) {
  CFunc f, g;
  unpack(u, f, g);
  CVector r;
  System(eq, s, sigma).residual(to_complex(f, g), r);
  Eigen::VectorXd out(2 * r.size());
  out << r.real(), r.imag();
  return out;
}

Eigen::MatrixXd jacobian(EquationTag eq, const FiniteSemigroup& s, const Automorphism& sigma,
                         const Eigen::VectorXd& u) {
  CFunc f, g;
  unpack(u, f, g);
  const CMatrix jc = System(eq, s, sigma).complex_jacobian(to_complex(f, g));
  // Holomorphic residual: d/d(Re z) = J, d/d(Im z) = iJ.
  const Eigen::Index rows = jc.rows(), cols = jc.cols();
  Eigen::MatrixXd j(2 * rows, 2 * cols);
  j.topLeftCorner(rows, cols) = jc.real();
  j.topRightCorner(rows, cols) = -jc.imag();
  j.bottomLeftCorner(rows, cols) = jc.imag();
  j.bottomRightCorner(rows, cols) = jc.real();
  return j;
}

LocalResult solve_from(EquationTag eq, const FiniteSemigroup& s, const Automorphism& sigma,
                       const CFunc& f0, const CFunc& g0, const SolverConfig& cfg) {
  if (f0.size() != s.order() || g0.size() != s.order())
    throw InputError("start tables must have length " + std::to_string(s.order()));
  return levenberg_marquardt(System(eq, s, sigma), to_complex(f0, g0), cfg);
}

SolutionReport find_all_solutions(EquationTag eq, const FiniteSemigroup& s, const Automorphism& sigma,
                                  const SolverConfig& cfg) {
  return find_all_solutions(eq, FamilyContext(s, sigma), cfg);
}

SolutionReport find_all_solutions(EquationTag eq, const FamilyContext& ctx, const SolverConfig& cfg) {
  validate(cfg);
  const FiniteSemigroup& s = ctx.semigroup();
  const std::size_t n = s.order();
  const System sys(eq, s, ctx.sigma());

  std::vector<CVector> starts;
  if (cfg.seeded_starts)
    for (const FamilyCase& fc : sample_instances(theorem_of(eq), ctx)) {
      const SolutionPair sp = evaluate_family(fc, s, ctx.sigma());
      starts.push_back(to_complex(sp.f, sp.g));
    }
  const std::size_t n_seeded = starts.size();
  for (std::size_t i = 0; i < cfg.n_starts; ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(i)};
    std::mt19937_64 rng(seq);
    const CFunc f = random_table(n, cfg.start_box, rng);
    const CFunc g = random_table(n, cfg.start_box, rng);
    starts.push_back(to_complex(f, g));
  }

  std::vector<LocalResult> results(starts.size());
  unsigned threads = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, starts.size()));
  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t i = begin; i < starts.size(); i += step)
      results[i] = levenberg_marquardt(sys, starts[i], cfg);
  };
  if (threads <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    for (auto& th : pool) th.join();
  }

  SolutionReport rep{.eq = eq, .semigroup = s, .sigma = ctx.sigma(), .seed = cfg.seed,
                     .n_starts = cfg.n_starts, .n_seeded = n_seeded};
  std::vector<FoundSolution> distinct;
  for (const LocalResult& lr : results) {
    if (!lr.converged) {
      ++rep.diverged;
      continue;
    }
    ++rep.converged;
    auto same = std::find_if(distinct.begin(), distinct.end(), [&](const FoundSolution& d) {
      return max_abs_diff(d.f, lr.f) <= cfg.dedup_tol && max_abs_diff(d.g, lr.g) <= cfg.dedup_tol;
    });
    if (same != distinct.end()) {
      ++same->multiplicity;
      continue;
    }
    FoundSolution fs;
    fs.f = lr.f;
    fs.g = lr.g;
    distinct.push_back(std::move(fs));
  }

  for (FoundSolution& fs : distinct) {
    // independent of the solver's own stopping test
    fs.residual = equation_residual(eq, s, ctx.sigma(), fs.f, fs.g);
    if (!(fs.residual <= 10 * cfg.converge_tol))
      throw ResidualFailure("solver reported a point with residual " + std::to_string(fs.residual));
    fs.cls = classify_point(eq, ctx, fs.f, fs.g, cfg.classify);
    if (cfg.refine && !fs.cls.classified() && !fs.cls.profile.out_of_scope) {
      FoundSolution refined;
      from_complex(sys.quad().run(to_complex(fs.f, fs.g), kQuadIterations), refined.f, refined.g);
      refined.residual = equation_residual(eq, s, ctx.sigma(), refined.f, refined.g);
      if (refined.residual <= 10 * cfg.converge_tol) {
        refined.cls = classify_point(eq, ctx, refined.f, refined.g, cfg.classify);
        if (refined.cls.classified()) {
          refined.multiplicity = fs.multiplicity;
          refined.refined = true;
          fs = std::move(refined);
        }
      }
    }
    if (fs.cls.classified()) rep.solutions.push_back(std::move(fs));
    else if (fs.cls.profile.out_of_scope) rep.out_of_scope.push_back(std::move(fs));
    else rep.unclassified.push_back(std::move(fs));
  }
  std::stable_sort(rep.solutions.begin(), rep.solutions.end(), report_less);
  std::stable_sort(rep.unclassified.begin(), rep.unclassified.end(), report_less);
  std::stable_sort(rep.out_of_scope.begin(), rep.out_of_scope.end(), report_less);
  return rep;
}

CompletenessResult check_completeness(EquationTag eq, const FiniteSemigroup& s,
                                      const Automorphism& sigma, const SolverConfig& cfg) {
  SolutionReport rep = find_all_solutions(eq, s, sigma, cfg);
  const bool pass = rep.unclassified.empty();
  return {pass, std::move(rep)};
}

std::size_t cross_breaches(const SolutionReport& from, EquationTag other, double tol) {
  std::size_t count = 0;
  for (const auto* list : {&from.solutions, &from.unclassified, &from.out_of_scope})
    for (const FoundSolution& fs : *list)
      if (!(equation_residual(other, from.semigroup, from.sigma, fs.f, fs.g) <= tol)) ++count;
  return count;
}

EquivalenceResult check_equivalence(const FiniteSemigroup& s, const Automorphism& sigma,
                                    EquationPair pair, const SolverConfig& cfg) {
  const EquationTag base = pair == EquationPair::kCos ? EquationTag::kCosSub : EquationTag::kSineAdd;
  const EquationTag var =
      pair == EquationPair::kCos ? EquationTag::kCosSubVariant : EquationTag::kSineAddVariant;
  const FamilyContext ctx(s, sigma);
  EquivalenceResult out{.base = find_all_solutions(base, ctx, cfg),
                        .variant = find_all_solutions(var, ctx, cfg)};
  const double tol = cfg.classify.class_tol;
  auto scan = [&](const SolutionReport& rep, EquationTag other) {
    for (const auto* list : {&rep.solutions, &rep.unclassified, &rep.out_of_scope})
      for (const FoundSolution& fs : *list)
        out.worst = std::max(out.worst, equation_residual(other, s, sigma, fs.f, fs.g));
    out.breaches += cross_breaches(rep, other, tol);
  };
  scan(out.base, var);
  scan(out.variant, base);
  out.pass = out.breaches == 0;
  return out;
}

void sweep(std::size_t max_order, std::span<const EquationTag> eqs, const SolverConfig& cfg,
           const std::function<void(const SolutionReport&)>& visit) {
  for (std::size_t order = 1; order <= max_order; ++order)
    for_each_semigroup(order, [&](const FiniteSemigroup& s) {
      for (const Automorphism& sigma : enumerate_automorphisms(s)) {
        const FamilyContext ctx(s, sigma);
        for (EquationTag eq : eqs) visit(find_all_solutions(eq, ctx, cfg));
      }
    });
}

}  // namespace semife
