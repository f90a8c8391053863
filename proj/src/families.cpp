#include "semife/families.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "semife/errors.hpp"

namespace semife {

namespace {

constexpr double kSideTol = 1e-9;
constexpr double kConstructResidualTol = 1e-9;

struct CaseInfo {
  CaseTag tag;
  std::string_view name;
  Theorem thm;
};

constexpr std::array<CaseInfo, 22> kCases = {{
    {CaseTag::kTE3_1, "TE3.1", Theorem::kCosSub},
    {CaseTag::kTE3_2, "TE3.2", Theorem::kCosSub},
    {CaseTag::kTE3_3, "TE3.3", Theorem::kCosSub},
    {CaseTag::kTE3_4, "TE3.4", Theorem::kCosSub},
    {CaseTag::kTE3_5, "TE3.5", Theorem::kCosSub},
    {CaseTag::kTE3_6, "TE3.6", Theorem::kCosSub},
    {CaseTag::kP1_1, "P1.1", Theorem::kSineAdd},
    {CaseTag::kP1_2, "P1.2", Theorem::kSineAdd},
    {CaseTag::kP1_3, "P1.3", Theorem::kSineAdd},
    {CaseTag::kP1_4, "P1.4", Theorem::kSineAdd},
    {CaseTag::kP1_5, "P1.5", Theorem::kSineAdd},
    {CaseTag::kTH3_1, "TH3.1", Theorem::kSineSub},
    {CaseTag::kTH3_2, "TH3.2", Theorem::kSineSub},
    {CaseTag::kTH3_3, "TH3.3", Theorem::kSineSub},
    {CaseTag::kTH3_4, "TH3.4", Theorem::kSineSub},
    {CaseTag::kPHI1_1, "PHI1.1", Theorem::kCosAddPlain},
    {CaseTag::kPHI1_2, "PHI1.2", Theorem::kCosAddPlain},
    {CaseTag::kPHI1_3, "PHI1.3", Theorem::kCosAddPlain},
    {CaseTag::kPHI1_4, "PHI1.4", Theorem::kCosAddPlain},
    {CaseTag::kPHI2_1, "PHI2.1", Theorem::kSineAddPlain},
    {CaseTag::kPHI2_2, "PHI2.2", Theorem::kSineAddPlain},
    {CaseTag::kPHI2_3, "PHI2.3", Theorem::kSineAddPlain},
}};

const CaseInfo& info(CaseTag tag) { return kCases[static_cast<std::size_t>(tag)]; }

EquationTag primary_equation(Theorem thm) {
  switch (thm) {
    case Theorem::kCosSub: return EquationTag::kCosSub;
    case Theorem::kSineAdd: return EquationTag::kSineAdd;
    case Theorem::kSineSub: return EquationTag::kSineSub;
    case Theorem::kCosAddPlain: return EquationTag::kCosAddPlain;
    case Theorem::kSineAddPlain: return EquationTag::kSineAddPlain;
  }
  return EquationTag::kCosSub;
}

// Parameter access with presence and size checks.
class Params {
 public:
  Params(const FamilyCase& fc, std::size_t n) : fc_(fc), n_(n) {}

  const CFunc& func(const std::optional<CFunc>& p, const char* name) const {
    if (!p) throw ConstraintViolation(std::string(case_name(fc_.tag)) + " needs parameter " + name);
    if (p->size() != n_)
      throw ConstraintViolation(std::string("parameter ") + name + " has length " +
                                std::to_string(p->size()) + ", expected " + std::to_string(n_));
    return *p;
  }
  Complex scalar(const std::optional<Complex>& p, const char* name) const {
    if (!p) throw ConstraintViolation(std::string(case_name(fc_.tag)) + " needs parameter " + name);
    return *p;
  }
  int sign() const {
    if (fc_.sign != 1 && fc_.sign != -1)
      throw ConstraintViolation(std::string(case_name(fc_.tag)) + " needs sign +1 or -1");
    return fc_.sign;
  }

 private:
  const FamilyCase& fc_;
  std::size_t n_;
};

bool near(Complex a, Complex b) { return std::abs(a - b) <= kSideTol; }

void require(bool ok, const std::string& what) {
  if (!ok) throw ConstraintViolation(what);
}

void side(bool ok, const std::string& what) {
  if (!ok) throw SideConditionFailure(what);
}

class SideChecks {
 public:
  SideChecks(const FiniteSemigroup& s, const Automorphism& sigma)
      : s_(s), sigma_(sigma), squares_(square_set(s)) {}

  void multiplicative(const CFunc& chi, const char* name, bool nonzero) const {
    side(multiplicative_residual(s_, chi) <= kSideTol, std::string(name) + " is not multiplicative");
    if (nonzero) require(!chi.is_zero(kSideTol), std::string(name) + " must be non-zero");
  }
  void invariant(const CFunc& chi, const char* name) const {
    side(max_abs_diff(compose_sigma(chi, sigma_), chi) <= kSideTol,
         std::string(name) + " o sigma != " + name);
  }
  void swapped(const CFunc& chi) const {
    side(max_abs_diff(compose_sigma(chi, sigma_), chi) > kSideTol, "chi o sigma must differ from chi");
    const Automorphism sigma2 = automorphism_power(sigma_, 2);
    side(max_abs_diff(compose_sigma(chi, sigma2), chi) <= kSideTol, "chi o sigma^2 != chi");
  }
  void special_sine(const CFunc& chi, const CFunc& phi, TwistParity parity, bool nonzero) const {
    side(special_sine_residual(s_, chi, phi) <= kSideTol, "phi does not solve the special sine law");
    if (nonzero) require(!phi.is_zero(kSideTol), "phi must be non-zero");
    const CFunc twisted = compose_sigma(phi, sigma_);
    if (parity == TwistParity::kEven) side(max_abs_diff(twisted, phi) <= kSideTol, "phi o sigma != phi");
    if (parity == TwistParity::kOdd) side(max_abs_diff(twisted, -phi) <= kSideTol, "phi o sigma != -phi");
  }
  void vanishes_on_squares(const CFunc& h, const char* name) const {
    require(!h.is_zero(kSideTol), std::string(name) + " must be non-zero");
    for (Element e = 0; e < s_.order(); ++e)
      if (squares_.contains(e))
        side(std::abs(h[e]) <= kSideTol, std::string(name) + " must vanish on S^2");
  }

 private:
  const FiniteSemigroup& s_;
  const Automorphism& sigma_;
  SquareSet squares_;
};

void check_case(const FamilyCase& fc, const FiniteSemigroup& s, const Automorphism& sigma) {
  const Params p(fc, s.order());
  const SideChecks chk(s, sigma);
  switch (fc.tag) {
    case CaseTag::kTE3_1:
    case CaseTag::kPHI1_1:
      break;
    case CaseTag::kTE3_2: {
      const Complex c = p.scalar(fc.c, "c");
      require(near(c, kI) || near(c, -kI), "c must be i or -i");
      chk.vanishes_on_squares(p.func(fc.free_values, "free_values"), "g");
      break;
    }
    case CaseTag::kTE3_3: {
      const Complex a = p.scalar(fc.alpha, "alpha");
      require(!near(a, kI) && !near(a, -kI), "alpha must not be i or -i");
      const CFunc& chi = p.func(fc.chi, "chi");
      chk.multiplicative(chi, "chi", true);
      chk.invariant(chi, "chi");
      break;
    }
    case CaseTag::kTE3_4:
    case CaseTag::kPHI1_2: {
      const Complex d = p.scalar(fc.delta, "delta");
      require(!near(d, 0.0) && !near(d, kI) && !near(d, -kI), "delta must avoid 0, i, -i");
      const CFunc& c1 = p.func(fc.chi1, "chi1");
      const CFunc& c2 = p.func(fc.chi2, "chi2");
      require(max_abs_diff(c1, c2) > kSideTol, "chi1 and chi2 must differ");
      const bool twisted = fc.tag == CaseTag::kTE3_4;
      // A zero character collapses the twisted family onto the proportional case.
      chk.multiplicative(c1, "chi1", twisted);
      chk.multiplicative(c2, "chi2", twisted);
      if (twisted) {
        chk.invariant(c1, "chi1");
        chk.invariant(c2, "chi2");
      }
      break;
    }
    case CaseTag::kTE3_5: {
      const CFunc& chi = p.func(fc.chi, "chi");
      chk.multiplicative(chi, "chi", true);
      chk.swapped(chi);
      break;
    }
    case CaseTag::kTE3_6:
    case CaseTag::kP1_5:
    case CaseTag::kTH3_4: {
      if (fc.tag == CaseTag::kTE3_6) p.sign();
      if (fc.tag == CaseTag::kTH3_4) p.scalar(fc.c2, "c2");
      const CFunc& chi = p.func(fc.chi, "chi");
      chk.multiplicative(chi, "chi", true);
      chk.invariant(chi, "chi");
      const TwistParity parity = fc.tag == CaseTag::kTH3_4 ? TwistParity::kOdd : TwistParity::kEven;
      chk.special_sine(chi, p.func(fc.phi, "phi"), parity, true);
      break;
    }
    case CaseTag::kP1_1:
    case CaseTag::kTH3_1:
      p.func(fc.free_values, "free_values");
      break;
    case CaseTag::kP1_2:
    case CaseTag::kPHI2_2:
      chk.vanishes_on_squares(p.func(fc.free_values, "free_values"), "f");
      break;
    case CaseTag::kTH3_2:
      p.scalar(fc.alpha, "alpha");
      chk.vanishes_on_squares(p.func(fc.free_values, "free_values"), "f");
      break;
    case CaseTag::kPHI1_3:
      p.sign();
      chk.vanishes_on_squares(p.func(fc.free_values, "free_values"), "f");
      break;
    case CaseTag::kP1_3: {
      require(!near(p.scalar(fc.alpha, "alpha"), 0.0), "alpha must be non-zero");
      const CFunc& chi = p.func(fc.chi, "chi");
      chk.multiplicative(chi, "chi", true);
      chk.invariant(chi, "chi");
      break;
    }
    case CaseTag::kP1_4:
    case CaseTag::kPHI2_1: {
      require(!near(p.scalar(fc.c, "c"), 0.0), "c must be non-zero");
      const CFunc& c1 = p.func(fc.chi1, "chi1");
      const CFunc& c2 = p.func(fc.chi2, "chi2");
      require(max_abs_diff(c1, c2) > kSideTol, "chi1 and chi2 must differ");
      const bool twisted = fc.tag == CaseTag::kP1_4;
      chk.multiplicative(c1, "chi1", twisted);
      chk.multiplicative(c2, "chi2", twisted);
      if (twisted) {
        chk.invariant(c1, "chi1");
        chk.invariant(c2, "chi2");
      }
      break;
    }
    case CaseTag::kTH3_3: {
      require(!near(p.scalar(fc.c, "c"), 0.0), "c must be non-zero");
      p.scalar(fc.c1, "c1");
      const CFunc& chi = p.func(fc.chi, "chi");
      chk.multiplicative(chi, "chi", true);
      chk.swapped(chi);
      break;
    }
    case CaseTag::kPHI1_4: {
      p.sign();
      const CFunc& chi = p.func(fc.chi, "chi");
      chk.multiplicative(chi, "chi", true);
      chk.special_sine(chi, p.func(fc.phi, "phi"), TwistParity::kAny, false);
      break;
    }
    case CaseTag::kPHI2_3: {
      const CFunc& chi = p.func(fc.chi, "chi");
      chk.multiplicative(chi, "chi", true);
      chk.special_sine(chi, p.func(fc.phi, "phi"), TwistParity::kAny, true);
      break;
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------

Theorem theorem_of(EquationTag eq) {
  switch (eq) {
    case EquationTag::kCosSub:
    case EquationTag::kCosSubVariant: return Theorem::kCosSub;
    case EquationTag::kSineAdd:
    case EquationTag::kSineAddVariant: return Theorem::kSineAdd;
    case EquationTag::kSineSub: return Theorem::kSineSub;
    case EquationTag::kCosAddPlain: return Theorem::kCosAddPlain;
    case EquationTag::kSineAddPlain: return Theorem::kSineAddPlain;
  }
  return Theorem::kCosSub;
}

std::string_view case_name(CaseTag tag) { return info(tag).name; }

std::optional<CaseTag> parse_case(std::string_view name) {
  for (const CaseInfo& c : kCases)
    if (c.name == name) return c.tag;
  return std::nullopt;
}

Theorem theorem_of(CaseTag tag) { return info(tag).thm; }

std::vector<CaseTag> cases_of(Theorem thm) {
  std::vector<CaseTag> out;
  for (const CaseInfo& c : kCases)
    if (c.thm == thm) out.push_back(c.tag);
  return out;
}

FamilyContext::FamilyContext(FiniteSemigroup s, Automorphism sigma)
    : s_(std::move(s)), sigma_(std::move(sigma)), squares_(square_set(s_)) {
  for (auto& m : enumerate_multiplicative(s_)) chars_.push_back(std::move(m.chi));
  const Automorphism sigma2 = automorphism_power(sigma_, 2);
  for (std::size_t i = 0; i < chars_.size(); ++i) {
    const CFunc& chi = chars_[i];
    const bool inv = max_abs_diff(compose_sigma(chi, sigma_), chi) <= kSideTol;
    if (inv) invariant_.push_back(i);
    else if (max_abs_diff(compose_sigma(chi, sigma2), chi) <= kSideTol) swapped_.push_back(i);
    phi_any_.push_back(solve_special_sine(s_, chi));
    phi_even_.push_back(solve_special_sine(s_, chi, sigma_, TwistParity::kEven));
    phi_odd_.push_back(solve_special_sine(s_, chi, sigma_, TwistParity::kOdd));
  }
}

const std::vector<CFunc>& FamilyContext::phi_basis(std::size_t i, TwistParity parity) const {
  switch (parity) {
    case TwistParity::kEven: return phi_even_[i];
    case TwistParity::kOdd: return phi_odd_[i];
    case TwistParity::kAny: break;
  }
  return phi_any_[i];
}

std::optional<std::size_t> FamilyContext::find_character(const CFunc& chi, double tol) const {
  for (std::size_t i = 0; i < chars_.size(); ++i)
    if (max_abs_diff(chars_[i], chi) <= tol) return i;
  return std::nullopt;
}

SolutionPair evaluate_family(const FamilyCase& fc, const FiniteSemigroup& s,
                             const Automorphism& sigma) {
  const std::size_t n = s.order();
  const CFunc zero(n);
  auto twisted = [&](const CFunc& chi) { return compose_sigma(chi, sigma); };
  switch (fc.tag) {
    case CaseTag::kTE3_1:
    case CaseTag::kPHI1_1:
      return {zero, zero};
    case CaseTag::kTE3_2:
      return {*fc.c * *fc.free_values, *fc.free_values};
    case CaseTag::kTE3_3: {
      const Complex k = 1.0 / (1.0 + *fc.alpha * *fc.alpha);
      return {*fc.alpha * k * *fc.chi, k * *fc.chi};
    }
    case CaseTag::kTE3_4: {
      const Complex d = *fc.delta;
      const Complex den = 1.0 / d + d;
      return {(*fc.chi2 - *fc.chi1) / den, ((1.0 / d) * *fc.chi1 + d * *fc.chi2) / den};
    }
    case CaseTag::kPHI1_2: {
      const Complex d = *fc.delta;
      const Complex den = 1.0 / d + d;
      return {(*fc.chi1 - *fc.chi2) / (kI * den), ((1.0 / d) * *fc.chi1 + d * *fc.chi2) / den};
    }
    case CaseTag::kTE3_5: {
      const CFunc star = twisted(*fc.chi);
      return {(*fc.chi - star) / (2.0 * kI), (*fc.chi + star) / 2.0};
    }
    case CaseTag::kTE3_6:
      return {-kI * *fc.phi, *fc.chi + static_cast<double>(fc.sign) * *fc.phi};
    case CaseTag::kP1_1:
    case CaseTag::kTH3_1:
      return {zero, *fc.free_values};
    case CaseTag::kP1_2:
    case CaseTag::kPHI2_2:
      return {*fc.free_values, zero};
    case CaseTag::kP1_3:
      return {*fc.chi / (2.0 * *fc.alpha), *fc.chi / 2.0};
    case CaseTag::kP1_4:
    case CaseTag::kPHI2_1:
      return {*fc.c * (*fc.chi1 - *fc.chi2), (*fc.chi1 + *fc.chi2) / 2.0};
    case CaseTag::kP1_5:
    case CaseTag::kPHI2_3:
      return {*fc.phi, *fc.chi};
    case CaseTag::kTH3_2:
      return {*fc.free_values, *fc.alpha * *fc.free_values};
    case CaseTag::kTH3_3: {
      const CFunc star = twisted(*fc.chi);
      const CFunc diff = *fc.chi - star;
      return {*fc.c * diff, (*fc.chi + star) / 2.0 + (*fc.c1 / 2.0) * diff};
    }
    case CaseTag::kTH3_4:
      return {*fc.phi, *fc.chi + *fc.c2 * *fc.phi};
    case CaseTag::kPHI1_3:
      return {*fc.free_values, static_cast<double>(fc.sign) * *fc.free_values};
    case CaseTag::kPHI1_4:
      return {*fc.phi, *fc.chi + static_cast<double>(fc.sign) * *fc.phi};
  }
  return {zero, zero};
}

SolutionPair construct(const FamilyCase& fc, const FiniteSemigroup& s, const Automorphism& sigma) {
  check_case(fc, s, sigma);
  SolutionPair out = evaluate_family(fc, s, sigma);
  const double scale = std::max({1.0, out.f.max_abs(), out.g.max_abs()});
  const double r = equation_residual(primary_equation(theorem_of(fc.tag)), s, sigma, out.f, out.g);
  if (!(r <= kConstructResidualTol * scale * scale))
    throw ResidualFailure(std::string(case_name(fc.tag)) + " member has residual " + std::to_string(r));
  return out;
}

SolutionPair construct(const FamilyCase& fc, const FamilyContext& ctx) {
  return construct(fc, ctx.semigroup(), ctx.sigma());
}

MultiplicativeFunction lemma_m_reduce(const FiniteSemigroup& s, const Automorphism& sigma,
                                      const CFunc& f, Complex beta, double tol) {
  if (f.size() != s.order()) throw InputError("f has the wrong length");
  if (f.is_zero(kZeroTol)) throw HypothesisFailure("f must be non-zero");
  if (std::abs(beta) <= kZeroTol) throw HypothesisFailure("beta must be non-zero");
  double premise = 0.0;
  for (Element x = 0; x < s.order(); ++x)
    for (Element y = 0; y < s.order(); ++y)
      premise = std::max(premise, std::abs(f[s.product(x, sigma(y))] - beta * f[x] * f[y]));
  if (premise > tol)
    throw HypothesisFailure("f(x sigma(y)) = beta f(x) f(y) fails by " + std::to_string(premise));
  CFunc chi = beta * f;
  const double mult = multiplicative_residual(s, chi);
  const double twist = max_abs_diff(compose_sigma(chi, sigma), chi);
  if (mult > tol || twist > tol)
    throw ResidualFailure("reduced function fails its certificate (multiplicative " +
                          std::to_string(mult) + ", twist " + std::to_string(twist) + ")");
  return {std::move(chi), mult};
}

SymmetryReport check_symmetry_lemmas(EquationTag eq, const FiniteSemigroup& s,
                                     const Automorphism& sigma, const CFunc& f, const CFunc& g,
                                     double tol, double class_tol) {
  const double r = equation_residual(eq, s, sigma, f, g);
  if (r > class_tol) throw NotASolution(r);
  SymmetryReport rep;
  rep.eq = eq;
  rep.applicable = uses_sigma(eq);
  const Dependence dep = linear_dependence(f, g);
  rep.dependence = dep.kind;
  rep.independent = dep.kind == Dependence::Kind::kIndependent;
  const CFunc fs = compose_sigma(f, sigma);
  const CFunc gs = compose_sigma(g, sigma);
  rep.f_even_dev = max_abs_diff(fs, f);
  rep.f_odd_dev = max_abs_diff(fs, -f);
  rep.g_even_dev = max_abs_diff(gs, g);
  if (!rep.applicable) {
    rep.conclusion = "not applicable: equation ignores sigma";
    return rep;
  }
  if (!rep.independent) {
    rep.conclusion = std::string("not applicable: f and g are ") + to_string(dep.kind);
    return rep;
  }
  switch (theorem_of(eq)) {
    case Theorem::kCosSub:
      rep.holds = rep.g_even_dev <= tol && (rep.f_even_dev <= tol || rep.f_odd_dev <= tol);
      rep.conclusion = rep.f_even_dev <= tol ? "g* = g, f* = f" : "g* = g, f* = -f";
      break;
    case Theorem::kSineAdd:
      rep.holds = rep.g_even_dev <= tol && rep.f_even_dev <= tol;
      rep.conclusion = "g* = g, f* = f";
      break;
    case Theorem::kSineSub:
      rep.beta = fit_scalar(f, gs - g);
      rep.beta_dev = max_abs_diff(gs - g, rep.beta * f);
      rep.holds = rep.f_odd_dev <= tol && rep.beta_dev <= tol;
      rep.conclusion = "f* = -f, g* = g + beta f";
      break;
    default:
      break;
  }
  if (!rep.holds) rep.conclusion = "VIOLATED: expected " + rep.conclusion;
  return rep;
}

// ---------------------------------------------------------------------------
// Instance sampling

namespace {

// Deterministic non-trivial values on the given elements, zero elsewhere.
CFunc pattern(std::size_t n, const std::vector<bool>& where, double phase) {
  CFunc out(n);
  for (std::size_t x = 0; x < n; ++x)
    if (where[x]) out[x] = std::polar(0.4 + 0.3 * static_cast<double>(x % 3), phase + 1.3 * static_cast<double>(x));
  return out;
}

std::vector<CFunc> phi_choices(const std::vector<CFunc>& basis) {
  std::vector<CFunc> out;
  if (basis.empty()) return out;
  out.push_back(basis.front());
  if (basis.size() > 1) {
    CFunc sum = basis.front();
    for (std::size_t i = 1; i < basis.size(); ++i) sum += (0.5 + 0.25 * static_cast<double>(i)) * basis[i];
    out.push_back(std::move(sum));
  }
  return out;
}

}  // namespace

std::vector<FamilyCase> sample_instances(Theorem thm, const FamilyContext& ctx) {
  const std::size_t n = ctx.semigroup().order();
  const auto& chars = ctx.characters();
  std::vector<bool> outside(n), everywhere(n, true);
  bool has_outside = false;
  for (Element e = 0; e < n; ++e) {
    outside[e] = !ctx.squares().contains(e);
    has_outside = has_outside || outside[e];
  }

  std::vector<FamilyCase> out;
  auto add = [&](FamilyCase fc) { out.push_back(std::move(fc)); };
  auto invariant_pairs = [&](auto&& fn) {
    for (std::size_t a = 0; a < ctx.invariant().size(); ++a)
      for (std::size_t b = a + 1; b < ctx.invariant().size(); ++b)
        fn(chars[ctx.invariant()[a]], chars[ctx.invariant()[b]]);
  };
  // Pairs among all multiplicative functions including zero, canonical order.
  auto all_pairs = [&](auto&& fn) {
    std::vector<CFunc> all = chars;
    all.push_back(CFunc(n));
    std::sort(all.begin(), all.end(), [](const CFunc& a, const CFunc& b) { return lex_less(a, b); });
    for (std::size_t a = 0; a < all.size(); ++a)
      for (std::size_t b = a + 1; b < all.size(); ++b) fn(all[a], all[b]);
  };

  switch (thm) {
    case Theorem::kCosSub:
      add({.tag = CaseTag::kTE3_1});
      if (has_outside)
        for (Complex c : {kI, -kI}) add({.tag = CaseTag::kTE3_2, .free_values = pattern(n, outside, 0.2), .c = c});
      for (std::size_t i : ctx.invariant())
        for (Complex a : {Complex{0.0}, Complex{2.0}, Complex{0.5, -0.3}})
          add({.tag = CaseTag::kTE3_3, .chi = chars[i], .alpha = a});
      invariant_pairs([&](const CFunc& c1, const CFunc& c2) {
        for (Complex d : {Complex{2.0}, Complex{0.6, 0.5}})
          add({.tag = CaseTag::kTE3_4, .chi1 = c1, .chi2 = c2, .delta = d});
      });
      for (std::size_t i : ctx.swapped()) add({.tag = CaseTag::kTE3_5, .chi = chars[i]});
      for (std::size_t i : ctx.invariant())
        for (const CFunc& phi : phi_choices(ctx.phi_basis(i, TwistParity::kEven)))
          for (int sign : {1, -1}) add({.tag = CaseTag::kTE3_6, .chi = chars[i], .phi = phi, .sign = sign});
      break;
    case Theorem::kSineAdd:
      add({.tag = CaseTag::kP1_1, .free_values = pattern(n, everywhere, 0.7)});
      if (has_outside) add({.tag = CaseTag::kP1_2, .free_values = pattern(n, outside, -0.4)});
      for (std::size_t i : ctx.invariant())
        for (Complex a : {Complex{1.0}, Complex{-0.4, 0.8}})
          add({.tag = CaseTag::kP1_3, .chi = chars[i], .alpha = a});
      invariant_pairs([&](const CFunc& c1, const CFunc& c2) {
        for (Complex c : {Complex{1.0}, Complex{0.0, 0.5}})
          add({.tag = CaseTag::kP1_4, .chi1 = c1, .chi2 = c2, .c = c});
      });
      for (std::size_t i : ctx.invariant())
        for (const CFunc& phi : phi_choices(ctx.phi_basis(i, TwistParity::kEven)))
          add({.tag = CaseTag::kP1_5, .chi = chars[i], .phi = phi});
      break;
    case Theorem::kSineSub:
      add({.tag = CaseTag::kTH3_1, .free_values = pattern(n, everywhere, 1.1)});
      if (has_outside)
        for (Complex a : {Complex{0.0}, Complex{0.0, 1.5}})
          add({.tag = CaseTag::kTH3_2, .free_values = pattern(n, outside, 0.9), .alpha = a});
      for (std::size_t i : ctx.swapped()) {
        if (lex_less(compose_sigma(chars[i], ctx.sigma()), chars[i])) continue;
        for (Complex c1 : {Complex{0.0}, Complex{0.3, -0.2}})
          add({.tag = CaseTag::kTH3_3, .chi = chars[i], .c = Complex{0.8, 0.1}, .c1 = c1});
      }
      for (std::size_t i : ctx.invariant())
        for (const CFunc& phi : phi_choices(ctx.phi_basis(i, TwistParity::kOdd)))
          for (Complex c2 : {Complex{0.0}, Complex{0.7}})
            add({.tag = CaseTag::kTH3_4, .chi = chars[i], .phi = phi, .c2 = c2});
      break;
    case Theorem::kCosAddPlain:
      add({.tag = CaseTag::kPHI1_1});
      all_pairs([&](const CFunc& c1, const CFunc& c2) {
        add({.tag = CaseTag::kPHI1_2, .chi1 = c1, .chi2 = c2, .delta = Complex{2.0}});
      });
      if (has_outside)
        for (int sign : {1, -1}) add({.tag = CaseTag::kPHI1_3, .free_values = pattern(n, outside, 0.3), .sign = sign});
      for (std::size_t i = 0; i < chars.size(); ++i) {
        add({.tag = CaseTag::kPHI1_4, .chi = chars[i], .phi = CFunc(n), .sign = 1});
        for (const CFunc& phi : phi_choices(ctx.phi_basis(i, TwistParity::kAny)))
          for (int sign : {1, -1}) add({.tag = CaseTag::kPHI1_4, .chi = chars[i], .phi = phi, .sign = sign});
      }
      break;
    case Theorem::kSineAddPlain:
      all_pairs([&](const CFunc& c1, const CFunc& c2) {
        add({.tag = CaseTag::kPHI2_1, .chi1 = c1, .chi2 = c2, .c = Complex{0.5, 0.5}});
      });
      if (has_outside) add({.tag = CaseTag::kPHI2_2, .free_values = pattern(n, outside, -1.0)});
      for (std::size_t i = 0; i < chars.size(); ++i)
        for (const CFunc& phi : phi_choices(ctx.phi_basis(i, TwistParity::kAny)))
          add({.tag = CaseTag::kPHI2_3, .chi = chars[i], .phi = phi});
      break;
  }
  return out;
}

}  // namespace semife
