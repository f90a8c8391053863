#include <algorithm>
#include <cmath>
#include <limits>

#include "semife/errors.hpp"
#include "semife/families.hpp"
#include "semife/linalg.hpp"

namespace semife {

namespace {

// Parameters are only rejected when exactly degenerate; tiny ones (large
// alpha, say) are legitimate and the reconstruction check decides.
constexpr double kParamFloor = 0.0;

class Matcher {
 public:
  Matcher(const FamilyContext& ctx, const CFunc& f, const CFunc& g, const ClassifyTolerances& tol)
      : ctx_(ctx), f_(f), g_(g), n_(f.size()) {
    scale_ = std::max({1.0, f.max_abs(), g.max_abs()});
    tol_ = tol.fit_tol * scale_;
  }

  double tol() const { return tol_; }

  // Accepts fc when its formula reproduces (f, g) within tolerance; keeps the
  // best miss per tag for diagnostics.
  bool try_case(const FamilyCase& fc) {
    const SolutionPair sp = evaluate_family(fc, ctx_.semigroup(), ctx_.sigma());
    const double err = std::max(max_abs_diff(sp.f, f_), max_abs_diff(sp.g, g_));
    if (!std::isfinite(err)) return false;
    note(fc.tag, err);
    if (err <= tol_) {
      match_ = fc;
      fit_error_ = err;
      return true;
    }
    return false;
  }

  void note(CaseTag tag, double err) {
    auto it = std::find_if(best_.begin(), best_.end(), [tag](const auto& p) { return p.first == tag; });
    if (it == best_.end()) best_.emplace_back(tag, err);
    else it->second = std::min(it->second, err);
  }

  // h with its S^2 entries zeroed, when those entries are within tolerance
  // and the remainder is not.
  std::optional<CFunc> off_squares(const CFunc& h) const {
    CFunc out = h;
    for (Element e = 0; e < n_; ++e) {
      if (!ctx_.squares().contains(e)) continue;
      if (std::abs(h[e]) > tol_) return std::nullopt;
      out[e] = 0.0;
    }
    if (out.is_zero(tol_)) return std::nullopt;
    return out;
  }

  // Projection of h onto a special sine space, if non-negligible.
  std::optional<CFunc> phi_from(const CFunc& h, const std::vector<CFunc>& basis) const {
    if (basis.empty()) return std::nullopt;
    Projection p = project(basis, h);
    if (p.error > tol_ || p.fitted.is_zero(tol_)) return std::nullopt;
    return std::move(p.fitted);
  }

  std::vector<CFunc> chars_with_zero() const {
    std::vector<CFunc> all = ctx_.characters();
    all.push_back(CFunc(n_));
    std::sort(all.begin(), all.end(), [](const CFunc& a, const CFunc& b) { return lex_less(a, b); });
    return all;
  }

  const FamilyContext& ctx() const { return ctx_; }
  const CFunc& f() const { return f_; }
  const CFunc& g() const { return g_; }
  std::size_t n() const { return n_; }
  const std::optional<FamilyCase>& match() const { return match_; }
  double fit_error() const { return fit_error_; }
  const std::vector<std::pair<CaseTag, double>>& best() const { return best_; }

 private:
  const FamilyContext& ctx_;
  const CFunc& f_;
  const CFunc& g_;
  std::size_t n_;
  double scale_ = 1.0;
  double tol_ = 0.0;
  std::optional<FamilyCase> match_;
  double fit_error_ = 0.0;
  std::vector<std::pair<CaseTag, double>> best_;
};

bool valid_delta(Complex d) {
  return std::abs(d) > kParamFloor && std::abs(1.0 + d * d) > kParamFloor;
}

Complex snap_i(Complex c) { return std::abs(c - kI) <= std::abs(c + kI) ? kI : -kI; }

// Sign s in {+1, -1} minimizing |diff - s * phi|.
int best_sign(const CFunc& diff, const CFunc& phi) {
  return max_abs_diff(diff, phi) <= max_abs_diff(diff, -phi) ? 1 : -1;
}

bool match_cos_sub(Matcher& m) {
  const auto& ctx = m.ctx();
  const auto& chars = ctx.characters();
  const CFunc& f = m.f();
  const CFunc& g = m.g();
  if (m.try_case({.tag = CaseTag::kTE3_1})) return true;
  if (auto g0 = m.off_squares(g)) {
    if (m.try_case({.tag = CaseTag::kTE3_2, .free_values = *g0, .c = snap_i(fit_scalar(*g0, f))}))
      return true;
  }
  for (std::size_t i : ctx.invariant()) {
    const Complex a = fit_scalar(chars[i], g);
    if (std::abs(a) <= kParamFloor) continue;
    const Complex alpha = fit_scalar(chars[i], f) / a;
    if (std::abs(1.0 + alpha * alpha) <= kParamFloor) continue;
    if (m.try_case({.tag = CaseTag::kTE3_3, .chi = chars[i], .alpha = alpha})) return true;
  }
  for (std::size_t a = 0; a < ctx.invariant().size(); ++a)
    for (std::size_t b = a + 1; b < ctx.invariant().size(); ++b) {
      const CFunc& c1 = chars[ctx.invariant()[a]];
      const CFunc& c2 = chars[ctx.invariant()[b]];
      const Complex delta = fit_scalar(f, g - c1);
      if (!valid_delta(delta)) continue;
      if (m.try_case({.tag = CaseTag::kTE3_4, .chi1 = c1, .chi2 = c2, .delta = delta})) return true;
    }
  if (auto i = ctx.find_character(g + kI * f, m.tol())) {
    if (std::find(ctx.swapped().begin(), ctx.swapped().end(), *i) != ctx.swapped().end() &&
        m.try_case({.tag = CaseTag::kTE3_5, .chi = chars[*i]}))
      return true;
  }
  for (std::size_t i : ctx.invariant()) {
    auto phi = m.phi_from(kI * f, ctx.phi_basis(i, TwistParity::kEven));
    if (!phi) continue;
    const int sign = best_sign(g - chars[i], *phi);
    if (m.try_case({.tag = CaseTag::kTE3_6, .chi = chars[i], .phi = *phi, .sign = sign})) return true;
  }
  return false;
}

bool match_sine_add(Matcher& m) {
  const auto& ctx = m.ctx();
  const auto& chars = ctx.characters();
  const CFunc& f = m.f();
  const CFunc& g = m.g();
  if (m.try_case({.tag = CaseTag::kP1_1, .free_values = g})) return true;
  if (auto f0 = m.off_squares(f)) {
    if (m.try_case({.tag = CaseTag::kP1_2, .free_values = *f0})) return true;
  }
  for (std::size_t i : ctx.invariant()) {
    const Complex b = fit_scalar(chars[i], f);
    if (std::abs(b) <= kParamFloor) continue;
    if (m.try_case({.tag = CaseTag::kP1_3, .chi = chars[i], .alpha = 1.0 / (2.0 * b)})) return true;
  }
  for (std::size_t a = 0; a < ctx.invariant().size(); ++a)
    for (std::size_t b = a + 1; b < ctx.invariant().size(); ++b) {
      const CFunc& c1 = chars[ctx.invariant()[a]];
      const CFunc& c2 = chars[ctx.invariant()[b]];
      const Complex c = fit_scalar(c1 - c2, f);
      if (std::abs(c) <= kParamFloor) continue;
      if (m.try_case({.tag = CaseTag::kP1_4, .chi1 = c1, .chi2 = c2, .c = c})) return true;
    }
  for (std::size_t i : ctx.invariant()) {
    auto phi = m.phi_from(f, ctx.phi_basis(i, TwistParity::kEven));
    if (phi && m.try_case({.tag = CaseTag::kP1_5, .chi = chars[i], .phi = *phi})) return true;
  }
  return false;
}

bool match_sine_sub(Matcher& m) {
  const auto& ctx = m.ctx();
  const auto& chars = ctx.characters();
  const CFunc& f = m.f();
  const CFunc& g = m.g();
  if (m.try_case({.tag = CaseTag::kTH3_1, .free_values = g})) return true;
  if (auto f0 = m.off_squares(f)) {
    if (m.try_case({.tag = CaseTag::kTH3_2, .free_values = *f0, .alpha = fit_scalar(*f0, g)}))
      return true;
  }
  for (std::size_t i : ctx.swapped()) {
    const CFunc& chi = chars[i];
    const CFunc star = compose_sigma(chi, ctx.sigma());
    // The family is symmetric under chi <-> chi* with (c, c1) -> (-c, -c1);
    // report the lexicographically smaller representative.
    if (lex_less(star, chi)) continue;
    const CFunc diff = chi - star;
    const Complex c = fit_scalar(diff, f);
    if (std::abs(c) <= kParamFloor) continue;
    const Complex c1 = 2.0 * fit_scalar(diff, g - (chi + star) / 2.0);
    if (m.try_case({.tag = CaseTag::kTH3_3, .chi = chi, .c = c, .c1 = c1})) return true;
  }
  for (std::size_t i : ctx.invariant()) {
    auto phi = m.phi_from(f, ctx.phi_basis(i, TwistParity::kOdd));
    if (!phi) continue;
    const Complex c2 = fit_scalar(*phi, g - chars[i]);
    if (m.try_case({.tag = CaseTag::kTH3_4, .chi = chars[i], .phi = *phi, .c2 = c2})) return true;
  }
  return false;
}

bool match_cos_add_plain(Matcher& m) {
  const auto& ctx = m.ctx();
  const auto& chars = ctx.characters();
  const CFunc& f = m.f();
  const CFunc& g = m.g();
  if (m.try_case({.tag = CaseTag::kPHI1_1})) return true;
  const auto all = m.chars_with_zero();
  for (std::size_t a = 0; a < all.size(); ++a)
    for (std::size_t b = a + 1; b < all.size(); ++b) {
      const Complex delta = fit_scalar(kI * f, all[a] - g);
      if (!valid_delta(delta)) continue;
      if (m.try_case({.tag = CaseTag::kPHI1_2, .chi1 = all[a], .chi2 = all[b], .delta = delta})) return true;
    }
  if (auto f0 = m.off_squares(f)) {
    const int sign = best_sign(g, *f0);
    if (m.try_case({.tag = CaseTag::kPHI1_3, .free_values = *f0, .sign = sign})) return true;
  }
  for (std::size_t i = 0; i < chars.size(); ++i) {
    const auto& basis = ctx.phi_basis(i, TwistParity::kAny);
    CFunc phi = basis.empty() ? CFunc(m.n()) : project(basis, f).fitted;
    if (phi.is_zero(m.tol())) phi = CFunc(m.n());
    const int sign = phi.is_zero() ? 1 : best_sign(g - chars[i], phi);
    if (m.try_case({.tag = CaseTag::kPHI1_4, .chi = chars[i], .phi = phi, .sign = sign})) return true;
  }
  return false;
}

bool match_sine_add_plain(Matcher& m) {
  const auto& ctx = m.ctx();
  const auto& chars = ctx.characters();
  const CFunc& f = m.f();
  const auto all = m.chars_with_zero();
  for (std::size_t a = 0; a < all.size(); ++a)
    for (std::size_t b = a + 1; b < all.size(); ++b) {
      const Complex c = fit_scalar(all[a] - all[b], f);
      if (std::abs(c) <= kParamFloor) continue;
      if (m.try_case({.tag = CaseTag::kPHI2_1, .chi1 = all[a], .chi2 = all[b], .c = c})) return true;
    }
  if (auto f0 = m.off_squares(f)) {
    if (m.try_case({.tag = CaseTag::kPHI2_2, .free_values = *f0})) return true;
  }
  for (std::size_t i = 0; i < chars.size(); ++i) {
    auto phi = m.phi_from(f, ctx.phi_basis(i, TwistParity::kAny));
    if (phi && m.try_case({.tag = CaseTag::kPHI2_3, .chi = chars[i], .phi = *phi})) return true;
  }
  return false;
}

}  // namespace

Classification classify(EquationTag eq, const FamilyContext& ctx, const CFunc& f, const CFunc& g,
                        const ClassifyTolerances& tol) {
  const FiniteSemigroup& s = ctx.semigroup();
  if (f.size() != s.order() || g.size() != s.order())
    throw InputError("solution tables must have length " + std::to_string(s.order()));
  Classification out;
  out.residual = equation_residual(eq, s, ctx.sigma(), f, g);
  if (!(out.residual <= tol.class_tol)) throw NotASolution(out.residual);

  Matcher m(ctx, f, g, tol);
  bool found = false;
  std::string note;
  switch (theorem_of(eq)) {
    case Theorem::kCosSub: found = match_cos_sub(m); break;
    case Theorem::kSineAdd: found = match_sine_add(m); break;
    case Theorem::kSineSub: found = match_sine_sub(m); break;
    case Theorem::kCosAddPlain: found = match_cos_add_plain(m); break;
    case Theorem::kSineAddPlain:
      if (f.is_zero(m.tol())) {
        note = "f = 0 lies outside the listed families (they assume f != 0)";
        out.profile.out_of_scope = true;
      } else {
        found = match_sine_add_plain(m);
      }
      break;
  }
  if (found) {
    out.match = m.match();
    out.fit_error = m.fit_error();
    return out;
  }

  UnclassifiedProfile& p = out.profile;
  p.residual = out.residual;
  p.f_norm = f.max_abs();
  p.g_norm = g.max_abs();
  for (Element e = 0; e < s.order(); ++e)
    if (ctx.squares().contains(e)) {
      p.f_on_squares = std::max(p.f_on_squares, std::abs(f[e]));
      p.g_on_squares = std::max(p.g_on_squares, std::abs(g[e]));
    }
  p.dependence = linear_dependence(f, g).kind;
  p.best_fit_errors = m.best();
  p.note = note.empty() ? "no family reproduces the pair" : note;
  out.fit_error = std::numeric_limits<double>::infinity();
  return out;
}

Classification classify(EquationTag eq, const FiniteSemigroup& s, const Automorphism& sigma,
                        const CFunc& f, const CFunc& g, const ClassifyTolerances& tol) {
  return classify(eq, FamilyContext(s, sigma), f, g, tol);
}

}  // namespace semife
