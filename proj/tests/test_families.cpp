#include <doctest.h>

#include "semife/errors.hpp"
#include "semife/families.hpp"
#include "semife/json_io.hpp"
#include "support.hpp"

using namespace semife;
using namespace semife::testing;

namespace {

// g is free (f = 0, g arbitrary)
bool free_g(CaseTag t) { return t == CaseTag::kP1_1 || t == CaseTag::kTH3_1; }

}  // namespace

TEST_SUITE("families") {

TEST_CASE("case names round trip") {
  for (Theorem thm : kTheorems)
    for (CaseTag t : cases_of(thm)) {
      CHECK(parse_case(case_name(t)) == t);
      CHECK(theorem_of(t) == thm);
    }
  CHECK_FALSE(parse_case("TE9.9").has_value());
  CHECK(case_name(CaseTag::kTE3_5) == "TE3.5");
}

TEST_CASE("equation residual examples") {
  const auto z2 = fixture("z2");
  CHECK(equation_residual(EquationTag::kCosSub, z2.s, z2.sigma, CFunc{1.0, 1.0}, CFunc{1.0, 1.0}) == 1.0);
  Gen gen(1);
  for (const auto& fx : fixtures()) {
    const CFunc g = gen.cfunc(fx.s.order());
    CHECK(equation_residual(EquationTag::kSineAdd, fx.s, fx.sigma, CFunc(fx.s.order()), g) == 0.0);
  }
  const auto t3 = fixture("t3");
  const CFunc chi{1.0, 0.0, 0.0}, phi{0.0, 1.0, 0.0};
  CHECK(equation_residual(EquationTag::kCosSub, t3.s, t3.sigma, -kI * phi, chi + phi) <= 1e-12);
}

TEST_CASE("equation residual agrees with the direct formulas") {
  Gen gen(2);
  for (const auto& fx : fixtures())
    for (EquationTag eq : kAllEquations)
      for (int i = 0; i < 5; ++i) {
        const CFunc f = gen.cfunc(fx.s.order()), g = gen.cfunc(fx.s.order());
        CHECK(equation_residual(eq, fx.s, fx.sigma, f, g) ==
              doctest::Approx(naive_residual(eq, fx.s, fx.sigma, f, g)).epsilon(1e-12));
      }
}

TEST_CASE("construct examples") {
  const auto rz3 = fixture("rz3");
  const auto te33 = construct({.tag = CaseTag::kTE3_3, .chi = CFunc{1.0, 1.0, 1.0}, .alpha = 1.0}, rz3.s, rz3.sigma);
  CHECK(max_abs_diff(te33.f, CFunc(3, 0.5)) <= 1e-15);
  CHECK(max_abs_diff(te33.g, CFunc(3, 0.5)) <= 1e-15);
  CHECK(equation_residual(EquationTag::kCosSub, rz3.s, rz3.sigma, te33.f, te33.g) == 0.0);

  const auto te31 = construct({.tag = CaseTag::kTE3_1}, rz3.s, rz3.sigma);
  CHECK(te31.f.is_zero());
  CHECK(te31.g.is_zero());

  const auto z15 = fixture("z15");
  const CFunc chi = cyclic_character(15, 5);
  const auto te35 = construct({.tag = CaseTag::kTE3_5, .chi = chi}, z15.s, z15.sigma);
  const CFunc star = compose_sigma(chi, z15.sigma);
  CHECK(max_abs_diff(star, chi) > 0.5);
  CHECK(max_abs_diff(compose_sigma(star, z15.sigma), chi) <= 1e-12);
  CHECK(max_abs_diff(te35.g, (chi + star) / 2.0) <= 1e-12);
  CHECK(max_abs_diff(te35.f, (chi - star) / (2.0 * kI)) <= 1e-12);
  CHECK(naive_residual(EquationTag::kCosSub, z15.s, z15.sigma, te35.f, te35.g) <= 1e-12);

  const auto s4 = fixture("s4");
  const CFunc phi{0.0, 1.0, -1.0, 0.0};
  const auto th34 = construct(
      {.tag = CaseTag::kTH3_4, .chi = CFunc{1.0, 0.0, 0.0, 0.0}, .phi = phi, .c2 = 0.0}, s4.s, s4.sigma);
  CHECK(max_abs_diff(th34.f, phi) <= 1e-15);
  CHECK(max_abs_diff(th34.g, CFunc{1.0, 0.0, 0.0, 0.0}) <= 1e-15);
  CHECK(max_abs_diff(compose_sigma(phi, s4.sigma), -phi) == 0.0);
  CHECK(naive_residual(EquationTag::kSineSub, s4.s, s4.sigma, th34.f, th34.g) <= 1e-12);
}

TEST_CASE("construct rejects bad parameters") {
  const auto z15 = fixture("z15");
  const auto rz3 = fixture("rz3");
  const CFunc one(3, 1.0);
  CHECK_THROWS_AS(construct({.tag = CaseTag::kTE3_3, .chi = one, .alpha = kI}, rz3.s, rz3.sigma),
                  ConstraintViolation);
  CHECK_THROWS_AS(construct({.tag = CaseTag::kTE3_3, .chi = one}, rz3.s, rz3.sigma), ConstraintViolation);
  CHECK_THROWS_AS(construct({.tag = CaseTag::kTE3_3, .chi = CFunc{1.0, 2.0, 3.0}, .alpha = 1.0}, rz3.s, rz3.sigma),
                  SideConditionFailure);
  // an invariant character cannot feed the swapped family
  CHECK_THROWS_AS(construct({.tag = CaseTag::kTE3_5, .chi = CFunc(15, 1.0)}, z15.s, z15.sigma),
                  SideConditionFailure);
  // j = 1: chi o sigma^2 = chi_4 != chi
  CHECK_THROWS_AS(construct({.tag = CaseTag::kTE3_5, .chi = cyclic_character(15, 1)}, z15.s, z15.sigma),
                  SideConditionFailure);
  const auto n2 = fixture("n2");
  CHECK_THROWS_AS(construct({.tag = CaseTag::kTE3_2, .free_values = CFunc{1.0, 1.0}, .c = kI}, n2.s, n2.sigma),
                  SideConditionFailure);
  CHECK_THROWS_AS(construct({.tag = CaseTag::kTE3_2, .free_values = CFunc{0.0, 1.0}, .c = 2.0}, n2.s, n2.sigma),
                  ConstraintViolation);
  const auto s4 = fixture("s4");
  CHECK_THROWS_AS(construct({.tag = CaseTag::kTH3_4, .chi = CFunc{1.0, 0.0, 0.0, 0.0},
                             .phi = CFunc{0.0, 1.0, 1.0, 0.0}, .c2 = 0.0},
                            s4.s, s4.sigma),
                  SideConditionFailure);
}

TEST_CASE("lemma M examples") {
  const auto rz3 = fixture("rz3");
  const auto r = lemma_m_reduce(rz3.s, rz3.sigma, CFunc(3, 1.0 / 3.0), 3.0);
  CHECK(max_abs_diff(r.chi, CFunc(3, 1.0)) <= 1e-12);
  const auto z2 = fixture("z2");
  const auto r2 = lemma_m_reduce(z2.s, z2.sigma, CFunc{1.0, -1.0}, 1.0);
  CHECK(max_abs_diff(r2.chi, CFunc{1.0, -1.0}) <= 1e-12);
  CHECK(naive_mult_residual(z2.s, r2.chi) <= 1e-12);
  CHECK_THROWS_AS(lemma_m_reduce(z2.s, z2.sigma, CFunc(2), 1.0), HypothesisFailure);
  CHECK_THROWS_AS(lemma_m_reduce(z2.s, z2.sigma, CFunc{1.0, 2.0}, 1.0), HypothesisFailure);
}

TEST_CASE("lemma M round trip on every fixture") {
  for (const auto& fx : fixtures())
    for (const auto& m : enumerate_multiplicative(fx.s)) {
      if (max_abs_diff(compose_sigma(m.chi, fx.sigma), m.chi) > 1e-12) continue;
      for (Complex beta : {Complex{1.0}, Complex{3.0}, Complex{0.0, -2.0}}) {
        const auto r = lemma_m_reduce(fx.s, fx.sigma, m.chi / beta, beta);
        CHECK(max_abs_diff(r.chi, m.chi) <= 1e-10);
        CHECK(r.residual <= 1e-10);
      }
    }
}

TEST_CASE("classify examples") {
  Gen gen(4);
  for (const auto& fx : fixtures()) {
    const auto c = classify(EquationTag::kSineAdd, fx.s, fx.sigma, CFunc(fx.s.order()), gen.cfunc(fx.s.order()));
    REQUIRE(c.classified());
    CHECK(c.match->tag == CaseTag::kP1_1);
  }
  const auto n2 = fixture("n2");
  const auto c = classify(EquationTag::kCosSub, n2.s, n2.sigma, CFunc{0.0, kI}, CFunc{0.0, 1.0});
  REQUIRE(c.classified());
  CHECK(c.match->tag == CaseTag::kTE3_2);
  CHECK(std::abs(*c.match->c - kI) <= 1e-12);

  const auto z15 = fixture("z15");
  const auto pair = construct({.tag = CaseTag::kTE3_5, .chi = cyclic_character(15, 5)}, z15.s, z15.sigma);
  const auto c35 = classify(EquationTag::kCosSub, z15.s, z15.sigma, pair.f, pair.g);
  REQUIRE(c35.classified());
  CHECK(c35.match->tag == CaseTag::kTE3_5);
  CHECK(max_abs_diff(*c35.match->chi, cyclic_character(15, 5)) <= 1e-9);
}

TEST_CASE("classify refuses non-solutions and reports unclassified profiles at tight tolerances") {
  const auto z2 = fixture("z2");
  CHECK_THROWS_AS(classify(EquationTag::kCosSub, z2.s, z2.sigma, CFunc{1.0, 1.0}, CFunc{1.0, 1.0}), NotASolution);
  const auto rz3 = fixture("rz3");
  auto pair = construct({.tag = CaseTag::kTE3_3, .chi = CFunc(3, 1.0), .alpha = 2.0}, rz3.s, rz3.sigma);
  pair.f[0] += 1e-9;
  const auto c = classify(EquationTag::kCosSub, rz3.s, rz3.sigma, pair.f, pair.g, {.class_tol = 1e-7, .fit_tol = 1e-15});
  CHECK_FALSE(c.classified());
  CHECK(c.profile.best_fit_errors.size() > 0);
  CHECK_THROWS_AS(classify(EquationTag::kCosSub, rz3.s, rz3.sigma, pair.f, pair.g, {.class_tol = 1e-15}),
                  NotASolution);
}

TEST_CASE("every sample instance constructs, round trips and keeps its own case") {
  for (const auto& fx : fixtures()) {
    const FamilyContext ctx(fx.s, fx.sigma);
    for (Theorem thm : kTheorems) {
      const auto samples = sample_instances(thm, ctx);
      CHECK(!samples.empty());
      for (const FamilyCase& fc : samples) {
        CAPTURE(fx.name);
        CAPTURE(case_name(fc.tag));
        const SolutionPair p = construct(fc, ctx);
        for (EquationTag eq : equations_of(thm)) {
          CHECK(naive_residual(eq, fx.s, fx.sigma, p.f, p.g) <= 1e-9);
          if (thm == Theorem::kSineAddPlain && p.f.is_zero(1e-12)) continue;
          const Classification c = classify(eq, ctx, p.f, p.g);
          REQUIRE(c.classified());
          CHECK(c.match->tag == fc.tag);
          const SolutionPair back = evaluate_family(*c.match, fx.s, fx.sigma);
          CHECK(max_abs_diff(back.f, p.f) <= 1e-8);
          CHECK(max_abs_diff(back.g, p.g) <= 1e-8);
          // the fitted parameters themselves construct cleanly
          CHECK_NOTHROW(construct(*c.match, ctx));
        }
      }
    }
  }
}

TEST_CASE("sample instances for the twisted and plain equations are abelian") {
  for (const auto& fx : fixtures()) {
    const FamilyContext ctx(fx.s, fx.sigma);
    for (Theorem thm : kTheorems) {
      if (thm == Theorem::kCosAddPlain || thm == Theorem::kSineAddPlain) continue;
      for (const FamilyCase& fc : sample_instances(thm, ctx)) {
        if (free_g(fc.tag)) continue;
        const SolutionPair p = construct(fc, ctx);
        CAPTURE(case_name(fc.tag));
        CHECK(naive_abelian(fx.s, p.f, 1e-9));
        CHECK(naive_abelian(fx.s, p.g, 1e-9));
        CHECK(is_abelian(p.f, fx.s));
        CHECK(is_abelian(p.g, fx.s));
      }
    }
  }
}

TEST_CASE("symmetry examples") {
  const auto z2 = fixture("z2");
  const auto p = construct(
      {.tag = CaseTag::kTE3_4, .chi1 = CFunc{1.0, -1.0}, .chi2 = CFunc{1.0, 1.0}, .delta = 2.0}, z2.s, z2.sigma);
  const auto r = check_symmetry_lemmas(EquationTag::kCosSub, z2.s, z2.sigma, p.f, p.g);
  CHECK(r.applicable);
  CHECK(r.independent);
  CHECK(r.holds);
  CHECK(r.g_even_dev <= 1e-12);
  CHECK(r.f_even_dev <= 1e-12);

  const auto z15 = fixture("z15");
  const auto q = construct({.tag = CaseTag::kTE3_5, .chi = cyclic_character(15, 5)}, z15.s, z15.sigma);
  const auto r15 = check_symmetry_lemmas(EquationTag::kCosSub, z15.s, z15.sigma, q.f, q.g);
  CHECK(r15.holds);
  CHECK(r15.g_even_dev <= 1e-12);
  CHECK(r15.f_odd_dev <= 1e-12);

  const auto s4 = fixture("s4");
  const auto t = construct(
      {.tag = CaseTag::kTH3_4, .chi = CFunc{1.0, 0.0, 0.0, 0.0}, .phi = CFunc{0.0, 1.0, -1.0, 0.0}, .c2 = 0.0},
      s4.s, s4.sigma);
  const auto r4 = check_symmetry_lemmas(EquationTag::kSineSub, s4.s, s4.sigma, t.f, t.g);
  CHECK(r4.holds);
  CHECK(r4.f_odd_dev <= 1e-12);
  CHECK(std::abs(r4.beta) <= 1e-12);

  const auto plain = check_symmetry_lemmas(EquationTag::kCosAddPlain, z2.s, z2.sigma, CFunc(2), CFunc(2));
  CHECK_FALSE(plain.applicable);
}

TEST_CASE("symmetry conclusions hold for every independent sample instance") {
  for (const auto& fx : fixtures()) {
    const FamilyContext ctx(fx.s, fx.sigma);
    for (Theorem thm : {Theorem::kCosSub, Theorem::kSineAdd, Theorem::kSineSub})
      for (const FamilyCase& fc : sample_instances(thm, ctx)) {
        const SolutionPair p = construct(fc, ctx);
        for (EquationTag eq : equations_of(thm)) {
          const auto r = check_symmetry_lemmas(eq, fx.s, fx.sigma, p.f, p.g);
          CHECK(r.applicable);
          if (!r.independent) continue;
          CAPTURE(case_name(fc.tag));
          CHECK(r.holds);
          // direct check of the conclusion
          const CFunc fs = compose_sigma(p.f, fx.sigma), gs = compose_sigma(p.g, fx.sigma);
          if (thm == Theorem::kCosSub) {
            CHECK(max_abs_diff(gs, p.g) <= 1e-7);
            CHECK(std::min(max_abs_diff(fs, p.f), max_abs_diff(fs, -p.f)) <= 1e-7);
          } else if (thm == Theorem::kSineAdd) {
            CHECK(max_abs_diff(gs, p.g) <= 1e-7);
            CHECK(max_abs_diff(fs, p.f) <= 1e-7);
          } else {
            CHECK(max_abs_diff(fs, -p.f) <= 1e-7);
            const CFunc d = gs - p.g;
            CHECK(max_abs_diff(d, fit_scalar(p.f, d) * p.f) <= 1e-7);
          }
        }
      }
  }
}

TEST_CASE("family cases survive JSON") {
  for (const auto& fx : fixtures()) {
    const FamilyContext ctx(fx.s, fx.sigma);
    for (Theorem thm : kTheorems)
      for (const FamilyCase& fc : sample_instances(thm, ctx)) {
        const FamilyCase back = case_from_json(parse_json(dump(case_to_json(fc))));
        CHECK(back.tag == fc.tag);
        const auto a = evaluate_family(fc, fx.s, fx.sigma), b = evaluate_family(back, fx.s, fx.sigma);
        CHECK(max_abs_diff(a.f, b.f) == 0.0);
        CHECK(max_abs_diff(a.g, b.g) == 0.0);
      }
  }
}

}  // TEST_SUITE
