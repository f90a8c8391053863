#include <doctest.h>

#include <set>

#include "semife/errors.hpp"
#include "semife/json_io.hpp"
#include "semife/oracle.hpp"
#include "support.hpp"

using namespace semife;
using namespace semife::testing;

namespace {

SolverConfig quick(std::size_t starts = 100) {
  SolverConfig cfg;
  cfg.n_starts = starts;
  return cfg;
}

std::set<CaseTag> tags(const SolutionReport& r) {
  std::set<CaseTag> out;
  for (const auto& s : r.solutions) out.insert(s.cls.match->tag);
  return out;
}

Eigen::MatrixXd central_differences(EquationTag eq, const FiniteSemigroup& s, const Automorphism& sigma,
                                    const Eigen::VectorXd& u, double h) {
  const Eigen::VectorXd r0 = residual_vector(eq, s, sigma, u);
  Eigen::MatrixXd j(r0.size(), u.size());
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    Eigen::VectorXd up = u, dn = u;
    up[k] += h;
    dn[k] -= h;
    j.col(k) = (residual_vector(eq, s, sigma, up) - residual_vector(eq, s, sigma, dn)) / (2.0 * h);
  }
  return j;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("pack and residual layout") {
  Gen gen(8);
  const auto rz3 = fixture("rz3");
  const CFunc f = gen.cfunc(3), g = gen.cfunc(3);
  const Eigen::VectorXd u = pack(f, g);
  CHECK(u.size() == 12);
  CFunc f2, g2;
  unpack(u, f2, g2);
  CHECK(f2 == f);
  CHECK(g2 == g);
  for (EquationTag eq : kAllEquations) {
    const Eigen::VectorXd r = residual_vector(eq, rz3.s, rz3.sigma, u);
    REQUIRE(r.size() == 18);
    double mx = 0.0;
    for (int i = 0; i < 9; ++i) mx = std::max(mx, std::hypot(r[i], r[i + 9]));
    CHECK(mx == doctest::Approx(naive_residual(eq, rz3.s, rz3.sigma, f, g)).epsilon(1e-12));
  }
}

TEST_CASE("analytic Jacobian matches central differences") {
  Gen gen(99);
  for (const auto& fx : fixtures())
    for (EquationTag eq : kAllEquations)
      for (int i = 0; i < 10; ++i) {
        const Eigen::VectorXd u = pack(gen.cfunc(fx.s.order()), gen.cfunc(fx.s.order()));
        const Eigen::MatrixXd a = jacobian(eq, fx.s, fx.sigma, u);
        const Eigen::MatrixXd d = central_differences(eq, fx.s, fx.sigma, u, 1e-6);
        REQUIRE(a.rows() == d.rows());
        REQUIRE(a.cols() == d.cols());
        const double rel = (a - d).cwiseAbs().maxCoeff() / std::max(1.0, a.cwiseAbs().maxCoeff());
        CHECK(rel <= 1e-5);
      }
}

TEST_CASE("config validation") {
  SolverConfig cfg;
  CHECK_NOTHROW(validate(cfg));
  cfg.converge_tol = 0.0;
  CHECK_THROWS_AS(validate(cfg), InputError);
  cfg = {};
  cfg.start_box = -1.0;
  CHECK_THROWS_AS(validate(cfg), InputError);
  cfg = {};
  cfg.newton_max_iter = 0;
  CHECK_THROWS_AS(validate(cfg), InputError);
}

TEST_CASE("a single start converges onto a known solution") {
  const auto rz3 = fixture("rz3");
  const auto r = solve_from(EquationTag::kCosSub, rz3.s, rz3.sigma, CFunc(3, 0.45), CFunc(3, 0.55), {});
  CHECK(r.converged);
  CHECK(r.residual <= 1e-12);
  CHECK(naive_residual(EquationTag::kCosSub, rz3.s, rz3.sigma, r.f, r.g) <= 1e-12);
}

TEST_CASE("sine addition on Z2") {
  const auto z2 = fixture("z2");
  SolverConfig cfg;
  const auto rep = find_all_solutions(EquationTag::kSineAdd, z2.s, z2.sigma, cfg);
  CHECK(rep.unclassified.empty());
  CHECK(rep.n_starts == 500);
  for (CaseTag t : tags(rep)) CHECK((t == CaseTag::kP1_1 || t == CaseTag::kP1_3 || t == CaseTag::kP1_4));
}

TEST_CASE("cosine subtraction on N2") {
  const auto n2 = fixture("n2");
  const auto rep = find_all_solutions(EquationTag::kCosSub, n2.s, n2.sigma, quick());
  CHECK(rep.unclassified.empty());
  for (CaseTag t : tags(rep)) CHECK((t == CaseTag::kTE3_1 || t == CaseTag::kTE3_2 || t == CaseTag::kTE3_3));
  CHECK(tags(rep).size() == 3);
}

TEST_CASE("cosine subtraction on RZ3 with the 3-cycle") {
  const auto rz3 = fixture("rz3");
  const auto rep = find_all_solutions(EquationTag::kCosSub, rz3.s, rz3.sigma, quick());
  CHECK(rep.sigma.order() == 3);
  CHECK(rep.unclassified.empty());
  CHECK(rep.converged > 0);
}

TEST_CASE("reported solutions are sound, central where promised and seeded members are recovered") {
  for (const auto& fx : fixtures()) {
    const FamilyContext ctx(fx.s, fx.sigma);
    for (EquationTag eq : kTwistedEquations) {
      CAPTURE(fx.name);
      CAPTURE(cli_name(eq));
      const auto rep = find_all_solutions(eq, ctx, quick(50));
      CHECK(rep.unclassified.empty());
      for (const auto* list : {&rep.solutions, &rep.unclassified})
        for (const auto& s : *list) CHECK(naive_residual(eq, fx.s, fx.sigma, s.f, s.g) <= 1e-11);
      for (const auto& s : rep.solutions) {
        const CaseTag t = s.cls.match->tag;
        if (eq == EquationTag::kCosSub || eq == EquationTag::kCosSubVariant) CHECK(is_central(s.g, fx.s));
        if ((eq == EquationTag::kSineAdd || eq == EquationTag::kSineAddVariant) && t != CaseTag::kP1_1)
          CHECK(is_central(s.f, fx.s));
      }
      // every seeded member shows up under its own case
      for (const FamilyCase& fc : sample_instances(theorem_of(eq), ctx)) {
        const SolutionPair p = construct(fc, ctx);
        bool found = false;
        for (const auto& s : rep.solutions)
          if (std::max(max_abs_diff(s.f, p.f), max_abs_diff(s.g, p.g)) <= 1e-6 && s.cls.match->tag == fc.tag)
            found = true;
        CAPTURE(case_name(fc.tag));
        CHECK(found);
      }
    }
  }
}

TEST_CASE("plain sine addition keeps f = 0 points apart") {
  const auto s4 = fixture("s4");
  const auto rep = find_all_solutions(EquationTag::kSineAddPlain, s4.s, s4.sigma, quick());
  CHECK(rep.unclassified.empty());
  CHECK_FALSE(rep.out_of_scope.empty());
  for (const auto& s : rep.out_of_scope) {
    CHECK(s.f.is_zero(1e-6));
    CHECK(s.cls.profile.out_of_scope);
  }
}

TEST_CASE("identical configs give byte-identical reports, threads included") {
  const auto z15 = fixture("z15");
  const auto a = dump(report_to_json(find_all_solutions(EquationTag::kSineSub, z15.s, z15.sigma, quick(60))));
  const auto b = dump(report_to_json(find_all_solutions(EquationTag::kSineSub, z15.s, z15.sigma, quick(60))));
  CHECK(a == b);
  auto cfg = quick(60);
  cfg.threads = 3;
  const auto c = dump(report_to_json(find_all_solutions(EquationTag::kSineSub, z15.s, z15.sigma, cfg)));
  CHECK(a == c);
  cfg = quick(60);
  cfg.seed = 7;
  const auto d = dump(report_to_json(find_all_solutions(EquationTag::kSineSub, z15.s, z15.sigma, cfg)));
  CHECK(a != d);
}

TEST_CASE("completeness passes on order 2 and the fail path works") {
  for (const auto& [s, sigma] : small_universe(2))
    for (EquationTag eq : kTwistedEquations) {
      const auto r = check_completeness(eq, s, sigma, quick());
      CHECK(r.pass);
    }
  // T3 solutions carry rounding error above 1e-15 unless re-polished
  const auto t3 = fixture("t3");
  auto cfg = quick();
  cfg.refine = false;
  cfg.classify.class_tol = 1e-15;
  cfg.classify.fit_tol = 1e-15;
  const auto r = check_completeness(EquationTag::kCosSub, t3.s, t3.sigma, cfg);
  CHECK_FALSE(r.pass);
  CHECK_FALSE(r.report.unclassified.empty());
}

TEST_CASE("equivalence of base and variant equations") {
  const auto rz3 = fixture("rz3");
  const auto cos = check_equivalence(rz3.s, rz3.sigma, EquationPair::kCos, quick());
  CHECK(cos.pass);
  CHECK(cos.breaches == 0);
  const auto z2 = fixture("z2");
  const auto sine = check_equivalence(z2.s, z2.sigma, EquationPair::kSine, quick());
  CHECK(sine.pass);
  CHECK(sine.worst <= 1e-15);
  for (const auto& [s, sigma] : small_universe(2))
    for (EquationPair p : {EquationPair::kCos, EquationPair::kSine}) CHECK(check_equivalence(s, sigma, p, quick()).pass);
}

TEST_CASE("cross_breaches counts a solution of the wrong equation") {
  const auto rz3 = fixture("rz3");
  const auto rep = find_all_solutions(EquationTag::kCosSub, rz3.s, rz3.sigma, quick(20));
  CHECK(cross_breaches(rep, EquationTag::kCosSubVariant, 1e-7) == 0);
  CHECK(cross_breaches(rep, EquationTag::kSineAdd, 1e-7) > 0);
}

TEST_CASE("sweep visits every instance of order <= 2") {
  std::size_t count = 0;
  const std::array<EquationTag, 2> eqs{EquationTag::kCosSub, EquationTag::kSineSub};
  sweep(2, eqs, quick(30), [&](const SolutionReport& r) {
    ++count;
    CHECK(r.unclassified.empty());
  });
  CHECK(count == 2 * small_universe(2).size());
}

}  // TEST_SUITE
