#include "semife/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>

#include "semife/continuum.hpp"
#include "semife/errors.hpp"
#include "semife/families.hpp"
#include "semife/funcspace.hpp"
#include "semife/json_io.hpp"
#include "semife/oracle.hpp"

namespace semife::cli {

namespace {

EquationTag equation_arg(const std::string& name) {
  const auto eq = parse_equation(name);
  if (!eq) throw InputError("unknown equation '" + name + "'");
  return *eq;
}

Complex complex_arg(const std::string& text) {
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    if (comma == std::string::npos) {
      const double re = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {re, 0.0};
    }
    const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
    const double re = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(text);
    const double im = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(text);
    return {re, im};
  } catch (const std::logic_error&) {
    throw ParseError("bad complex number '" + text + "' (use RE or RE,IM)");
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

struct Common {
  std::string table, sigma = "id", eq, sol;
};

void add_table(CLI::App* cmd, Common& c, bool positional = false) {
  if (positional) cmd->add_option("table", c.table, "Cayley table file")->required();
  else cmd->add_option("--table", c.table, "Cayley table file")->required();
}

void add_solver_flags(CLI::App* cmd, SolverConfig& cfg) {
  cmd->add_option("--starts", cfg.n_starts, "random starts")->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "seed")->capture_default_str();
  cmd->add_option("--tol", cfg.converge_tol, "convergence tolerance")->capture_default_str();
  cmd->add_option("--max-iter", cfg.newton_max_iter, "iterations per start")->capture_default_str();
  cmd->add_option("--threads", cfg.threads, "worker threads (0 = all cores)")->capture_default_str();
  cmd->add_flag_callback("--no-refine", [&cfg] { cfg.refine = false; }, "skip the binary128 re-polish of unclassified points");
}

}  // namespace

Automorphism parse_sigma(const std::string& spec, const FiniteSemigroup& s) {
  if (spec.rfind("pow:", 0) == 0) {
    const auto colon = spec.rfind(':');
    if (colon <= 4) throw ParseError("sigma spec 'pow:BASE:K' is missing K");
    const Automorphism base = parse_automorphism(spec.substr(4, colon - 4), s);
    const std::string k = spec.substr(colon + 1);
    std::size_t used = 0;
    long long power = 0;
    try {
      power = std::stoll(k, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used == 0 || used != k.size() || power < 0) throw ParseError("bad exponent in '" + spec + "'");
    return automorphism_power(base, static_cast<std::size_t>(power));
  }
  return parse_automorphism(spec, s);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-semigroup functional equation lab", "semife"};
  app.require_subcommand(1);

  Common c;
  SolverConfig cfg;
  ClassifyTolerances tol;

  std::size_t order = 2;
  bool canonical = false;
  auto* gen = app.add_subcommand("gen", "enumerate labeled semigroups of one order");
  gen->add_option("--order", order, "order")->required();
  gen->add_flag("--canonical", canonical, "one table per isomorphism class");

  auto* auts = app.add_subcommand("auts", "list automorphisms");
  add_table(auts, c, true);

  auto* mult = app.add_subcommand("mult", "list non-zero multiplicative functions");
  add_table(mult, c, true);

  std::size_t chi_index = 0;
  std::string parity = "any";
  auto* phi = app.add_subcommand("phi", "basis of the special sine space");
  add_table(phi, c, true);
  phi->add_option("--chi", chi_index, "index into the mult listing")->required();
  phi->add_option("--sigma", c.sigma, "automorphism for --parity");
  phi->add_option("--parity", parity, "any | even | odd")->check(CLI::IsMember({"any", "even", "odd"}));

  std::string json_out;
  auto* solve = app.add_subcommand("solve", "multistart solve and classify");
  add_table(solve, c);
  solve->add_option("--sigma", c.sigma, "automorphism")->required();
  solve->add_option("--eq", c.eq, "equation")->required();
  solve->add_option("--json", json_out, "write the report here instead of stdout");
  add_solver_flags(solve, cfg);

  auto* cls = app.add_subcommand("classify", "classify a solution file");
  auto* verify = app.add_subcommand("verify", "equation residual of a solution file");
  auto* symm = app.add_subcommand("symm", "symmetry conclusions for a solution file");
  for (auto* cmd : {cls, verify, symm}) {
    add_table(cmd, c);
    cmd->add_option("--sigma", c.sigma, "automorphism")->required();
    cmd->add_option("--eq", c.eq, "equation")->required();
    cmd->add_option("--sol", c.sol, "solution JSON file")->required();
    cmd->add_option("--class-tol", tol.class_tol, "residual tolerance")->capture_default_str();
  }
  cls->add_option("--fit-tol", tol.fit_tol, "parameter fit tolerance")->capture_default_str();

  std::string pair_name;
  auto* equiv = app.add_subcommand("equiv", "base vs variant equation solution sets");
  add_table(equiv, c);
  equiv->add_option("--sigma", c.sigma, "automorphism")->required();
  equiv->add_option("--pair", pair_name, "cos | sine")->required()->check(CLI::IsMember({"cos", "sine"}));
  add_solver_flags(equiv, cfg);

  std::string app_name;
  double beta = 2.0, scale = kDefaultAxBScale;
  std::size_t samples = 10000;
  std::string alpha_s = "2", c_s = "1", lambda_s = "0";
  auto* cont = app.add_subcommand("continuum", "closed-form families on R and the (ax+b)-group");
  cont->add_option("--app", app_name, "real | axb")->required()->check(CLI::IsMember({"real", "axb"}));
  auto* beta_opt = cont->add_option("--beta", beta, "sigma(x) = beta x")->capture_default_str();
  auto* scale_opt = cont->add_option("--scale", scale, "sigma scales b by this")->capture_default_str();
  beta_opt->excludes(scale_opt);
  cont->add_option("--eq", c.eq, "cos-sub | sine-add")->required();
  cont->add_option("--samples", samples, "random sample pairs")->capture_default_str();
  cont->add_option("--alpha", alpha_s, "family parameter (RE or RE,IM)")->capture_default_str();
  cont->add_option("--c", c_s, "log family parameter")->capture_default_str();
  cont->add_option("--lambda", lambda_s, "exponent")->capture_default_str();

  std::size_t max_order = 2;
  auto* sw = app.add_subcommand("sweep", "completeness over every semigroup up to an order");
  sw->add_option("--order", max_order, "largest order")->required()->check(CLI::Range(1, 4));
  sw->add_option("--eq", c.eq, "equation")->required();
  add_solver_flags(sw, cfg);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (gen->parsed()) {
      EnumerationOptions opts;
      opts.canonical = canonical;
      const auto all = enumerate_semigroups(order, opts);
      out << "# " << all.size() << (canonical ? " isomorphism classes" : " labeled semigroups")
          << " of order " << order << '\n';
      for (const auto& s : all) out << '\n' << format_cayley(s);
      return kOk;
    }

    if (sw->parsed()) {
      const EquationTag eq = equation_arg(c.eq);
      std::size_t instances = 0, converged = 0, distinct = 0, unclassified = 0;
      Json failures = Json::array();
      const std::array<EquationTag, 1> eqs{eq};
      sweep(max_order, eqs, cfg, [&](const SolutionReport& rep) {
        ++instances;
        converged += rep.converged;
        distinct += rep.solutions.size() + rep.unclassified.size() + rep.out_of_scope.size();
        unclassified += rep.unclassified.size();
        if (!rep.unclassified.empty())
          failures.push_back(Json{{"table", rep.semigroup.table()}, {"sigma", rep.sigma.images()},
                                  {"unclassified", rep.unclassified.size()}});
      });
      out << dump(Json{{"equation", std::string(wire_name(eq))},
                       {"max_order", max_order},
                       {"instances", instances},
                       {"converged", converged},
                       {"distinct", distinct},
                       {"unclassified", unclassified},
                       {"failures", std::move(failures)}});
      return unclassified == 0 ? kOk : kVerificationFailure;
    }

    if (cont->parsed()) {
      const EquationTag eq = equation_arg(c.eq);
      std::vector<ContinuumFamily> fams;
      if (app_name == "real") fams = real_families(eq, RealTwist::make(beta), complex_arg(alpha_s));
      else fams = axb_families(eq, complex_arg(alpha_s), complex_arg(c_s), complex_arg(lambda_s), scale);
      Json list = Json::array();
      double worst = 0.0;
      for (const ContinuumFamily& fam : fams) {
        const double r = sample_residual(fam, samples);
        worst = std::max(worst, r);
        Json j = continuum_to_json(fam);
        j["residual"] = r;
        list.push_back(std::move(j));
      }
      out << dump(Json{{"carrier", app_name}, {"samples", samples}, {"families", std::move(list)},
                       {"max_residual", worst}});
      return worst <= 1e-9 ? kOk : kResidualGuard;
    }

    const FiniteSemigroup s = load_cayley(c.table);
    if (auts->parsed()) {
      Json list = Json::array();
      for (const Automorphism& a : enumerate_automorphisms(s))
        list.push_back(Json{{"images", a.images()}, {"order", a.order()}, {"involutive", a.is_involutive()}});
      out << dump(Json{{"semigroup", s.label()}, {"automorphisms", std::move(list)}});
      return kOk;
    }
    if (mult->parsed()) {
      Json list = Json::array();
      std::size_t i = 0;
      for (const auto& m : enumerate_multiplicative(s))
        list.push_back(Json{{"index", i++}, {"chi", cfunc_to_json(m.chi)}, {"residual", m.residual}});
      out << dump(Json{{"semigroup", s.label()}, {"multiplicative", std::move(list)}});
      return kOk;
    }
    if (phi->parsed()) {
      const auto chars = enumerate_multiplicative(s);
      if (chi_index >= chars.size())
        throw InputError("--chi " + std::to_string(chi_index) + " is out of range (have " +
                         std::to_string(chars.size()) + ")");
      const Automorphism sigma = parse_sigma(c.sigma, s);
      const TwistParity p = parity == "even" ? TwistParity::kEven
                            : parity == "odd" ? TwistParity::kOdd
                                              : TwistParity::kAny;
      const auto basis = solve_special_sine(s, chars[chi_index].chi, sigma, p);
      Json list = Json::array();
      for (const CFunc& b : basis) list.push_back(cfunc_to_json(b));
      out << dump(Json{{"semigroup", s.label()},
                       {"chi", cfunc_to_json(chars[chi_index].chi)},
                       {"parity", parity},
                       {"dimension", basis.size()},
                       {"basis", std::move(list)}});
      return kOk;
    }

    const Automorphism sigma = parse_sigma(c.sigma, s);

    if (solve->parsed()) {
      const SolutionReport rep = find_all_solutions(equation_arg(c.eq), s, sigma, cfg);
      const std::string text = dump(report_to_json(rep));
      if (json_out.empty()) out << text;
      else {
        write_file(json_out, text);
        out << rep.solutions.size() + rep.unclassified.size() + rep.out_of_scope.size()
            << " distinct solutions, " << rep.unclassified.size() << " unclassified, "
            << rep.out_of_scope.size() << " out of scope, " << rep.converged << " converged, "
            << rep.diverged << " diverged\n";
      }
      return rep.unclassified.empty() ? kOk : kVerificationFailure;
    }

    if (equiv->parsed()) {
      const EquationPair pair = pair_name == "cos" ? EquationPair::kCos : EquationPair::kSine;
      const EquivalenceResult r = check_equivalence(s, sigma, pair, cfg);
      out << dump(Json{{"semigroup", s.label()},
                       {"sigma", sigma.images()},
                       {"pair", pair_name},
                       {"base_solutions", r.base.solutions.size() + r.base.unclassified.size() + r.base.out_of_scope.size()},
                       {"variant_solutions", r.variant.solutions.size() + r.variant.unclassified.size() +
                                                r.variant.out_of_scope.size()},
                       {"worst_cross_residual", r.worst},
                       {"breaches", r.breaches},
                       {"pass", r.pass}});
      return r.pass ? kOk : kVerificationFailure;
    }

    const EquationTag eq = equation_arg(c.eq);
    const SolutionPair sol = load_solution(c.sol);
    if (sol.f.size() != s.order() || sol.g.size() != s.order())
      throw InputError("solution tables must have length " + std::to_string(s.order()));

    if (verify->parsed()) {
      const double r = equation_residual(eq, s, sigma, sol.f, sol.g);
      const bool ok = r <= tol.class_tol;
      out << dump(Json{{"equation", std::string(wire_name(eq))}, {"residual", r}, {"solution", ok}});
      return ok ? kOk : kVerificationFailure;
    }
    if (cls->parsed()) {
      try {
        const Classification r = classify(eq, s, sigma, sol.f, sol.g, tol);
        out << dump(Json{{"equation", std::string(wire_name(eq))},
                         {"residual", r.residual},
                         {"class", classification_to_json(r)}});
        return r.classified() ? kOk : kVerificationFailure;
      } catch (const NotASolution& e) {
        err << "error: " << e.what() << '\n';
        return kVerificationFailure;
      }
    }
    if (symm->parsed()) {
      const SymmetryReport r = check_symmetry_lemmas(eq, s, sigma, sol.f, sol.g, 1e-7, tol.class_tol);
      out << dump(symmetry_to_json(r));
      return r.applicable && r.independent && !r.holds ? kVerificationFailure : kOk;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const NotASolution& e) {
    err << "error: " << e.what() << '\n';
    return kVerificationFailure;
  } catch (const ResidualFailure& e) {
    err << "error: " << e.what() << '\n';
    return kResidualGuard;
  }
  return kInvalidInput;
}

}  // namespace semife::cli
