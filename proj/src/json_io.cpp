#include "semife/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "semife/errors.hpp"

namespace semife {

namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  if (v == 0.0) return "0.0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  // keep it a JSON number that reads back as floating point
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

void write(const Json& j, std::string& out, int indent) {
  const std::string pad(2 * (indent + 1), ' ');
  const std::string close(2 * indent, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(k).dump() + ": ";
        write(v, out, indent + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // short numeric arrays stay on one line
      const bool flat = j.size() <= 2 && std::all_of(j.begin(), j.end(), [](const Json& e) {
                          return e.is_number();
                        });
      const bool ints = std::all_of(j.begin(), j.end(), [](const Json& e) {
        return e.is_number_integer();
      });
      if (flat || ints) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          write(j[i], out, indent + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        write(j[i], out, indent + 1);
      }
      out += "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float: out += format_double(j.get<double>()); return;
    default: out += j.dump(); return;
  }
}

template <class T>
void put(Json& params, const char* key, const std::optional<T>& v) {
  if (!v) return;
  if constexpr (std::is_same_v<T, CFunc>) params[key] = cfunc_to_json(*v);
  else params[key] = complex_to_json(*v);
}

Json semigroup_to_json(const FiniteSemigroup& s) {
  Json table = Json::array();
  for (Element x = 0; x < s.order(); ++x) {
    Json row = Json::array();
    for (Element y : s.row(x)) row.push_back(y);
    table.push_back(std::move(row));
  }
  return Json{{"label", s.label()}, {"order", s.order()}, {"table", std::move(table)}};
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("expected a complex number [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json cfunc_to_json(const CFunc& f) {
  Json out = Json::array();
  for (Complex v : f) out.push_back(complex_to_json(v));
  return out;
}

CFunc cfunc_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of [re, im] pairs");
  CFunc out(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out[i] = complex_from_json(j[i]);
  return out;
}

Json case_to_json(const FamilyCase& fc) {
  Json params = Json::object();
  put(params, "chi", fc.chi);
  put(params, "chi1", fc.chi1);
  put(params, "chi2", fc.chi2);
  put(params, "phi", fc.phi);
  put(params, "values", fc.free_values);
  put(params, "alpha", fc.alpha);
  put(params, "delta", fc.delta);
  put(params, "c", fc.c);
  put(params, "c1", fc.c1);
  put(params, "c2", fc.c2);
  if (fc.sign != 0) params["sign"] = fc.sign;
  return Json{{"case", std::string(case_name(fc.tag))}, {"params", std::move(params)}};
}

FamilyCase case_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("case") || !j["case"].is_string())
    throw ParseError("family case needs a \"case\" string");
  const auto tag = parse_case(j["case"].get<std::string>());
  if (!tag) throw ParseError("unknown case " + j["case"].get<std::string>());
  FamilyCase fc{.tag = *tag};
  if (!j.contains("params")) return fc;
  const Json& p = j["params"];
  if (!p.is_object()) throw ParseError("\"params\" must be an object");
  for (const auto& [k, v] : p.items()) {
    if (k == "chi") fc.chi = cfunc_from_json(v);
    else if (k == "chi1") fc.chi1 = cfunc_from_json(v);
    else if (k == "chi2") fc.chi2 = cfunc_from_json(v);
    else if (k == "phi") fc.phi = cfunc_from_json(v);
    else if (k == "values") fc.free_values = cfunc_from_json(v);
    else if (k == "alpha") fc.alpha = complex_from_json(v);
    else if (k == "delta") fc.delta = complex_from_json(v);
    else if (k == "c") fc.c = complex_from_json(v);
    else if (k == "c1") fc.c1 = complex_from_json(v);
    else if (k == "c2") fc.c2 = complex_from_json(v);
    else if (k == "sign") {
      if (!v.is_number_integer()) throw ParseError("sign must be an integer");
      fc.sign = v.get<int>();
    } else {
      throw ParseError("unknown parameter " + k);
    }
  }
  return fc;
}

Json classification_to_json(const Classification& c) {
  if (c.match) {
    Json out = case_to_json(*c.match);
    out["fit_error"] = c.fit_error;
    return out;
  }
  const UnclassifiedProfile& p = c.profile;
  Json fits = Json::object();
  for (const auto& [tag, err] : p.best_fit_errors) fits[std::string(case_name(tag))] = err;
  return Json{{"case", "Unclassified"},
              {"profile",
               {{"residual", p.residual},
                {"f_norm", p.f_norm},
                {"g_norm", p.g_norm},
                {"f_on_squares", p.f_on_squares},
                {"g_on_squares", p.g_on_squares},
                {"dependence", std::string(to_string(p.dependence))},
                {"best_fit_errors", std::move(fits)},
                {"note", p.note},
                {"out_of_scope", p.out_of_scope}}}};
}

Json report_to_json(const SolutionReport& rep) {
  auto list = [](const std::vector<FoundSolution>& v) {
    Json out = Json::array();
    for (const FoundSolution& s : v)
      out.push_back(Json{{"f", cfunc_to_json(s.f)},
                         {"g", cfunc_to_json(s.g)},
                         {"residual", s.residual},
                         {"multiplicity", s.multiplicity},
                         {"refined", s.refined},
                         {"class", classification_to_json(s.cls)}});
    return out;
  };
  return Json{{"equation", std::string(wire_name(rep.eq))},
              {"semigroup", semigroup_to_json(rep.semigroup)},
              {"sigma", rep.sigma.images()},
              {"solutions", list(rep.solutions)},
              {"unclassified", list(rep.unclassified)},
              {"out_of_scope", list(rep.out_of_scope)},
              {"starts",
               {{"random", rep.n_starts},
                {"seeded", rep.n_seeded},
                {"converged", rep.converged},
                {"diverged", rep.diverged}}},
              {"seed", rep.seed}};
}

Json symmetry_to_json(const SymmetryReport& rep) {
  Json out{{"equation", std::string(wire_name(rep.eq))},
           {"applicable", rep.applicable},
           {"dependence", std::string(to_string(rep.dependence))},
           {"independent", rep.independent}};
  if (rep.applicable && rep.independent) {
    out["g_even_dev"] = rep.g_even_dev;
    out["f_even_dev"] = rep.f_even_dev;
    out["f_odd_dev"] = rep.f_odd_dev;
    if (rep.eq == EquationTag::kSineSub) {
      out["beta"] = complex_to_json(rep.beta);
      out["beta_dev"] = rep.beta_dev;
    }
  }
  out["holds"] = rep.holds;
  out["conclusion"] = rep.conclusion;
  return out;
}

Json continuum_to_json(const ContinuumFamily& fam) {
  Json out{{"carrier", fam.carrier == Carrier::kReal ? "real" : "axb"},
           {"equation", std::string(wire_name(fam.eq))},
           {"family", fam.describe()}};
  if (fam.carrier == Carrier::kReal) out["beta"] = fam.beta;
  else out["scale"] = fam.scale;
  return out;
}

SolutionPair solution_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("f") || !j.contains("g"))
    throw ParseError("solution file needs \"f\" and \"g\"");
  return {cfunc_from_json(j["f"]), cfunc_from_json(j["g"])};
}

SolutionPair load_solution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return solution_from_json(parse_json(ss.str()));
}

Json solution_to_json(const CFunc& f, const CFunc& g) {
  return Json{{"f", cfunc_to_json(f)}, {"g", cfunc_to_json(g)}};
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

std::string dump(const Json& j) {
  std::string out;
  write(j, out, 0);
  out += "\n";
  return out;
}

}  // namespace semife
