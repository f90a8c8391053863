#ifndef SEMIFE_JSON_IO_HPP_
#define SEMIFE_JSON_IO_HPP_

#include <string>

#include <json.hpp>

#include "semife/cfunc.hpp"
#include "semife/continuum.hpp"
#include "semife/families.hpp"
#include "semife/funcspace.hpp"
#include "semife/oracle.hpp"

namespace semife {

using Json = nlohmann::ordered_json;

Json complex_to_json(Complex z);  // [re, im]
Complex complex_from_json(const Json& j);

Json cfunc_to_json(const CFunc& f);  // [[re, im], ...]
CFunc cfunc_from_json(const Json& j);

// {"case": "TE3.5", "params": {...}}
Json case_to_json(const FamilyCase& fc);
FamilyCase case_from_json(const Json& j);

Json classification_to_json(const Classification& c);
Json report_to_json(const SolutionReport& rep);
Json symmetry_to_json(const SymmetryReport& rep);
Json continuum_to_json(const ContinuumFamily& fam);

// Solution files: {"f": [[re, im], ...], "g": [[re, im], ...]}.
SolutionPair solution_from_json(const Json& j);
SolutionPair load_solution(const std::string& path);
Json solution_to_json(const CFunc& f, const CFunc& g);

Json parse_json(const std::string& text);  // throws ParseError

// Pretty printer writing every double with 17 significant digits.
std::string dump(const Json& j);

}  // namespace semife

#endif  // SEMIFE_JSON_IO_HPP_
