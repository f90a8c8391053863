#ifndef SEMIFE_CLI_HPP_
#define SEMIFE_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "semife/semigroup.hpp"

namespace semife::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalidInput = 1,
  kVerificationFailure = 2,
  kResidualGuard = 3,
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "id", an image list "1,2,0", or "pow:BASE:K" with BASE either of the former.
Automorphism parse_sigma(const std::string& spec, const FiniteSemigroup& s);

}  // namespace semife::cli

#endif  // SEMIFE_CLI_HPP_
