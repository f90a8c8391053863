#ifndef SEMIFE_FAMILIES_HPP_
#define SEMIFE_FAMILIES_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semife/cfunc.hpp"
#include "semife/equations.hpp"
#include "semife/funcspace.hpp"
#include "semife/semigroup.hpp"

namespace semife {

// Which solution list a case belongs to.
enum class Theorem {
  kCosSub,        // cosine subtraction (twisted)
  kSineAdd,       // sine addition (twisted)
  kSineSub,       // sine subtraction (twisted)
  kCosAddPlain,   // untwisted g(xy) = g(x)g(y) - f(x)f(y)
  kSineAddPlain,  // untwisted sine addition with f != 0
};

Theorem theorem_of(EquationTag eq);

// The wire names are "TE3.1" ... "PHI2.3".
enum class CaseTag {
  kTE3_1, kTE3_2, kTE3_3, kTE3_4, kTE3_5, kTE3_6,
  kP1_1, kP1_2, kP1_3, kP1_4, kP1_5,
  kTH3_1, kTH3_2, kTH3_3, kTH3_4,
  kPHI1_1, kPHI1_2, kPHI1_3, kPHI1_4,
  kPHI2_1, kPHI2_2, kPHI2_3,
};

std::string_view case_name(CaseTag tag);
std::optional<CaseTag> parse_case(std::string_view name);
Theorem theorem_of(CaseTag tag);
// Cases in classifier order.
std::vector<CaseTag> cases_of(Theorem thm);

// One member of a solution family. Only the parameters the tag uses are set:
//   TE3.2   free_values (g, zero on S^2), c in {i, -i}
//   TE3.3   chi, alpha        TE3.4  chi1, chi2, delta
//   TE3.5   chi               TE3.6  chi, phi, sign
//   P1.1    free_values (g)   P1.2   free_values (f, zero on S^2)
//   P1.3    chi, alpha        P1.4   chi1, chi2, c        P1.5  chi, phi
//   TH3.1   free_values (g)   TH3.2  free_values (f), alpha
//   TH3.3   chi, c, c1        TH3.4  chi, phi, c2
//   PHI1.2  chi1, chi2, delta PHI1.3 free_values (f), sign  PHI1.4 chi, phi, sign
//   PHI2.1  chi1, chi2, c     PHI2.2 free_values (f)        PHI2.3 chi, phi
struct FamilyCase {
  CaseTag tag{};
  std::optional<CFunc> chi, chi1, chi2, phi, free_values;
  std::optional<Complex> alpha, delta, c, c1, c2;
  int sign = 0;
};

struct SolutionPair {
  CFunc f, g;
};

// Precomputed multiplicative functions and special-sine spaces for one
// (S, sigma). Classification and instance sampling share it.
class FamilyContext {
 public:
  FamilyContext(FiniteSemigroup s, Automorphism sigma);

  const FiniteSemigroup& semigroup() const noexcept { return s_; }
  const Automorphism& sigma() const noexcept { return sigma_; }
  const SquareSet& squares() const noexcept { return squares_; }

  // Non-zero multiplicative functions, sorted lexicographically.
  const std::vector<CFunc>& characters() const noexcept { return chars_; }
  // Indices into characters() with chi o sigma = chi.
  const std::vector<std::size_t>& invariant() const noexcept { return invariant_; }
  // Indices with chi o sigma != chi and chi o sigma^2 = chi.
  const std::vector<std::size_t>& swapped() const noexcept { return swapped_; }

  // Basis of the special sine space for characters()[i], optionally with
  // phi o sigma = +phi (kEven) or -phi (kOdd).
  const std::vector<CFunc>& phi_basis(std::size_t i, TwistParity parity) const;

  // Index of chi in characters(), if it is one (within tol).
  std::optional<std::size_t> find_character(const CFunc& chi, double tol = 1e-9) const;

 private:
  FiniteSemigroup s_;
  Automorphism sigma_;
  SquareSet squares_;
  std::vector<CFunc> chars_;
  std::vector<std::size_t> invariant_, swapped_;
  std::vector<std::vector<CFunc>> phi_any_, phi_even_, phi_odd_;
};

// Evaluates the family formula. Checks every parameter constraint and
// side condition first (ConstraintViolation / SideConditionFailure) and the
// equation residual afterwards (ResidualFailure above 1e-9).
SolutionPair construct(const FamilyCase& fc, const FiniteSemigroup& s, const Automorphism& sigma);
SolutionPair construct(const FamilyCase& fc, const FamilyContext& ctx);

// Formula only, no checks.
SolutionPair evaluate_family(const FamilyCase& fc, const FiniteSemigroup& s,
                             const Automorphism& sigma);

// Given f(x sigma(y)) = beta f(x) f(y) with f != 0, returns chi = beta f after
// certifying chi multiplicative and chi o sigma = chi.
MultiplicativeFunction lemma_m_reduce(const FiniteSemigroup& s, const Automorphism& sigma,
                                      const CFunc& f, Complex beta, double tol = 1e-10);

struct ClassifyTolerances {
  // (f, g) must satisfy the equation to this residual.
  double class_tol = 1e-7;
  // Reconstruction from fitted parameters must reproduce (f, g) entrywise to
  // fit_tol times max(1, largest entry).
  double fit_tol = 1e-6;
};

struct UnclassifiedProfile {
  double residual = 0.0;
  double f_norm = 0.0, g_norm = 0.0;
  double f_on_squares = 0.0, g_on_squares = 0.0;
  Dependence::Kind dependence = Dependence::Kind::kIndependent;
  std::vector<std::pair<CaseTag, double>> best_fit_errors;
  std::string note;
  // The pair lies outside the theorem's hypotheses (plain sine addition with
  // f = 0), so no family is expected to match.
  bool out_of_scope = false;
};

struct Classification {
  std::optional<FamilyCase> match;
  UnclassifiedProfile profile;  // filled when match is empty
  double residual = 0.0;
  double fit_error = 0.0;  // max entrywise distance to the reconstructed member

  bool classified() const { return match.has_value(); }
};

// Assigns (f, g) to the first family, in classifier order, whose fitted
// member reproduces it. Throws NotASolution when the residual exceeds
// class_tol.
Classification classify(EquationTag eq, const FamilyContext& ctx, const CFunc& f, const CFunc& g,
                        const ClassifyTolerances& tol = {});
Classification classify(EquationTag eq, const FiniteSemigroup& s, const Automorphism& sigma,
                        const CFunc& f, const CFunc& g, const ClassifyTolerances& tol = {});

// Conclusions about f* = f o sigma and g* = g o sigma for linearly
// independent solutions.
struct SymmetryReport {
  EquationTag eq{};
  bool applicable = false;  // false for the untwisted equations
  bool independent = false;
  Dependence::Kind dependence = Dependence::Kind::kIndependent;
  double g_even_dev = 0.0;  // |g* - g|
  double f_even_dev = 0.0;  // |f* - f|
  double f_odd_dev = 0.0;   // |f* + f|
  Complex beta{};           // sine subtraction: least-squares g* - g = beta f
  double beta_dev = 0.0;    // |g* - g - beta f|
  bool holds = false;
  std::string conclusion;
};

SymmetryReport check_symmetry_lemmas(EquationTag eq, const FiniteSemigroup& s,
                                     const Automorphism& sigma, const CFunc& f, const CFunc& g,
                                     double tol = 1e-7, double class_tol = 1e-7);

// Representative members of every family that is non-empty on (S, sigma),
// with fixed parameter choices. Used to seed the solver and for forward
// verification.
std::vector<FamilyCase> sample_instances(Theorem thm, const FamilyContext& ctx);

}  // namespace semife

#endif  // SEMIFE_FAMILIES_HPP_
