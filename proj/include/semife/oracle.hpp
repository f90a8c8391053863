#ifndef SEMIFE_ORACLE_HPP_
#define SEMIFE_ORACLE_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "semife/equations.hpp"
#include "semife/families.hpp"
#include "semife/semigroup.hpp"

namespace semife {

struct SolverConfig {
  std::size_t n_starts = 500;
  std::uint64_t seed = 42;
  std::size_t newton_max_iter = 200;
  double converge_tol = 1e-12;
  double damping = 1e-3;
  double start_box = 2.0;
  double dedup_tol = 1e-6;
  // Also start from every sample family member.
  bool seeded_starts = true;
  // Re-polish points that fail to classify in binary128 and try again.
  bool refine = true;
  // 0 picks the hardware concurrency.
  unsigned threads = 1;
  ClassifyTolerances classify;
};

// Throws InputError for non-positive settings.
void validate(const SolverConfig& cfg);

// Real layout used by residual_vector / jacobian: u has 4n entries
// [Re f, Re g, Im f, Im g]; the residual has 2n^2 entries [Re R, Im R] with
// R_(x*n+y) = LHS - RHS.
Eigen::VectorXd pack(const CFunc& f, const CFunc& g);
void unpack(const Eigen::VectorXd& u, CFunc& f, CFunc& g);
Eigen::VectorXd residual_vector(EquationTag eq, const FiniteSemigroup& s, const Automorphism& sigma,
                                const Eigen::VectorXd& u);
Eigen::MatrixXd jacobian(EquationTag eq, const FiniteSemigroup& s, const Automorphism& sigma,
                         const Eigen::VectorXd& u);

struct LocalResult {
  CFunc f, g;
  double residual = 0.0;  // max |LHS - RHS|
  std::size_t iterations = 0;
  bool converged = false;
};

// Damped Gauss-Newton (Levenberg-Marquardt) from one start.
LocalResult solve_from(EquationTag eq, const FiniteSemigroup& s, const Automorphism& sigma,
                       const CFunc& f0, const CFunc& g0, const SolverConfig& cfg);

struct FoundSolution {
  CFunc f, g;
  double residual = 0.0;
  std::size_t multiplicity = 1;  // converged starts within dedup_tol
  // Re-polished in binary128 after failing to classify at double precision.
  bool refined = false;
  Classification cls;
};

struct SolutionReport {
  EquationTag eq{};
  FiniteSemigroup semigroup;
  Automorphism sigma;
  std::uint64_t seed = 0;
  std::size_t n_starts = 0, n_seeded = 0;
  std::size_t converged = 0, diverged = 0;
  std::vector<FoundSolution> solutions;     // classified, sorted
  std::vector<FoundSolution> unclassified;  // sorted
  std::vector<FoundSolution> out_of_scope;  // outside the theorem's hypotheses
};

SolutionReport find_all_solutions(EquationTag eq, const FiniteSemigroup& s, const Automorphism& sigma,
                                  const SolverConfig& cfg = {});
SolutionReport find_all_solutions(EquationTag eq, const FamilyContext& ctx,
                                  const SolverConfig& cfg = {});

struct CompletenessResult {
  bool pass = false;
  SolutionReport report;
};

CompletenessResult check_completeness(EquationTag eq, const FiniteSemigroup& s,
                                      const Automorphism& sigma, const SolverConfig& cfg = {});

enum class EquationPair { kCos, kSine };

// Counts solutions in `from` whose residual under `other` exceeds tol.
std::size_t cross_breaches(const SolutionReport& from, EquationTag other, double tol);

struct EquivalenceResult {
  bool pass = false;
  std::size_t breaches = 0;
  double worst = 0.0;  // largest cross residual seen
  SolutionReport base, variant;
};

// Solutions of the base equation must satisfy the variant and conversely,
// within cfg.classify.class_tol.
EquivalenceResult check_equivalence(const FiniteSemigroup& s, const Automorphism& sigma,
                                    EquationPair pair, const SolverConfig& cfg = {});

// Every (labeled semigroup of order 1..max_order, automorphism, equation).
void sweep(std::size_t max_order, std::span<const EquationTag> eqs, const SolverConfig& cfg,
           const std::function<void(const SolutionReport&)>& visit);

}  // namespace semife

#endif  // SEMIFE_ORACLE_HPP_
