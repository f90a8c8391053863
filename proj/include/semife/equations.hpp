#ifndef SEMIFE_EQUATIONS_HPP_
#define SEMIFE_EQUATIONS_HPP_

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "semife/cfunc.hpp"
#include "semife/semigroup.hpp"

namespace semife {

enum class EquationTag {
  kCosSub,          // g(x s(y)) = g(x)g(y) + f(x)f(y)
  kSineAdd,         // f(x s(y)) = f(x)g(y) + f(y)g(x)
  kSineSub,         // f(x s(y)) = f(x)g(y) - f(y)g(x)
  kCosSubVariant,   // g(s(y) x) = g(x)g(y) + f(x)f(y)
  kSineAddVariant,  // f(s(y) x) = f(x)g(y) + f(y)g(x)
  kCosAddPlain,     // g(xy) = g(x)g(y) - f(x)f(y)
  kSineAddPlain,    // f(xy) = f(x)g(y) + f(y)g(x)
};

inline constexpr std::array<EquationTag, 5> kTwistedEquations = {
    EquationTag::kCosSub, EquationTag::kSineAdd, EquationTag::kSineSub, EquationTag::kCosSubVariant,
    EquationTag::kSineAddVariant};

inline constexpr std::array<EquationTag, 7> kAllEquations = {
    EquationTag::kCosSub,         EquationTag::kSineAdd,     EquationTag::kSineSub,
    EquationTag::kCosSubVariant,  EquationTag::kSineAddVariant, EquationTag::kCosAddPlain,
    EquationTag::kSineAddPlain};

// CLI spelling: cos-sub, sine-add, sine-sub, cos-sub-var, sine-add-var,
// cos-add-plain, sine-add-plain.
std::string_view cli_name(EquationTag eq);
// JSON spelling: COS_SUB, SINE_ADD, ...
std::string_view wire_name(EquationTag eq);
// Accepts either spelling.
std::optional<EquationTag> parse_equation(std::string_view name);

bool uses_sigma(EquationTag eq);

// The structure shared by all seven equations:
//   target(m(x, y)) = sum_k coef_k * left_k(x) * right_k(y)
// where target/left/right pick f or g and m is the twisted product.
struct EquationShape {
  enum class Unknown { kF, kG };
  enum class Product { kTwistRight, kTwistLeft, kPlain };  // x s(y), s(y) x, xy
  struct Term {
    double coef;
    Unknown left, right;
  };
  Unknown target;
  Product product;
  std::array<Term, 2> terms;
};

EquationShape shape_of(EquationTag eq);

// Element index of the left-hand side argument for the pair (x, y).
Element lhs_element(const EquationShape& shape, const FiniteSemigroup& s, const Automorphism& sigma,
                    Element x, Element y);

// max over (x, y) of |LHS - RHS|.
double equation_residual(EquationTag eq, const FiniteSemigroup& s, const Automorphism& sigma,
                         const CFunc& f, const CFunc& g);

}  // namespace semife

#endif  // SEMIFE_EQUATIONS_HPP_
