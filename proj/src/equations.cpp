#include "semife/equations.hpp"

#include <algorithm>
#include <cmath>

namespace semife {

namespace {

struct Names {
  EquationTag tag;
  std::string_view cli;
  std::string_view wire;
};

constexpr std::array<Names, 7> kNames = {{
    {EquationTag::kCosSub, "cos-sub", "COS_SUB"},
    {EquationTag::kSineAdd, "sine-add", "SINE_ADD"},
    {EquationTag::kSineSub, "sine-sub", "SINE_SUB"},
    {EquationTag::kCosSubVariant, "cos-sub-var", "COS_SUB_VARIANT"},
    {EquationTag::kSineAddVariant, "sine-add-var", "SINE_ADD_VARIANT"},
    {EquationTag::kCosAddPlain, "cos-add-plain", "COS_ADD_PLAIN"},
    {EquationTag::kSineAddPlain, "sine-add-plain", "SINE_ADD_PLAIN"},
}};

const Names& names_of(EquationTag eq) {
  return *std::find_if(kNames.begin(), kNames.end(), [eq](const Names& n) { return n.tag == eq; });
}

}  // namespace

std::string_view cli_name(EquationTag eq) { return names_of(eq).cli; }
std::string_view wire_name(EquationTag eq) { return names_of(eq).wire; }

std::optional<EquationTag> parse_equation(std::string_view name) {
  for (const Names& n : kNames)
    if (n.cli == name || n.wire == name) return n.tag;
  return std::nullopt;
}

bool uses_sigma(EquationTag eq) {
  return eq != EquationTag::kCosAddPlain && eq != EquationTag::kSineAddPlain;
}

EquationShape shape_of(EquationTag eq) {
  using U = EquationShape::Unknown;
  using P = EquationShape::Product;
  switch (eq) {
    case EquationTag::kCosSub:
      return {U::kG, P::kTwistRight, {{{1.0, U::kG, U::kG}, {1.0, U::kF, U::kF}}}};
    case EquationTag::kCosSubVariant:
      return {U::kG, P::kTwistLeft, {{{1.0, U::kG, U::kG}, {1.0, U::kF, U::kF}}}};
    case EquationTag::kCosAddPlain:
      return {U::kG, P::kPlain, {{{1.0, U::kG, U::kG}, {-1.0, U::kF, U::kF}}}};
    case EquationTag::kSineAdd:
      return {U::kF, P::kTwistRight, {{{1.0, U::kF, U::kG}, {1.0, U::kG, U::kF}}}};
    case EquationTag::kSineAddVariant:
      return {U::kF, P::kTwistLeft, {{{1.0, U::kF, U::kG}, {1.0, U::kG, U::kF}}}};
    case EquationTag::kSineAddPlain:
      return {U::kF, P::kPlain, {{{1.0, U::kF, U::kG}, {1.0, U::kG, U::kF}}}};
    case EquationTag::kSineSub:
      return {U::kF, P::kTwistRight, {{{1.0, U::kF, U::kG}, {-1.0, U::kG, U::kF}}}};
  }
  return {};
}

Element lhs_element(const EquationShape& shape, const FiniteSemigroup& s, const Automorphism& sigma,
                    Element x, Element y) {
  switch (shape.product) {
    case EquationShape::Product::kTwistRight: return s.product(x, sigma(y));
    case EquationShape::Product::kTwistLeft: return s.product(sigma(y), x);
    case EquationShape::Product::kPlain: return s.product(x, y);
  }
  return 0;
}

double equation_residual(EquationTag eq, const FiniteSemigroup& s, const Automorphism& sigma,
                         const CFunc& f, const CFunc& g) {
  const EquationShape shape = shape_of(eq);
  auto pick = [&](EquationShape::Unknown u) -> const CFunc& {
    return u == EquationShape::Unknown::kF ? f : g;
  };
  const CFunc& target = pick(shape.target);
  double r = 0.0;
  for (Element x = 0; x < s.order(); ++x)
    for (Element y = 0; y < s.order(); ++y) {
      Complex rhs{};
      for (const auto& t : shape.terms) rhs += t.coef * pick(t.left)[x] * pick(t.right)[y];
      r = std::max(r, std::abs(target[lhs_element(shape, s, sigma, x, y)] - rhs));
    }
  return r;
}

}  // namespace semife
