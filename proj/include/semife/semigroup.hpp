#ifndef SEMIFE_SEMIGROUP_HPP_
#define SEMIFE_SEMIGROUP_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semife/cfunc.hpp"

namespace semife {

using Element = std::size_t;

inline constexpr std::size_t kDefaultEnumerationCap = 4;
inline constexpr std::size_t kDefaultLoadCap = 16;

// A finite semigroup given by its Cayley table, table[x][y] = xy, stored
// row-major. Instances are always associative and closed.
class FiniteSemigroup {
 public:
  // Validates raw (row x holds x*0 ... x*(n-1)). Throws OutOfRangeEntry or
  // AssociativityViolation naming the first failing cell or triple.
  static FiniteSemigroup from_table(const std::vector<std::vector<long long>>& raw,
                                    std::string label = {});

  std::size_t order() const noexcept { return n_; }
  Element product(Element x, Element y) const noexcept { return table_[x * n_ + y]; }
  std::span<const Element> row(Element x) const noexcept { return {table_.data() + x * n_, n_}; }
  const std::vector<Element>& table() const noexcept { return table_; }

  const std::string& label() const noexcept { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  bool is_commutative() const noexcept;

  friend bool operator==(const FiniteSemigroup& a, const FiniteSemigroup& b) {
    return a.n_ == b.n_ && a.table_ == b.table_;
  }

 private:
  FiniteSemigroup(std::size_t n, std::vector<Element> table, std::string label)
      : n_(n), table_(std::move(table)), label_(std::move(label)) {}

  friend class SemigroupBuilder;

  std::size_t n_ = 0;
  std::vector<Element> table_;
  std::string label_;
};

FiniteSemigroup validate_table(std::size_t order, const std::vector<std::vector<long long>>& raw,
                               std::string label = {});

// Product-preserving permutation of a semigroup.
class Automorphism {
 public:
  static Automorphism identity(std::size_t n);
  // Throws InvalidAutomorphism unless images is a permutation preserving
  // products of s.
  static Automorphism from_images(const FiniteSemigroup& s, std::vector<Element> images);

  std::size_t size() const noexcept { return images_.size(); }
  Element operator()(Element x) const noexcept { return images_[x]; }
  const std::vector<Element>& images() const noexcept { return images_; }

  // Smallest k >= 1 with this^k = id.
  std::size_t order() const noexcept { return order_; }
  bool is_involutive() const noexcept { return order_ <= 2; }
  bool is_identity() const noexcept { return order_ == 1; }

  // (a.then(b))(x) = b(a(x)).
  Automorphism then(const Automorphism& b) const;
  Automorphism inverse() const;

  friend bool operator==(const Automorphism& a, const Automorphism& b) {
    return a.images_ == b.images_;
  }
  friend bool operator<(const Automorphism& a, const Automorphism& b) {
    return a.images_ < b.images_;
  }

 private:
  explicit Automorphism(std::vector<Element> images);

  std::vector<Element> images_;
  std::size_t order_ = 1;
};

Automorphism automorphism_power(const Automorphism& sigma, std::size_t k);

// Every automorphism of s, sorted by image list; the identity comes first.
std::vector<Automorphism> enumerate_automorphisms(const FiniteSemigroup& s);

struct SquareSet {
  std::vector<bool> membership;

  bool contains(Element e) const { return membership[e]; }
  bool is_everything() const;
  std::size_t count() const;
};

SquareSet square_set(const FiniteSemigroup& s);

struct EnumerationOptions {
  std::size_t cap = kDefaultEnumerationCap;
  // Keep only the minimum table of each isomorphism class.
  bool canonical = false;
};

// Calls visit on every labeled associative table of the given order, in
// lexicographic (row-major) table order. Throws CapExceeded above the cap.
void for_each_semigroup(std::size_t order, const std::function<void(const FiniteSemigroup&)>& visit,
                        const EnumerationOptions& opts = {});

std::vector<FiniteSemigroup> enumerate_semigroups(std::size_t order,
                                                  const EnumerationOptions& opts = {});

// Lexicographically least table among all relabelings of s.
FiniteSemigroup canonical_form(const FiniteSemigroup& s);

// f(xy) = f(yx) within tol for all x, y.
bool is_central(const CFunc& f, const FiniteSemigroup& s, double tol = 1e-9);
// Central, and f(xyz) = f(xzy) within tol for all x, y, z.
bool is_abelian(const CFunc& f, const FiniteSemigroup& s, double tol = 1e-9);

// Cayley file format: optional '#' comment lines, then n, then n rows of n
// whitespace-separated integers. Throws ParseError on malformed text and
// CapExceeded when n > cap.
FiniteSemigroup parse_cayley(std::string_view text, std::string label = {},
                             std::size_t cap = kDefaultLoadCap);
FiniteSemigroup load_cayley(const std::string& path, std::size_t cap = kDefaultLoadCap);
std::string format_cayley(const FiniteSemigroup& s);

// "id" or a comma-separated image list such as "1,2,0".
Automorphism parse_automorphism(std::string_view literal, const FiniteSemigroup& s);
std::string format_automorphism(const Automorphism& sigma);

}  // namespace semife

#endif  // SEMIFE_SEMIGROUP_HPP_
