#include "semife/semigroup.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

#include "semife/errors.hpp"

namespace semife {

class SemigroupBuilder {
 public:
  static FiniteSemigroup make(std::size_t n, std::vector<Element> table, std::string label = {}) {
    return FiniteSemigroup(n, std::move(table), std::move(label));
  }
};

namespace {

constexpr Element kUnset = static_cast<Element>(-1);

// First triple (x, y, z) with (xy)z != x(yz), scanning lexicographically.
bool find_associativity_violation(std::size_t n, const std::vector<Element>& t, Element* bad) {
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      for (Element z = 0; z < n; ++z)
        if (t[t[x * n + y] * n + z] != t[x * n + t[y * n + z]]) {
          bad[0] = x;
          bad[1] = y;
          bad[2] = z;
          return true;
        }
  return false;
}

// Checks every triple whose four products are already assigned.
bool partial_table_consistent(std::size_t n, const std::vector<Element>& t) {
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      const Element xy = t[x * n + y];
      if (xy == kUnset) continue;
      for (Element z = 0; z < n; ++z) {
        const Element yz = t[y * n + z];
        if (yz == kUnset) continue;
        const Element left = t[xy * n + z];
        const Element right = t[x * n + yz];
        if (left != kUnset && right != kUnset && left != right) return false;
      }
    }
  return true;
}

std::vector<Element> relabel(std::size_t n, const std::vector<Element>& t,
                             const std::vector<Element>& perm) {
  std::vector<Element> out(n * n);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) out[perm[x] * n + perm[y]] = perm[t[x * n + y]];
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<long long> parse_ints(std::string_view line) {
  std::vector<long long> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), v);
    if (ec != std::errc{}) throw ParseError("expected integer in line '" + std::string(line) + "'");
    i = static_cast<std::size_t>(ptr - line.data());
    if (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r')
      throw ParseError("malformed integer in line '" + std::string(line) + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

FiniteSemigroup FiniteSemigroup::from_table(const std::vector<std::vector<long long>>& raw,
                                            std::string label) {
  const std::size_t n = raw.size();
  if (n == 0) throw ParseError("a semigroup needs at least one element");
  std::vector<Element> table(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    if (raw[x].size() != n)
      throw ParseError("row " + std::to_string(x) + " has " + std::to_string(raw[x].size()) +
                       " entries, expected " + std::to_string(n));
    for (std::size_t y = 0; y < n; ++y) {
      const long long v = raw[x][y];
      if (v < 0 || v >= static_cast<long long>(n)) throw OutOfRangeEntry(x, y, v);
      table[x * n + y] = static_cast<Element>(v);
    }
  }
  Element bad[3];
  if (find_associativity_violation(n, table, bad)) throw AssociativityViolation(bad[0], bad[1], bad[2]);
  return FiniteSemigroup(n, std::move(table), std::move(label));
}

bool FiniteSemigroup::is_commutative() const noexcept {
  for (Element x = 0; x < n_; ++x)
    for (Element y = x + 1; y < n_; ++y)
      if (product(x, y) != product(y, x)) return false;
  return true;
}

FiniteSemigroup validate_table(std::size_t order, const std::vector<std::vector<long long>>& raw,
                               std::string label) {
  if (raw.size() != order)
    throw ParseError("table has " + std::to_string(raw.size()) + " rows, expected " +
                     std::to_string(order));
  return FiniteSemigroup::from_table(raw, std::move(label));
}

// ---------------------------------------------------------------------------
// Automorphisms

Automorphism::Automorphism(std::vector<Element> images) : images_(std::move(images)) {
  const std::size_t n = images_.size();
  std::vector<Element> id(n);
  std::iota(id.begin(), id.end(), Element{0});
  std::vector<Element> cur = id;
  order_ = 0;
  do {
    for (Element& c : cur) c = images_[c];
    ++order_;
  } while (cur != id);
}

Automorphism Automorphism::identity(std::size_t n) {
  std::vector<Element> images(n);
  std::iota(images.begin(), images.end(), Element{0});
  return Automorphism(std::move(images));
}

Automorphism Automorphism::from_images(const FiniteSemigroup& s, std::vector<Element> images) {
  const std::size_t n = s.order();
  if (images.size() != n)
    throw InvalidAutomorphism("image list has " + std::to_string(images.size()) +
                              " entries, semigroup has order " + std::to_string(n));
  std::vector<bool> seen(n, false);
  for (Element e : images) {
    if (e >= n || seen[e]) throw InvalidAutomorphism("image list is not a permutation");
    seen[e] = true;
  }
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      if (images[s.product(x, y)] != s.product(images[x], images[y]))
        throw InvalidAutomorphism("map does not preserve the product at (" + std::to_string(x) +
                                  "," + std::to_string(y) + ")");
  return Automorphism(std::move(images));
}

Automorphism Automorphism::then(const Automorphism& b) const {
  std::vector<Element> out(images_.size());
  for (Element x = 0; x < out.size(); ++x) out[x] = b.images_[images_[x]];
  return Automorphism(std::move(out));
}

Automorphism Automorphism::inverse() const {
  std::vector<Element> out(images_.size());
  for (Element x = 0; x < out.size(); ++x) out[images_[x]] = x;
  return Automorphism(std::move(out));
}

Automorphism automorphism_power(const Automorphism& sigma, std::size_t k) {
  Automorphism out = Automorphism::identity(sigma.size());
  for (std::size_t i = 0; i < k % sigma.order(); ++i) out = out.then(sigma);
  return out;
}

std::vector<Automorphism> enumerate_automorphisms(const FiniteSemigroup& s) {
  const std::size_t n = s.order();
  // pairs (x, y) whose check becomes possible once element k is placed
  std::vector<std::vector<std::pair<Element, Element>>> due(n);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) due[std::max({x, y, s.product(x, y)})].emplace_back(x, y);

  std::vector<Element> perm(n);
  std::vector<bool> used(n, false);
  std::vector<Automorphism> out;
  std::function<void(Element)> place = [&](Element k) {
    if (k == n) {
      out.push_back(Automorphism::from_images(s, perm));
      return;
    }
    for (Element v = 0; v < n; ++v) {
      if (used[v]) continue;
      perm[k] = v;
      bool ok = true;
      for (auto [x, y] : due[k])
        if (perm[s.product(x, y)] != s.product(perm[x], perm[y])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      used[v] = true;
      place(k + 1);
      used[v] = false;
    }
  };
  place(0);
  return out;
}

// ---------------------------------------------------------------------------
// S^2

bool SquareSet::is_everything() const {
  return std::all_of(membership.begin(), membership.end(), [](bool b) { return b; });
}

std::size_t SquareSet::count() const {
  return static_cast<std::size_t>(std::count(membership.begin(), membership.end(), true));
}

SquareSet square_set(const FiniteSemigroup& s) {
  SquareSet out{std::vector<bool>(s.order(), false)};
  for (Element e : s.table()) out.membership[e] = true;
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration

FiniteSemigroup canonical_form(const FiniteSemigroup& s) {
  const std::size_t n = s.order();
  std::vector<Element> perm(n);
  std::iota(perm.begin(), perm.end(), Element{0});
  std::vector<Element> best = s.table();
  do {
    auto t = relabel(n, s.table(), perm);
    if (t < best) best = std::move(t);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return SemigroupBuilder::make(n, std::move(best), s.label());
}

void for_each_semigroup(std::size_t order, const std::function<void(const FiniteSemigroup&)>& visit,
                        const EnumerationOptions& opts) {
  if (order == 0) throw InputError("order must be positive");
  if (order > opts.cap)
    throw CapExceeded("order " + std::to_string(order) + " exceeds enumeration cap " +
                      std::to_string(opts.cap));
  const std::size_t n = order;
  const std::size_t cells = n * n;
  std::vector<Element> t(cells, kUnset);
  std::size_t count = 0;

  std::function<void(std::size_t)> fill = [&](std::size_t cell) {
    if (cell == cells) {
      FiniteSemigroup s = SemigroupBuilder::make(n, t);
      if (opts.canonical && canonical_form(s).table() != t) return;
      s.set_label("sg" + std::to_string(n) + "_" + std::to_string(count++));
      visit(s);
      return;
    }
    for (Element v = 0; v < n; ++v) {
      t[cell] = v;
      if (partial_table_consistent(n, t)) fill(cell + 1);
    }
    t[cell] = kUnset;
  };
  fill(0);
}

std::vector<FiniteSemigroup> enumerate_semigroups(std::size_t order, const EnumerationOptions& opts) {
  std::vector<FiniteSemigroup> out;
  for_each_semigroup(order, [&](const FiniteSemigroup& s) { out.push_back(s); }, opts);
  return out;
}

// ---------------------------------------------------------------------------
// Central / abelian

bool is_central(const CFunc& f, const FiniteSemigroup& s, double tol) {
  const std::size_t n = s.order();
  for (Element x = 0; x < n; ++x)
    for (Element y = x + 1; y < n; ++y)
      if (std::abs(f[s.product(x, y)] - f[s.product(y, x)]) > tol) return false;
  return true;
}

bool is_abelian(const CFunc& f, const FiniteSemigroup& s, double tol) {
  if (!is_central(f, s, tol)) return false;
  const std::size_t n = s.order();
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      for (Element z = y + 1; z < n; ++z) {
        const Element xyz = s.product(s.product(x, y), z);
        const Element xzy = s.product(s.product(x, z), y);
        if (std::abs(f[xyz] - f[xzy]) > tol) return false;
      }
  return true;
}

// ---------------------------------------------------------------------------
// File formats

FiniteSemigroup parse_cayley(std::string_view text, std::string label, std::size_t cap) {
  std::vector<std::vector<long long>> rows;
  long long n = -1;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw_line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    const std::string_view line = trim(raw_line);
    if (line.empty() || line.front() == '#') continue;
    auto ints = parse_ints(line);
    if (n < 0) {
      if (ints.size() != 1) throw ParseError("first data line must hold the order n");
      n = ints.front();
      if (n <= 0) throw ParseError("order must be positive");
      if (static_cast<std::size_t>(n) > cap)
        throw CapExceeded("order " + std::to_string(n) + " exceeds load cap " + std::to_string(cap));
      continue;
    }
    if (rows.size() == static_cast<std::size_t>(n)) throw ParseError("trailing data after table");
    rows.push_back(std::move(ints));
  }
  if (n < 0) throw ParseError("empty Cayley file");
  if (rows.size() != static_cast<std::size_t>(n))
    throw ParseError("expected " + std::to_string(n) + " rows, found " + std::to_string(rows.size()));
  return validate_table(static_cast<std::size_t>(n), rows, std::move(label));
}

FiniteSemigroup load_cayley(const std::string& path, std::size_t cap) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string label = path;
  if (const auto slash = label.find_last_of('/'); slash != std::string::npos)
    label = label.substr(slash + 1);
  if (const auto dot = label.find_last_of('.'); dot != std::string::npos && dot > 0)
    label = label.substr(0, dot);
  return parse_cayley(buf.str(), label, cap);
}

std::string format_cayley(const FiniteSemigroup& s) {
  std::ostringstream out;
  if (!s.label().empty()) out << "# " << s.label() << '\n';
  out << s.order() << '\n';
  for (Element x = 0; x < s.order(); ++x) {
    for (Element y = 0; y < s.order(); ++y) out << (y ? " " : "") << s.product(x, y);
    out << '\n';
  }
  return out.str();
}

Automorphism parse_automorphism(std::string_view literal, const FiniteSemigroup& s) {
  const std::string_view lit = trim(literal);
  if (lit == "id") return Automorphism::identity(s.order());
  std::vector<Element> images;
  std::size_t pos = 0;
  while (pos <= lit.size()) {
    const auto comma = lit.find(',', pos);
    const std::string_view tok =
        trim(lit.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size() || v < 0)
      throw ParseError("bad automorphism literal '" + std::string(literal) + "'");
    images.push_back(static_cast<Element>(v));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return Automorphism::from_images(s, std::move(images));
}

std::string format_automorphism(const Automorphism& sigma) {
  if (sigma.is_identity()) return "id";
  std::string out;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(sigma(i));
  }
  return out;
}

}  // namespace semife
