#pragma once

// Exact arithmetic in finite groups: symmetric groups S_N and groups given by
// a Cayley table.  Products are written left to right: for permutations
// (g * h)(i) = h(g(i)), i.e. g is applied first.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <memory>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "repshift/error.hpp"

namespace repshift {

// Opaque element handle.  For S_N the payload is the image array of a
// permutation of {0, ..., N-1}; for a Cayley group it is a single index.
// The default ordering is lexicographic on the payload, which is the total
// order used wherever a deterministic choice between elements is needed.
class GroupElement {
 public:
  GroupElement() = default;
  explicit GroupElement(std::vector<std::uint32_t> data) : data_(std::move(data)) {}

  std::span<std::uint32_t const> data() const noexcept { return data_; }
  std::size_t size() const noexcept { return data_.size(); }
  std::uint32_t operator[](std::size_t i) const { return data_[i]; }

  friend bool operator==(GroupElement const&, GroupElement const&) = default;
  friend auto operator<=>(GroupElement const&, GroupElement const&) = default;

 private:
  std::vector<std::uint32_t> data_;
};

struct GroupElementHash {
  std::size_t operator()(GroupElement const& g) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto v : g.data()) {
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

namespace detail {

inline std::uint64_t factorial_checked(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) {
    if (f > std::numeric_limits<std::uint64_t>::max() / i) {
      throw InputError("order of S_" + std::to_string(n) + " does not fit in 64 bits");
    }
    f *= i;
  }
  return f;
}

}  // namespace detail

class FiniteGroup {
 public:
  enum class Kind { symmetric, cayley };

  static FiniteGroup symmetric(std::size_t n) {
    if (n == 0) {
      throw InputError("symmetric group degree must be positive");
    }
    FiniteGroup G;
    G.kind_ = Kind::symmetric;
    G.degree_ = n;
    return G;
  }

  // Validates the table eagerly: identity, Latin square, associativity.
  static FiniteGroup cayley(std::vector<std::vector<std::uint32_t>> const& table,
                            std::uint32_t identity) {
    std::size_t const n = table.size();
    if (n == 0) {
      throw InputError("Cayley table must have positive order");
    }
    if (identity >= n) {
      throw InputError("Cayley identity index out of range");
    }
    auto data = std::make_shared<CayleyData>();
    data->order = static_cast<std::uint32_t>(n);
    data->identity = identity;
    data->table.resize(n * n);
    for (std::size_t g = 0; g < n; ++g) {
      if (table[g].size() != n) {
        throw InputError("Cayley table row " + std::to_string(g) + " has "
                         + std::to_string(table[g].size()) + " entries, expected "
                         + std::to_string(n));
      }
      for (std::size_t h = 0; h < n; ++h) {
        if (table[g][h] >= n) {
          throw InputError("Cayley table entry out of range at row " + std::to_string(g));
        }
        data->table[g * n + h] = table[g][h];
      }
    }
    auto at = [&](std::size_t g, std::size_t h) { return data->table[g * n + h]; };
    for (std::size_t g = 0; g < n; ++g) {
      if (at(identity, g) != g || at(g, identity) != g) {
        throw InputError("Cayley identity does not act as identity on " + std::to_string(g));
      }
    }
    std::vector<char> seen(n);
    for (std::size_t g = 0; g < n; ++g) {
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t h = 0; h < n; ++h) {
        if (seen[at(g, h)]++) {
          throw InputError("Cayley table row " + std::to_string(g) + " is not a permutation");
        }
      }
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t h = 0; h < n; ++h) {
        if (seen[at(h, g)]++) {
          throw InputError("Cayley table column " + std::to_string(g) + " is not a permutation");
        }
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        auto const ab = at(a, b);
        for (std::size_t c = 0; c < n; ++c) {
          if (at(ab, c) != at(a, at(b, c))) {
            throw InputError("Cayley table is not associative at (" + std::to_string(a) + ", "
                             + std::to_string(b) + ", " + std::to_string(c) + ")");
          }
        }
      }
    }
    data->inverse.resize(n);
    for (std::size_t g = 0; g < n; ++g) {
      for (std::size_t h = 0; h < n; ++h) {
        if (at(g, h) == identity) {
          data->inverse[g] = static_cast<std::uint32_t>(h);
          break;
        }
      }
    }
    FiniteGroup G;
    G.kind_ = Kind::cayley;
    G.cayley_ = std::move(data);
    return G;
  }

  Kind kind() const noexcept { return kind_; }
  bool is_symmetric() const noexcept { return kind_ == Kind::symmetric; }

  // Degree N of S_N; 0 for Cayley groups.
  std::size_t degree() const noexcept { return is_symmetric() ? degree_ : 0; }

  std::uint64_t order() const {
    return is_symmetric() ? detail::factorial_checked(degree_) : cayley_->order;
  }

  std::string name() const {
    if (is_symmetric()) {
      return "S" + std::to_string(degree_);
    }
    return "cayley(order " + std::to_string(cayley_->order) + ")";
  }

  GroupElement identity() const {
    if (is_symmetric()) {
      std::vector<std::uint32_t> id(degree_);
      std::iota(id.begin(), id.end(), 0u);
      return GroupElement(std::move(id));
    }
    return GroupElement({cayley_->identity});
  }

  bool contains(GroupElement const& g) const {
    if (is_symmetric()) {
      if (g.size() != degree_) {
        return false;
      }
      std::vector<char> seen(degree_);
      for (auto v : g.data()) {
        if (v >= degree_ || seen[v]++) {
          return false;
        }
      }
      return true;
    }
    return g.size() == 1 && g[0] < cayley_->order;
  }

  void check(GroupElement const& g) const {
    if (!contains(g)) {
      throw InputError("element does not belong to " + name());
    }
  }

  // Unchecked product; callers guarantee membership.
  GroupElement multiply(GroupElement const& g, GroupElement const& h) const {
    if (is_symmetric()) {
      std::vector<std::uint32_t> r(degree_);
      for (std::size_t i = 0; i < degree_; ++i) {
        r[i] = h[g[i]];
      }
      return GroupElement(std::move(r));
    }
    return GroupElement({cayley_->table[std::size_t(g[0]) * cayley_->order + h[0]]});
  }

  GroupElement invert(GroupElement const& g) const {
    if (is_symmetric()) {
      std::vector<std::uint32_t> r(degree_);
      for (std::size_t i = 0; i < degree_; ++i) {
        r[g[i]] = static_cast<std::uint32_t>(i);
      }
      return GroupElement(std::move(r));
    }
    return GroupElement({cayley_->inverse[g[0]]});
  }

  GroupElement power(GroupElement const& g, std::uint64_t k) const {
    GroupElement result = identity();
    GroupElement base = g;
    while (k > 0) {
      if (k & 1U) {
        result = multiply(result, base);
      }
      base = multiply(base, base);
      k >>= 1U;
    }
    return result;
  }

  // Position of g in the total order on elements (lexicographic rank for
  // permutations, the index for Cayley groups).
  std::uint64_t rank(GroupElement const& g) const {
    if (!is_symmetric()) {
      return g[0];
    }
    // Lehmer code.
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < degree_; ++i) {
      std::uint64_t smaller = 0;
      for (std::size_t j = i + 1; j < degree_; ++j) {
        smaller += g[j] < g[i];
      }
      r = r * (degree_ - i) + smaller;
    }
    return r;
  }

  // All elements in ascending order; throws CapExceeded beyond `cap`.
  std::vector<GroupElement> elements(std::uint64_t cap = 1'000'000) const {
    std::uint64_t const n = order();
    if (n > cap) {
      throw CapExceeded("enumerating " + name(), n, cap);
    }
    std::vector<GroupElement> out;
    out.reserve(n);
    if (is_symmetric()) {
      std::vector<std::uint32_t> p(degree_);
      std::iota(p.begin(), p.end(), 0u);
      do {
        out.emplace_back(p);
      } while (std::next_permutation(p.begin(), p.end()));
    } else {
      for (std::uint32_t i = 0; i < cayley_->order; ++i) {
        out.push_back(GroupElement({i}));
      }
    }
    return out;
  }

  // Builds a permutation from its 0-indexed image array.
  GroupElement permutation(std::vector<std::uint32_t> images) const {
    GroupElement g(std::move(images));
    check(g);
    return g;
  }

  // Parses cycle notation on symbols 1..N, e.g. "(1 2)(3 4 5)" or "()".
  GroupElement from_cycles(std::string const& text) const;

  // Cycle notation on symbols 1..N for permutations; "g<i>" for Cayley
  // elements.
  std::string format(GroupElement const& g) const {
    if (!is_symmetric()) {
      return "g" + std::to_string(g[0]);
    }
    std::string out;
    std::vector<char> seen(degree_);
    for (std::size_t i = 0; i < degree_; ++i) {
      if (seen[i] || g[i] == i) {
        continue;
      }
      out += '(';
      std::size_t j = i;
      bool first = true;
      while (!seen[j]) {
        seen[j] = 1;
        if (!first) {
          out += ' ';
        }
        out += std::to_string(j + 1);
        first = false;
        j = g[j];
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

  friend bool operator==(FiniteGroup const& a, FiniteGroup const& b) {
    if (a.kind_ != b.kind_) {
      return false;
    }
    if (a.is_symmetric()) {
      return a.degree_ == b.degree_;
    }
    return a.cayley_ == b.cayley_
           || (a.cayley_->identity == b.cayley_->identity && a.cayley_->table == b.cayley_->table);
  }

 private:
  struct CayleyData {
    std::uint32_t order = 0;
    std::uint32_t identity = 0;
    std::vector<std::uint32_t> table;  // row-major, order x order
    std::vector<std::uint32_t> inverse;
  };

  FiniteGroup() = default;

  Kind kind_ = Kind::symmetric;
  std::size_t degree_ = 0;
  std::shared_ptr<CayleyData const> cayley_;
};

inline GroupElement FiniteGroup::from_cycles(std::string const& text) const {
  if (!is_symmetric()) {
    throw InputError("cycle notation requires a symmetric group");
  }
  std::vector<std::uint32_t> img(degree_);
  std::iota(img.begin(), img.end(), 0u);
  std::vector<char> used(degree_);
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && text[pos] == ' ') {
      ++pos;
    }
  };
  skip_ws();
  while (pos < text.size()) {
    if (text[pos] != '(') {
      throw InputError("bad cycle notation: " + text);
    }
    ++pos;
    std::vector<std::uint32_t> cycle;
    while (true) {
      skip_ws();
      if (pos >= text.size()) {
        throw InputError("unterminated cycle: " + text);
      }
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      std::size_t start = pos;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        ++pos;
      }
      if (start == pos) {
        throw InputError("bad cycle notation: " + text);
      }
      auto sym = std::stoul(text.substr(start, pos - start));
      if (sym == 0 || sym > degree_ || used[sym - 1]) {
        throw InputError("bad symbol in cycle notation: " + text);
      }
      used[sym - 1] = 1;
      cycle.push_back(static_cast<std::uint32_t>(sym - 1));
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      img[cycle[i]] = cycle[(i + 1) % cycle.size()];
    }
    skip_ws();
  }
  return GroupElement(std::move(img));
}

// Checked product g * h (g applied first).
inline GroupElement compose(GroupElement const& g, GroupElement const& h, FiniteGroup const& G) {
  G.check(g);
  G.check(h);
  return G.multiply(g, h);
}

inline GroupElement inverse(GroupElement const& g, FiniteGroup const& G) {
  G.check(g);
  return G.invert(g);
}

inline std::uint64_t element_order(GroupElement const& g, FiniteGroup const& G) {
  G.check(g);
  if (G.is_symmetric()) {
    // lcm of cycle lengths
    std::uint64_t r = 1;
    std::vector<char> seen(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (seen[i]) {
        continue;
      }
      std::uint64_t len = 0;
      for (std::size_t j = i; !seen[j]; j = g[j]) {
        seen[j] = 1;
        ++len;
      }
      r = std::lcm(r, len);
    }
    return r;
  }
  auto const e = G.identity();
  std::uint64_t r = 1;
  for (auto p = g; p != e; p = G.multiply(p, g)) {
    ++r;
  }
  return r;
}

// g^{-1} * h * g
inline GroupElement conjugate(GroupElement const& h, GroupElement const& g, FiniteGroup const& G) {
  return G.multiply(G.multiply(G.invert(g), h), g);
}

struct Subgroup {
  FiniteGroup group;
  std::vector<GroupElement> elements;  // sorted ascending

  std::size_t size() const noexcept { return elements.size(); }

  bool contains(GroupElement const& g) const {
    return std::binary_search(elements.begin(), elements.end(), g);
  }
};

// Smallest subgroup containing gens, by orbit closure of the identity under
// right multiplication by the generators (finite, so inverses come for free).
inline Subgroup subgroup_closure(std::span<GroupElement const> gens, FiniteGroup const& G) {
  for (auto const& g : gens) {
    G.check(g);
  }
  std::unordered_set<GroupElement, GroupElementHash> seen;
  std::vector<GroupElement> frontier{G.identity()};
  seen.insert(frontier.front());
  while (!frontier.empty()) {
    auto g = std::move(frontier.back());
    frontier.pop_back();
    for (auto const& s : gens) {
      auto h = G.multiply(g, s);
      if (seen.insert(h).second) {
        frontier.push_back(std::move(h));
      }
    }
  }
  Subgroup H{G, {seen.begin(), seen.end()}};
  std::sort(H.elements.begin(), H.elements.end());
  return H;
}

inline Subgroup subgroup_closure(std::initializer_list<GroupElement> gens, FiniteGroup const& G) {
  return subgroup_closure(std::span<GroupElement const>(gens.begin(), gens.size()), G);
}

// Right cosets H\K = { H k }.  Coset i is represented by the smallest
// element it contains; cosets are numbered by ascending representative.
class RightCosets {
 public:
  RightCosets(Subgroup const& H, Subgroup const& K) : group_(K.group) {
    if (!(H.group == K.group)) {
      throw InputError("right_cosets: subgroups live in different groups");
    }
    for (auto const& h : H.elements) {
      if (!K.contains(h)) {
        throw InputError("right_cosets: H is not contained in K");
      }
    }
    for (auto const& k : K.elements) {
      if (coset_of_.count(k)) {
        continue;
      }
      auto const id = static_cast<std::uint32_t>(reps_.size());
      reps_.push_back(k);
      for (auto const& h : H.elements) {
        coset_of_.emplace(group_.multiply(h, k), id);
      }
    }
  }

  std::size_t size() const noexcept { return reps_.size(); }
  std::vector<GroupElement> const& representatives() const noexcept { return reps_; }

  // Number of the coset containing g (g must lie in K).
  std::uint32_t coset_of(GroupElement const& g) const {
    auto it = coset_of_.find(g);
    if (it == coset_of_.end()) {
      throw InputError("element is not in the ambient subgroup of the coset table");
    }
    return it->second;
  }

  // Right multiplication action: coset i -> (H rep_i) g.
  std::uint32_t act(std::uint32_t i, GroupElement const& g) const {
    return coset_of(group_.multiply(reps_[i], g));
  }

 private:
  FiniteGroup group_;
  std::vector<GroupElement> reps_;
  std::unordered_map<GroupElement, std::uint32_t, GroupElementHash> coset_of_;
};

inline std::vector<GroupElement> right_cosets(Subgroup const& H, Subgroup const& K) {
  return RightCosets(H, K).representatives();
}

inline std::uint64_t elements_of_order_dividing(std::uint64_t r, FiniteGroup const& G) {
  if (r == 0) {
    throw InputError("elements_of_order_dividing: r must be positive");
  }
  auto const e = G.identity();
  std::uint64_t count = 0;
  for (auto const& g : G.elements()) {
    count += G.power(g, r) == e;
  }
  return count;
}

// Cayley table text format:
//   order <n>
//   identity <i>
//   n rows of n space-separated indices (row g, column h holds g*h)
inline FiniteGroup parse_cayley(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&](char const* what) {
    if (!std::getline(in, line)) {
      throw InputError(std::string("Cayley file: missing ") + what);
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
  };
  auto parse_uint = [&](std::string const& tok) -> std::uint32_t {
    if (tok.empty() || tok.size() > 9
        || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw InputError("Cayley file line " + std::to_string(line_no) + ": bad integer '" + tok
                       + "'");
    }
    return static_cast<std::uint32_t>(std::stoul(tok));
  };
  auto keyed = [&](char const* key) {
    std::istringstream ss(line);
    std::string k, v, extra;
    if (!(ss >> k >> v) || k != key || (ss >> extra)) {
      throw InputError("Cayley file line " + std::to_string(line_no) + ": expected '" + key
                       + " <n>'");
    }
    return parse_uint(v);
  };
  next_line("order line");
  auto const n = keyed("order");
  next_line("identity line");
  auto const identity = keyed("identity");
  if (n == 0) {
    throw InputError("Cayley file: order must be positive");
  }
  std::vector<std::vector<std::uint32_t>> table(n);
  for (std::uint32_t g = 0; g < n; ++g) {
    next_line("table row");
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
      table[g].push_back(parse_uint(tok));
    }
    if (table[g].size() != n) {
      throw InputError("Cayley file line " + std::to_string(line_no) + ": expected "
                       + std::to_string(n) + " entries");
    }
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line != "\r") {
      throw InputError("Cayley file line " + std::to_string(line_no) + ": trailing content");
    }
  }
  return FiniteGroup::cayley(table, identity);
}

inline FiniteGroup load_cayley(std::string const& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open Cayley file " + path);
  }
  return parse_cayley(in);
}

}  // namespace repshift
