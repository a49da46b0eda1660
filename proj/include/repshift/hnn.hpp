#pragma once

// Augmented group systems presented as HNN extensions
//
//   G = < x, B | x^-1 u_i x = v_i >,
//
// where B is given by generators and relators, U = <u_i> and V = <v_i> are
// subgroups of B and phi: u_i -> v_i.  The stable letter x is implicit.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "repshift/error.hpp"
#include "repshift/words.hpp"

namespace repshift {

using BigInt = boost::multiprecision::cpp_int;

struct HnnSystem {
  std::string name;
  std::uint32_t base_rank = 0;
  std::vector<Word> relators;
  std::vector<Word> u_words;
  std::vector<Word> v_words;
  std::optional<std::uint32_t> genus_hint;
  std::optional<bool> fibered_hint;  // metadata only

  void validate() const {
    if (u_words.size() != v_words.size()) {
      throw InputError("system '" + name + "': " + std::to_string(u_words.size())
                       + " u-words but " + std::to_string(v_words.size()) + " v-words");
    }
    auto check = [&](std::vector<Word> const& ws, char const* what) {
      for (auto const& w : ws) {
        if (w.min_rank() > base_rank) {
          throw InputError("system '" + name + "': " + what + " word " + format_word(w)
                           + " uses a generator beyond base_rank "
                           + std::to_string(base_rank));
        }
      }
    };
    check(relators, "relator");
    check(u_words, "u");
    check(v_words, "v");
  }

  friend bool operator==(HnnSystem const&, HnnSystem const&) = default;
};

namespace detail {

inline std::string trim(std::string const& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) {
    return {};
  }
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<Word> parse_word_list(std::string const& text, std::uint32_t rank,
                                         std::size_t line_no) {
  std::vector<Word> out;
  if (trim(text).empty()) {
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto w = trim(item);
    if (w.empty()) {
      throw InputError("knot file line " + std::to_string(line_no) + ": empty word in list");
    }
    try {
      out.push_back(parse_word(w, rank));
    } catch (InputError const& e) {
      throw InputError("knot file line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!text.empty() && trim(text).back() == ',') {
    throw InputError("knot file line " + std::to_string(line_no) + ": trailing comma");
  }
  return out;
}

inline std::uint32_t parse_count(std::string const& text, std::size_t line_no) {
  if (text.empty() || text.size() > 6
      || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw InputError("knot file line " + std::to_string(line_no) + ": expected an integer, got '"
                     + text + "'");
  }
  return static_cast<std::uint32_t>(std::stoul(text));
}

}  // namespace detail

// Line-oriented knot file:
//   name <string>
//   base_rank <n>
//   relators <w>, <w>, ...   (optional)
//   u <w>, <w>, ...
//   v <w>, <w>, ...
//   genus <g>                (optional)
//   fibered yes|no           (optional)
// '#' starts a comment.
inline HnnSystem parse_system(std::istream& in) {
  std::map<std::string, std::pair<std::string, std::size_t>> fields;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = detail::trim(line);
    if (line.empty()) {
      continue;
    }
    auto sp = line.find_first_of(" \t");
    std::string key = line.substr(0, sp);
    std::string value = sp == std::string::npos ? std::string() : detail::trim(line.substr(sp));
    static std::array<char const*, 7> const known{"name", "base_rank", "relators", "u",
                                                  "v",    "genus",     "fibered"};
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw InputError("knot file line " + std::to_string(line_no) + ": unknown key '" + key
                       + "'");
    }
    if (!fields.emplace(key, std::make_pair(value, line_no)).second) {
      throw InputError("knot file line " + std::to_string(line_no) + ": duplicate key '" + key
                       + "'");
    }
  }
  HnnSystem sys;
  auto require = [&](char const* key) -> std::pair<std::string, std::size_t> const& {
    auto it = fields.find(key);
    if (it == fields.end()) {
      throw InputError(std::string("knot file: missing '") + key + "' line");
    }
    return it->second;
  };
  sys.name = require("name").first;
  if (sys.name.empty() || sys.name.find_first_of(" \t") != std::string::npos) {
    throw InputError("knot file: name must be a single non-empty token");
  }
  auto const& [rank_text, rank_line] = require("base_rank");
  sys.base_rank = detail::parse_count(rank_text, rank_line);
  if (sys.base_rank > 26) {
    throw InputError("knot file: base_rank exceeds the 26-letter alphabet");
  }
  auto words = [&](char const* key) {
    auto it = fields.find(key);
    return it == fields.end()
               ? std::vector<Word>{}
               : detail::parse_word_list(it->second.first, sys.base_rank, it->second.second);
  };
  sys.relators = words("relators");
  sys.u_words = words("u");
  sys.v_words = words("v");
  if (auto it = fields.find("genus"); it != fields.end()) {
    auto g = detail::parse_count(it->second.first, it->second.second);
    if (g == 0) {
      throw InputError("knot file: genus must be positive");
    }
    sys.genus_hint = g;
  }
  if (auto it = fields.find("fibered"); it != fields.end()) {
    if (it->second.first == "yes") {
      sys.fibered_hint = true;
    } else if (it->second.first == "no") {
      sys.fibered_hint = false;
    } else {
      throw InputError("knot file line " + std::to_string(it->second.second)
                       + ": fibered must be yes or no");
    }
  }
  sys.validate();
  return sys;
}

inline HnnSystem parse_system(std::string const& text) {
  std::istringstream in(text);
  return parse_system(in);
}

inline HnnSystem load_system(std::string const& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open knot file " + path);
  }
  return parse_system(in);
}

inline std::string format_system(HnnSystem const& sys) {
  auto list = [](std::vector<Word> const& ws) {
    std::string s;
    for (std::size_t i = 0; i < ws.size(); ++i) {
      s += (i ? ", " : "") + format_word(ws[i]);
    }
    return s;
  };
  std::ostringstream out;
  out << "name " << sys.name << "\n";
  out << "base_rank " << sys.base_rank << "\n";
  if (!sys.relators.empty()) {
    out << "relators " << list(sys.relators) << "\n";
  }
  if (!sys.u_words.empty() || !sys.v_words.empty()) {
    out << "u " << list(sys.u_words) << "\n";
    out << "v " << list(sys.v_words) << "\n";
  }
  if (sys.genus_hint) {
    out << "genus " << *sys.genus_hint << "\n";
  }
  if (sys.fibered_hint) {
    out << "fibered " << (*sys.fibered_hint ? "yes" : "no") << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Built-in knots.
//
// Every nontrivial entry comes from a two-bridge presentation <x, y | x w = w y>
// with meridian x.  Writing a = y x^-1 and a_j = x^-j a x^j, the relator
// becomes a word r(a_0, a_1, a_2); B = <a_0, a_1, a_2 | r>, U = <a_0, a_1>,
// V = <a_1, a_2>.  A change of basis of B that makes r primitive leaves B
// free of rank 2 on the letters a, b below.

namespace detail {

inline constexpr char const* catalog_text[] = {
    R"(name unknot
base_rank 0
fibered yes
)",
    // two-bridge 3/1: a_2 = a_1 a_0^-1; a = a_0, b = a_1
    R"(name trefoil
base_rank 2
u a, b
v b, bA
genus 1
fibered yes
)",
    // two-bridge 5/3: a_2 = a_1^2 a_0^-1 a_1; a = a_0, b = a_1
    R"(name figure-eight
base_rank 2
u a, b
v b, bbAb
genus 1
fibered yes
)",
    // two-bridge 7/3: r = a1 A0 a1 A0 A2 a1 A2; a = a_1 a_0^-1, b = a_2
    R"(name 5_2
base_rank 2
u AbAAb, bAAb
v bAAb, b
genus 1
fibered no
)",
    // two-bridge 9/5: r = a0 A1 a0 A1 A1 a2 A1 a2 A1; a = a_0 a_1^-1, b = a_2 a_1^-1
    R"(name 6_1
base_rank 2
u abbaa, bbaa
v bbaa, bbbaa
genus 1
fibered no
)",
};

inline std::map<std::string, std::string> const& catalog_aliases() {
  static std::map<std::string, std::string> const aliases{
      {"0_1", "unknot"}, {"3_1", "trefoil"}, {"4_1", "figure-eight"}};
  return aliases;
}

}  // namespace detail

using KnotCatalog = std::map<std::string, HnnSystem>;

inline KnotCatalog const& builtin_catalog() {
  static KnotCatalog const catalog = [] {
    KnotCatalog c;
    for (auto const* text : detail::catalog_text) {
      auto sys = parse_system(std::string(text));
      c.emplace(sys.name, std::move(sys));
    }
    return c;
  }();
  return catalog;
}

// Catalog lookup by name or alias (3_1, 4_1, 0_1).
inline std::optional<HnnSystem> find_in_catalog(std::string const& name) {
  auto const& cat = builtin_catalog();
  std::string key = name;
  if (auto a = detail::catalog_aliases().find(name); a != detail::catalog_aliases().end()) {
    key = a->second;
  }
  if (auto it = cat.find(key); it != cat.end()) {
    return it->second;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Integer polynomials in t.

struct Polynomial {
  std::vector<BigInt> coeffs;  // coeffs[k] multiplies t^k; no trailing zeros

  Polynomial() = default;
  explicit Polynomial(std::vector<BigInt> c) : coeffs(std::move(c)) { trim(); }

  bool is_zero() const noexcept { return coeffs.empty(); }
  int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }

  void trim() {
    while (!coeffs.empty() && coeffs.back() == 0) {
      coeffs.pop_back();
    }
  }

  friend bool operator==(Polynomial const&, Polynomial const&) = default;
};

// Strips factors t^k and makes the lowest-degree coefficient positive.
inline Polynomial normalize(Polynomial p) {
  p.trim();
  if (p.is_zero()) {
    return p;
  }
  auto first = std::find_if(p.coeffs.begin(), p.coeffs.end(), [](BigInt const& c) { return c != 0; });
  p.coeffs.erase(p.coeffs.begin(), first);
  if (p.coeffs.front() < 0) {
    for (auto& c : p.coeffs) {
      c = -c;
    }
  }
  return p;
}

inline std::string format_polynomial(Polynomial const& p) {
  if (p.is_zero()) {
    return "0";
  }
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    BigInt c = p.coeffs[k];
    if (c == 0) {
      continue;
    }
    bool const neg = c < 0;
    if (neg) {
      c = -c;
    }
    if (out.empty()) {
      out += neg ? "-" : "";
    } else {
      out += neg ? " - " : " + ";
    }
    if (c != 1 || k == 0) {
      out += c.str();
    }
    if (k >= 1) {
      out += "t";
    }
    if (k >= 2) {
      out += "^" + std::to_string(k);
    }
  }
  return out;
}

namespace detail {

// Fraction-free Gaussian elimination (Bareiss) with row pivoting.
inline BigInt integer_determinant(std::vector<std::vector<BigInt>> m) {
  std::size_t const n = m.size();
  if (n == 0) {
    return 1;
  }
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) {
        ++r;
      }
      if (r == n) {
        return 0;
      }
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace detail

// det(t E_U - E_V) for the exponent-sum matrices of the u- and v-words,
// normalized.  Requires a free base (no relators) and |u_words| == base_rank.
inline Polynomial alexander_poly(HnnSystem const& sys) {
  sys.validate();
  if (!sys.relators.empty()) {
    throw InputError("alexander_poly: base group must be free (system '" + sys.name
                     + "' has relators)");
  }
  std::size_t const m = sys.u_words.size();
  std::size_t const n = sys.base_rank;
  if (m != n) {
    throw InputError("alexander_poly: exponent matrices are " + std::to_string(m) + "x"
                     + std::to_string(n) + ", need a square matrix");
  }
  std::vector<std::vector<std::int64_t>> eu, ev;
  for (std::size_t i = 0; i < m; ++i) {
    eu.push_back(abelianized_exponents(sys.u_words[i], sys.base_rank));
    ev.push_back(abelianized_exponents(sys.v_words[i], sys.base_rank));
  }
  // The determinant has degree <= m: evaluate at t = 0..m and interpolate.
  std::vector<BigInt> values;
  for (std::size_t t = 0; t <= m; ++t) {
    std::vector<std::vector<BigInt>> mat(m, std::vector<BigInt>(m));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        mat[i][j] = BigInt(static_cast<std::int64_t>(t)) * eu[i][j] - ev[i][j];
      }
    }
    values.push_back(detail::integer_determinant(std::move(mat)));
  }
  // Newton divided differences on nodes 0..m; with unit spacing the k-th
  // difference divided by k! is exact.
  std::vector<BigInt> diff = values;
  std::vector<BigInt> newton;
  BigInt fact = 1;
  for (std::size_t k = 0; k <= m; ++k) {
    if (k > 0) {
      fact *= static_cast<unsigned>(k);
    }
    newton.push_back(diff[0] / fact);
    for (std::size_t i = 0; i + 1 < diff.size(); ++i) {
      diff[i] = diff[i + 1] - diff[i];
    }
    diff.pop_back();
  }
  // Expand sum_k newton[k] * t (t-1) ... (t-k+1).
  std::vector<BigInt> result(m + 1, 0);
  std::vector<BigInt> basis{1};
  for (std::size_t k = 0; k <= m; ++k) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      result[i] += newton[k] * basis[i];
    }
    std::vector<BigInt> next(basis.size() + 1, 0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      next[i + 1] += basis[i];
      next[i] -= basis[i] * static_cast<unsigned>(k);
    }
    basis = std::move(next);
  }
  return normalize(Polynomial(std::move(result)));
}

}  // namespace repshift
