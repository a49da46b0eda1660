#include <catch_amalgamated.hpp>

#include <array>
#include <filesystem>
#include <map>

#include "test_support.hpp"

using namespace repshift;
using testing_support::data_path;

namespace {

// det(V - t V^T) for a 2x2 Seifert matrix, by direct expansion.
Polynomial seifert_poly(std::array<std::array<int, 2>, 2> const& V) {
  using Lin = std::array<std::int64_t, 2>;  // c0 + c1 t
  auto m = [&](int i, int j) { return Lin{V[i][j], -V[j][i]}; };
  auto mul = [](Lin a, Lin b) {
    return std::array<std::int64_t, 3>{a[0] * b[0], a[0] * b[1] + a[1] * b[0], a[1] * b[1]};
  };
  auto p = mul(m(0, 0), m(1, 1));
  auto q = mul(m(0, 1), m(1, 0));
  return normalize(Polynomial({p[0] - q[0], p[1] - q[1], p[2] - q[2]}));
}

// Cycle type of a permutation, sorted.
std::vector<std::size_t> cycle_type(GroupElement const& g) {
  std::vector<char> seen(g.size());
  std::vector<std::size_t> t;
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = g[j]) {
      seen[j] = 1;
      ++len;
    }
    if (len) {
      t.push_back(len);
    }
  }
  std::sort(t.begin(), t.end());
  return t;
}

using TypeCount = std::map<std::vector<std::size_t>, std::uint64_t>;

// Homomorphisms of the two-bridge group <x, y | x w = w y> into S_n, keyed by
// the cycle type of x.
TypeCount two_bridge_homs(int p, int q, std::size_t n) {
  auto const G = FiniteGroup::symmetric(n);
  auto const els = G.elements();
  TypeCount out;
  for (auto const& x : els) {
    for (auto const& y : els) {
      auto w = G.identity();
      for (int i = 1; i < p; ++i) {
        bool const neg = (i * q / p) % 2 == 1;
        auto const& g = (i % 2 == 1) ? y : x;
        w = G.multiply(w, neg ? G.invert(g) : g);
      }
      if (G.multiply(x, w) == G.multiply(w, y)) {
        ++out[cycle_type(x)];
      }
    }
  }
  return out;
}

TypeCount hnn_homs(HnnSystem const& sys, std::size_t n) {
  TypeCount out;
  for (auto const& rep : find_g_reps(sys, FiniteGroup::symmetric(n))) {
    ++out[cycle_type(rep.x_image)];
  }
  return out;
}

}  // namespace

TEST_CASE("knot file parsing") {
  auto const sys = parse_system(
      "# comment\nname demo\nbase_rank 2\nrelators aa\nu a, b  # trailing\nv b, A\n");
  CHECK(sys.name == "demo");
  CHECK(sys.base_rank == 2);
  REQUIRE(sys.relators.size() == 1);
  CHECK(format_word(sys.relators[0]) == "aa");
  CHECK(sys.u_words.size() == 2);
  CHECK(format_word(sys.v_words[1]) == "A");
  CHECK_FALSE(sys.genus_hint);
  CHECK(parse_system(format_system(sys)) == sys);
}

TEST_CASE("knot file errors") {
  CHECK_THROWS_AS(parse_system("name k\nbase_rank 2\nu a, b\nv a, b, ab\n"), InputError);
  CHECK_THROWS_AS(parse_system("name k\nbase_rank 2\nu a, c\nv a, b\n"), InputError);
  CHECK_THROWS_AS(parse_system("base_rank 2\nu a\nv b\n"), InputError);
  CHECK_THROWS_AS(parse_system("name k\nu a\nv b\n"), InputError);
  CHECK_THROWS_AS(parse_system("name k\nbase_rank 2\nu a,\nv b\n"), InputError);
  CHECK_THROWS_AS(parse_system("name k\nbase_rank 2\nu a,,b\nv b,a\n"), InputError);
  CHECK_THROWS_AS(parse_system("name k\nbase_rank 2\nu a\nu b\nv b\n"), InputError);
  CHECK_THROWS_AS(parse_system("name k\nbase_rank 2\nw a\n"), InputError);
  CHECK_THROWS_AS(parse_system("name k\nbase_rank two\n"), InputError);
  CHECK_THROWS_AS(parse_system("name k\nbase_rank 27\n"), InputError);
  CHECK_THROWS_AS(parse_system("name k\nbase_rank 1\ngenus 0\n"), InputError);
  CHECK_THROWS_AS(parse_system("name k\nbase_rank 1\nfibered maybe\n"), InputError);
  CHECK_THROWS_AS(load_system(data_path("knots/nope.knot")), InputError);
}

TEST_CASE("catalog contents") {
  auto const& cat = builtin_catalog();
  CHECK(cat.size() == 5);
  for (auto const* name : {"unknot", "trefoil", "figure-eight", "5_2", "6_1"}) {
    CHECK(cat.count(name) == 1);
  }
  CHECK(find_in_catalog("3_1")->name == "trefoil");
  CHECK(find_in_catalog("4_1")->name == "figure-eight");
  CHECK(find_in_catalog("0_1")->name == "unknot");
  CHECK_FALSE(find_in_catalog("7_4"));
  CHECK(*cat.at("trefoil").fibered_hint);
  CHECK_FALSE(*cat.at("5_2").fibered_hint);
}

TEST_CASE("data files mirror the built-in catalog") {
  for (auto const& [name, sys] : builtin_catalog()) {
    auto const path = data_path("knots/" + name + ".knot");
    REQUIRE(std::filesystem::exists(path));
    CHECK(load_system(path) == sys);
  }
}

TEST_CASE("Alexander polynomials match Seifert matrices") {
  auto const& cat = builtin_catalog();
  CHECK(alexander_poly(cat.at("unknot")) == Polynomial({1}));
  CHECK(alexander_poly(cat.at("trefoil")) == seifert_poly({{{-1, 1}, {0, -1}}}));
  CHECK(alexander_poly(cat.at("figure-eight")) == seifert_poly({{{-1, 1}, {0, 1}}}));
  CHECK(alexander_poly(cat.at("5_2")) == seifert_poly({{{-1, 1}, {0, -2}}}));
  CHECK(alexander_poly(cat.at("6_1")) == seifert_poly({{{-1, 1}, {0, 2}}}));
  CHECK(format_polynomial(alexander_poly(cat.at("trefoil"))) == "t^2 - t + 1");
  CHECK(format_polynomial(alexander_poly(cat.at("figure-eight"))) == "t^2 - 3t + 1");
  CHECK(format_polynomial(alexander_poly(cat.at("5_2"))) == "2t^2 - 3t + 2");
  CHECK(format_polynomial(alexander_poly(cat.at("6_1"))) == "2t^2 - 5t + 2");
  CHECK(format_polynomial(alexander_poly(cat.at("unknot"))) == "1");
}

TEST_CASE("Alexander polynomial degree is bounded by twice the genus") {
  for (auto const& [name, sys] : builtin_catalog()) {
    auto const p = alexander_poly(sys);
    CHECK(p.degree() <= 2 * static_cast<int>(sys.genus_hint.value_or(0)));
    // symmetric up to units
    auto rev = p.coeffs;
    std::reverse(rev.begin(), rev.end());
    CHECK(normalize(Polynomial(rev)) == p);
    // |Delta(1)| = 1
    BigInt at1 = 0;
    for (auto const& c : p.coeffs) {
      at1 += c;
    }
    CHECK(abs(at1) == 1);
  }
}

TEST_CASE("Alexander polynomial preconditions") {
  CHECK_THROWS_AS(alexander_poly(parse_system("name k\nbase_rank 2\nrelators aa\nu a, b\nv b, a\n")),
                  InputError);
  CHECK_THROWS_AS(alexander_poly(parse_system("name k\nbase_rank 2\nu a\nv b\n")), InputError);
}

TEST_CASE("polynomial formatting") {
  CHECK(format_polynomial(Polynomial({2, -3, 2})) == "2t^2 - 3t + 2");
  CHECK(format_polynomial(Polynomial({-1, 0, 0, 1})) == "t^3 - 1");
  CHECK(format_polynomial(Polynomial()) == "0");
  CHECK(normalize(Polynomial({0, 0, -1, 1})) == Polynomial({1, -1}));
}

TEST_CASE("catalog groups agree with two-bridge presentations in S3 and S4") {
  std::map<std::string, std::pair<int, int>> const fractions{
      {"trefoil", {3, 1}}, {"figure-eight", {5, 3}}, {"5_2", {7, 3}}, {"6_1", {9, 5}}};
  for (auto const& [name, pq] : fractions) {
    auto const& sys = builtin_catalog().at(name);
    for (std::size_t n : {3, 4}) {
      INFO(name << " in S" << n);
      CHECK(hnn_homs(sys, n) == two_bridge_homs(pq.first, pq.second, n));
    }
  }
}
