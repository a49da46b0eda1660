#include <catch_amalgamated.hpp>

#include <random>
#include <set>
#include <sstream>

#include "test_support.hpp"

using namespace repshift;
using testing_support::data_path;

TEST_CASE("composition applies the left factor first") {
  auto const S3 = FiniteGroup::symmetric(3);
  auto const a = S3.from_cycles("(1 2)");
  auto const b = S3.from_cycles("(2 3)");
  // 1 -> 2 -> 3, 3 -> 3 -> 2, 2 -> 1 -> 1
  CHECK(S3.format(compose(a, b, S3)) == "(1 3 2)");
  CHECK(S3.format(compose(b, a, S3)) == "(1 2 3)");
}

TEST_CASE("cycle notation round trip") {
  auto const S5 = FiniteGroup::symmetric(5);
  for (auto const& g : S5.elements()) {
    CHECK(S5.from_cycles(S5.format(g)) == g);
  }
  CHECK(S5.format(S5.identity()) == "()");
  CHECK_THROWS_AS(S5.from_cycles("(1 6)"), InputError);
  CHECK_THROWS_AS(S5.from_cycles("(1 2 1)"), InputError);
  CHECK_THROWS_AS(S5.from_cycles("1 2"), InputError);
}

TEST_CASE("elements are sorted and ranked lexicographically") {
  auto const S4 = FiniteGroup::symmetric(4);
  auto const els = S4.elements();
  REQUIRE(els.size() == 24);
  CHECK(std::is_sorted(els.begin(), els.end()));
  for (std::size_t i = 0; i < els.size(); ++i) {
    CHECK(S4.rank(els[i]) == i);
  }
  CHECK_THROWS_AS(FiniteGroup::symmetric(10).elements(1000), CapExceeded);
}

TEST_CASE("S4 satisfies the group axioms exhaustively") {
  auto const S4 = FiniteGroup::symmetric(4);
  auto const els = S4.elements();
  auto const e = S4.identity();
  for (auto const& g : els) {
    CHECK(compose(g, inverse(g, S4), S4) == e);
    CHECK(compose(inverse(g, S4), g, S4) == e);
    for (auto const& h : els) {
      auto const gh = S4.multiply(g, h);
      for (auto const& k : els) {
        REQUIRE(S4.multiply(gh, k) == S4.multiply(g, S4.multiply(h, k)));
      }
    }
  }
}

TEST_CASE("S5 associativity on random triples") {
  auto const S5 = FiniteGroup::symmetric(5);
  auto const els = S5.elements();
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, els.size() - 1);
  for (int i = 0; i < 2000; ++i) {
    auto const& a = els[pick(rng)];
    auto const& b = els[pick(rng)];
    auto const& c = els[pick(rng)];
    REQUIRE(S5.multiply(S5.multiply(a, b), c) == S5.multiply(a, S5.multiply(b, c)));
  }
}

TEST_CASE("element orders") {
  auto const S5 = FiniteGroup::symmetric(5);
  CHECK(element_order(S5.identity(), S5) == 1);
  CHECK(element_order(S5.from_cycles("(1 2)(3 4 5)"), S5) == 6);
  CHECK(element_order(S5.from_cycles("(1 2 3 4 5)"), S5) == 5);
  std::map<std::uint64_t, int> hist;
  for (auto const& g : S5.elements()) {
    auto const o = element_order(g, S5);
    CHECK(S5.power(g, o) == S5.identity());
    ++hist[o];
  }
  CHECK(hist == std::map<std::uint64_t, int>{{1, 1}, {2, 25}, {3, 20}, {4, 30}, {5, 24}, {6, 20}});
}

TEST_CASE("elements of order dividing r") {
  CHECK(elements_of_order_dividing(3, FiniteGroup::symmetric(3)) == 3);
  CHECK(elements_of_order_dividing(2, FiniteGroup::symmetric(3)) == 4);
  CHECK(elements_of_order_dividing(5, FiniteGroup::symmetric(5)) == 25);
  CHECK(elements_of_order_dividing(1, FiniteGroup::symmetric(4)) == 1);
  CHECK(elements_of_order_dividing(12, FiniteGroup::symmetric(4)) == 24);
  CHECK_THROWS_AS(elements_of_order_dividing(0, FiniteGroup::symmetric(3)), InputError);
}

TEST_CASE("subgroup closure and Lagrange") {
  auto const S4 = FiniteGroup::symmetric(4);
  auto const els = S4.elements();
  CHECK(subgroup_closure({}, S4).size() == 1);
  CHECK(subgroup_closure({S4.from_cycles("(1 2)"), S4.from_cycles("(1 2 3 4)")}, S4).size() == 24);
  CHECK(subgroup_closure({S4.from_cycles("(1 2)(3 4)"), S4.from_cycles("(1 3)(2 4)")}, S4).size()
        == 4);
  CHECK(subgroup_closure({S4.from_cycles("(1 2 3)"), S4.from_cycles("(2 3 4)")}, S4).size() == 12);
  std::mt19937 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, els.size() - 1);
  for (int i = 0; i < 200; ++i) {
    auto const H = subgroup_closure({els[pick(rng)], els[pick(rng)]}, S4);
    CHECK(24 % H.size() == 0);
    for (auto const& a : H.elements) {
      for (auto const& b : H.elements) {
        REQUIRE(H.contains(S4.multiply(a, inverse(b, S4))));
      }
    }
  }
}

TEST_CASE("right cosets partition the ambient subgroup") {
  auto const S4 = FiniteGroup::symmetric(4);
  auto const K = subgroup_closure({S4.from_cycles("(1 2)"), S4.from_cycles("(1 2 3 4)")}, S4);
  auto const H = subgroup_closure({S4.from_cycles("(1 2 3)")}, S4);
  RightCosets const C(H, K);
  REQUIRE(C.size() == 8);
  std::set<std::uint32_t> hit;
  for (auto const& k : K.elements) {
    hit.insert(C.coset_of(k));
  }
  CHECK(hit.size() == 8);
  CHECK(C.coset_of(S4.identity()) == 0);
  for (std::size_t i = 0; i < C.size(); ++i) {
    CHECK(C.coset_of(C.representatives()[i]) == i);
  }
  // the action is a right action: (i.g).h == i.(gh)
  for (auto const& g : K.elements) {
    for (auto const& h : K.elements) {
      for (std::uint32_t i = 0; i < C.size(); ++i) {
        REQUIRE(C.act(C.act(i, g), h) == C.act(i, S4.multiply(g, h)));
      }
    }
  }
  CHECK_THROWS_AS(RightCosets(K, H), InputError);
}

TEST_CASE("Cayley groups from files") {
  auto const Z5 = load_cayley(data_path("groups/Z5.cayley"));
  CHECK(Z5.order() == 5);
  CHECK(elements_of_order_dividing(5, Z5) == 5);
  auto const Q8 = load_cayley(data_path("groups/Q8.cayley"));
  CHECK(Q8.order() == 8);
  CHECK(elements_of_order_dividing(2, Q8) == 2);
  CHECK(elements_of_order_dividing(4, Q8) == 8);
  auto const A4 = load_cayley(data_path("groups/A4.cayley"));
  CHECK(A4.order() == 12);
  CHECK(elements_of_order_dividing(2, A4) == 4);
  CHECK(elements_of_order_dividing(3, A4) == 9);
  for (auto const& g : A4.elements()) {
    CHECK(A4.multiply(g, A4.invert(g)) == A4.identity());
  }
  CHECK(A4.name() == "cayley(order 12)");
  CHECK_THROWS_AS(load_cayley(data_path("groups/missing.cayley")), InputError);
}

TEST_CASE("Cayley table validation") {
  auto parse = [](std::string const& s) {
    std::istringstream in(s);
    return parse_cayley(in);
  };
  CHECK(parse("order 2\nidentity 0\n0 1\n1 0\n\n").order() == 2);
  CHECK_THROWS_AS(parse("order 2\nidentity 0\n0 1\n"), InputError);
  CHECK_THROWS_AS(parse("order 2\nidentity 0\n0 1\n1 1\n"), InputError);
  CHECK_THROWS_AS(parse("order 2\nidentity 1\n0 1\n1 0\n"), InputError);
  CHECK_THROWS_AS(parse("order 2\nidentity 0\n0 1 0\n1 0\n"), InputError);
  CHECK_THROWS_AS(parse("order 2\nidentity 0\n0 x\n1 0\n"), InputError);
  CHECK_THROWS_AS(parse("size 2\nidentity 0\n0 1\n1 0\n"), InputError);
  // Latin square that is not associative
  CHECK_THROWS_AS(parse("order 5\nidentity 0\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\n"),
                  InputError);
  CHECK_THROWS_AS(parse("order 2\nidentity 0\n0 1\n1 0\n3\n"), InputError);
}

TEST_CASE("Cayley S3 matches the permutation S3") {
  auto const C = load_cayley(data_path("groups/S3.cayley"));
  auto const S3 = FiniteGroup::symmetric(3);
  auto const perms = S3.elements();
  auto const cels = C.elements();
  REQUIRE(cels.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      auto const k = S3.rank(S3.multiply(perms[i], perms[j]));
      CHECK(C.multiply(cels[i], cels[j]) == cels[k]);
    }
  }
}

TEST_CASE("checked operations reject foreign elements") {
  auto const S3 = FiniteGroup::symmetric(3);
  auto const S4 = FiniteGroup::symmetric(4);
  CHECK_THROWS_AS(compose(S3.identity(), S4.identity(), S3), InputError);
  CHECK_THROWS_AS(S3.permutation({0, 0, 1}), InputError);
  CHECK_THROWS_AS(FiniteGroup::symmetric(0), InputError);
  CHECK_FALSE(S3.contains(GroupElement({0, 1, 3})));
}
