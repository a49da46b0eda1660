#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "repshift/repshift.hpp"

namespace testing_support {

using namespace repshift;

inline std::string data_path(std::string const& rel) {
  return std::string(REPSHIFT_DATA_DIR) + "/" + rel;
}

// Abstract directed multigraph wrapped as a ShiftGraph: vertex i carries a
// distinct one-element tuple, edge j has label code j.
inline ShiftGraph hand_graph(std::size_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> const& edges) {
  std::size_t deg = 1;
  while (detail::factorial_checked(deg) < std::max<std::size_t>(n, edges.size())) {
    ++deg;
  }
  auto G = FiniteGroup::symmetric(deg);
  auto elems = std::make_shared<std::vector<GroupElement> const>(G.elements());
  ShiftGraph g(G, 1, elems);
  for (std::size_t i = 0; i < n; ++i) {
    g.add_vertex(Tuple{(*elems)[i]});
  }
  for (std::uint32_t j = 0; j < edges.size(); ++j) {
    g.add_edge(Edge{j, edges[j].first, edges[j].second});
  }
  return g;
}

// Dense exact matrix power trace.
inline std::vector<BigInt> dense_traces(ShiftGraph const& g, std::uint32_t R) {
  auto const n = g.num_vertices();
  std::vector<std::vector<BigInt>> A(n, std::vector<BigInt>(n, 0));
  for (auto const& e : g.edges()) {
    A[e.source][e.target] += 1;
  }
  auto P = A;
  std::vector<BigInt> out;
  for (std::uint32_t r = 1; r <= R; ++r) {
    BigInt t = 0;
    for (std::size_t i = 0; i < n; ++i) {
      t += P[i][i];
    }
    out.push_back(t);
    std::vector<std::vector<BigInt>> Q(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        if (P[i][k] == 0) {
          continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
          if (A[k][j] != 0) {
            Q[i][j] += P[i][k] * A[k][j];
          }
        }
      }
    }
    P = std::move(Q);
  }
  return out;
}

// Closed edge paths of length r counted by plain recursion over the edge list.
inline std::uint64_t brute_closed_paths(ShiftGraph const& g, std::uint32_t r) {
  std::vector<std::vector<std::uint32_t>> succ(g.num_vertices());
  for (auto const& e : g.edges()) {
    succ[e.source].push_back(e.target);
  }
  std::uint64_t count = 0;
  std::vector<std::uint32_t> stack;
  auto rec = [&](auto&& self, std::uint32_t start, std::uint32_t at, std::uint32_t depth) -> void {
    if (depth == r) {
      count += at == start;
      return;
    }
    for (auto t : succ[at]) {
      self(self, start, t, depth + 1);
    }
  };
  for (std::uint32_t v = 0; v < g.num_vertices(); ++v) {
    rec(rec, v, v, 0);
  }
  return count;
}

}  // namespace testing_support
