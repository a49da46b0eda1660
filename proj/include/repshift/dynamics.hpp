#pragma once

// Dynamical invariants of a pruned shift graph: topological entropy,
// periodic-point counts, countability, and transitive-representation
// statistics.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <vector>

#include "repshift/error.hpp"
#include "repshift/group.hpp"
#include "repshift/hnn.hpp"
#include "repshift/shift_graph.hpp"

namespace repshift {

inline constexpr double default_entropy_tol = 1e-10;
inline constexpr std::uint32_t default_max_period = 12;

enum class ShiftVerdict {
  finite_shift,      // disjoint union of cycles
  countable_shift,   // zero entropy, but cycles joined by transient paths
  uncountable_shift  // two cycles through a common vertex
};

inline char const* to_string(ShiftVerdict v) {
  switch (v) {
    case ShiftVerdict::finite_shift:
      return "FiniteShift";
    case ShiftVerdict::countable_shift:
      return "CountableShift";
    case ShiftVerdict::uncountable_shift:
      return "UncountableShift";
  }
  return "?";
}

inline bool is_pruned(ShiftGraph const& graph) {
  auto const in = graph.in_degrees();
  auto const out = graph.out_degrees();
  for (std::size_t v = 0; v < graph.num_vertices(); ++v) {
    if (in[v] == 0 || out[v] == 0) {
      return false;
    }
  }
  return true;
}

namespace detail {

inline void require_pruned(ShiftGraph const& graph, char const* op) {
  if (!is_pruned(graph)) {
    throw InputError(std::string(op) + ": graph is not pruned");
  }
}

// Internal edges of one component, in local vertex numbering, merged into
// (target, multiplicity) rows.
struct LocalMatrix {
  std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> rows;
};

inline LocalMatrix local_matrix(ShiftGraph const& graph, Scc const& scc) {
  std::unordered_map<std::uint32_t, std::uint32_t> local;
  for (std::uint32_t i = 0; i < scc.vertices.size(); ++i) {
    local.emplace(scc.vertices[i], i);
  }
  LocalMatrix m;
  m.rows.resize(scc.vertices.size());
  for (auto const& e : graph.edges()) {
    auto s = local.find(e.source);
    auto t = local.find(e.target);
    if (s != local.end() && t != local.end()) {
      m.rows[s->second].emplace_back(t->second, 1);
    }
  }
  for (auto& row : m.rows) {
    std::sort(row.begin(), row.end());
    std::vector<std::pair<std::uint32_t, std::uint64_t>> merged;
    for (auto const& [t, c] : row) {
      if (!merged.empty() && merged.back().first == t) {
        merged.back().second += c;
      } else {
        merged.emplace_back(t, c);
      }
    }
    row = std::move(merged);
  }
  return m;
}

}  // namespace detail

// Perron root of one strongly connected component.  Simple cycles return
// exactly 1.  Otherwise power iteration on (A + I), which is primitive for
// irreducible A, so periodic components converge too.  Iteration stops once
// successive Rayleigh quotients differ by less than tol and the
// Collatz-Wielandt bracket min_i (Mv)_i / v_i <= rho <= max_i (Mv)_i / v_i
// has closed to the same scale.
inline double scc_spectral_radius(ShiftGraph const& graph, Scc const& scc,
                                  double tol = default_entropy_tol) {
  if (!(tol > 0)) {
    throw InputError("spectral radius tolerance must be positive");
  }
  if (!scc.is_cyclic()) {
    return 0.0;
  }
  if (scc.is_simple_cycle) {
    return 1.0;
  }
  auto const m = detail::local_matrix(graph, scc);
  auto const n = m.rows.size();
  using real = long double;
  std::vector<real> v(n, 1.0L), w(n);
  real prev = std::numeric_limits<real>::infinity();
  real rayleigh = 0;
  constexpr std::size_t max_iterations = 5'000'000;
  for (std::size_t it = 0; it < max_iterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      real s = v[i];
      for (auto const& [j, c] : m.rows[i]) {
        s += static_cast<real>(c) * v[j];
      }
      w[i] = s;
    }
    real vw = 0, vv = 0, lo = std::numeric_limits<real>::infinity(), hi = 0, top = 0;
    for (std::size_t i = 0; i < n; ++i) {
      vw += v[i] * w[i];
      vv += v[i] * v[i];
      real const q = w[i] / v[i];
      lo = std::min(lo, q);
      hi = std::max(hi, q);
      top = std::max(top, w[i]);
    }
    rayleigh = vw / vv;
    bool const settled = std::fabs(rayleigh - prev) < tol;
    bool const bracketed = hi - lo <= 10 * static_cast<real>(tol) * hi;
    if (settled && bracketed) {
      rayleigh = std::clamp(rayleigh, lo, hi);
      break;
    }
    prev = rayleigh;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = w[i] / top;
    }
  }
  return static_cast<double>(rayleigh - 1);
}

// Natural log of the spectral radius of the adjacency matrix; 0 for the empty
// shift and whenever every component is a simple cycle.
inline double entropy(ShiftGraph const& graph, std::vector<Scc> const& sccs,
                      double tol = default_entropy_tol) {
  double rho = 1.0;
  for (auto const& c : sccs) {
    if (c.is_cyclic() && !c.is_simple_cycle) {
      rho = std::max(rho, scc_spectral_radius(graph, c, tol));
    }
  }
  return rho > 1.0 ? std::log(rho) : 0.0;
}

inline double entropy(ShiftGraph const& graph, double tol = default_entropy_tol) {
  detail::require_pruned(graph, "entropy");
  return entropy(graph, scc_decomposition(graph), tol);
}

namespace detail {

// trace(A^r), r = 1..R, of one non-cycle component: propagate each unit
// vector R steps and read off the diagonal.  Tries 64-bit arithmetic first.
template <typename Int>
bool component_traces(LocalMatrix const& m, std::uint32_t R, std::vector<BigInt>& out) {
  auto const n = m.rows.size();
  std::vector<Int> acc(R, 0);
  std::vector<Int> x(n), y(n);
  for (std::size_t start = 0; start < n; ++start) {
    std::fill(x.begin(), x.end(), Int(0));
    x[start] = 1;
    for (std::uint32_t r = 0; r < R; ++r) {
      std::fill(y.begin(), y.end(), Int(0));
      for (std::size_t j = 0; j < n; ++j) {
        if (x[j] == 0) {
          continue;
        }
        for (auto const& [k, c] : m.rows[j]) {
          if constexpr (std::is_same_v<Int, std::uint64_t>) {
            std::uint64_t prod = 0;
            if (__builtin_mul_overflow(x[j], c, &prod) || __builtin_add_overflow(y[k], prod, &y[k])) {
              return false;
            }
          } else {
            y[k] += x[j] * c;
          }
        }
      }
      std::swap(x, y);
      if constexpr (std::is_same_v<Int, std::uint64_t>) {
        if (__builtin_add_overflow(acc[r], x[start], &acc[r])) {
          return false;
        }
      } else {
        acc[r] += x[start];
      }
    }
  }
  for (std::uint32_t r = 0; r < R; ++r) {
    out[r] += BigInt(acc[r]);
  }
  return true;
}

}  // namespace detail

// Entry r-1 is trace(A^r): the number of closed edge paths of length r, i.e.
// the number of points of period r.  Exact.
inline std::vector<BigInt> fix_counts(ShiftGraph const& graph, std::vector<Scc> const& sccs,
                                      std::uint32_t R) {
  if (R == 0) {
    throw InputError("fix_counts: R must be at least 1");
  }
  std::vector<BigInt> out(R, 0);
  for (auto const& c : sccs) {
    if (!c.is_cyclic()) {
      continue;
    }
    if (c.is_simple_cycle) {
      auto const len = c.vertices.size();
      for (std::uint32_t r = 1; r <= R; ++r) {
        if (r % len == 0) {
          out[r - 1] += len;
        }
      }
      continue;
    }
    auto const m = detail::local_matrix(graph, c);
    std::vector<BigInt> part(R, 0);
    if (!detail::component_traces<std::uint64_t>(m, R, part)) {
      std::fill(part.begin(), part.end(), BigInt(0));
      detail::component_traces<BigInt>(m, R, part);
    }
    for (std::uint32_t r = 0; r < R; ++r) {
      out[r] += part[r];
    }
  }
  return out;
}

inline std::vector<BigInt> fix_counts(ShiftGraph const& graph, std::uint32_t R) {
  return fix_counts(graph, scc_decomposition(graph), R);
}

inline ShiftVerdict countability_verdict(ShiftGraph const& graph, std::vector<Scc> const& sccs) {
  for (auto const& c : sccs) {
    if (c.is_cyclic() && !c.is_simple_cycle) {
      return ShiftVerdict::uncountable_shift;
    }
  }
  auto const in = graph.in_degrees();
  auto const out = graph.out_degrees();
  for (std::size_t v = 0; v < graph.num_vertices(); ++v) {
    if (in[v] != 1 || out[v] != 1) {
      return ShiftVerdict::countable_shift;
    }
  }
  return ShiftVerdict::finite_shift;
}

inline ShiftVerdict countability_verdict(ShiftGraph const& graph) {
  detail::require_pruned(graph, "countability_verdict");
  return countability_verdict(graph, scc_decomposition(graph));
}

// Calls visit(edge ids) for every closed edge path of length r, each rotation
// counted separately (they are distinct points of period r).  Gives up with
// CapExceeded once more than `cap` closed paths have been seen.
inline void for_each_closed_path(ShiftGraph const& graph, std::uint32_t r,
                                 std::function<void(std::span<std::uint32_t const>)> const& visit,
                                 std::uint64_t cap = 1'000'000) {
  if (r == 0) {
    throw InputError("closed paths need positive length");
  }
  std::vector<std::vector<std::uint32_t>> out_edges(graph.num_vertices());
  for (std::uint32_t e = 0; e < graph.num_edges(); ++e) {
    out_edges[graph.edge(e).source].push_back(e);
  }
  std::vector<std::uint32_t> path;
  std::uint64_t found = 0;
  std::uint64_t explored = 0;
  std::function<void(std::uint32_t, std::uint32_t)> dfs = [&](std::uint32_t start,
                                                             std::uint32_t at) {
    if (++explored > 64 * cap) {
      throw CapExceeded("enumerating closed paths of length " + std::to_string(r), explored, 64 * cap);
    }
    if (path.size() == r) {
      if (at == start) {
        if (++found > cap) {
          throw CapExceeded("enumerating closed paths of length " + std::to_string(r), found, cap);
        }
        visit(path);
      }
      return;
    }
    for (auto e : out_edges[at]) {
      path.push_back(e);
      dfs(start, graph.edge(e).target);
      path.pop_back();
    }
  };
  for (std::uint32_t v = 0; v < graph.num_vertices(); ++v) {
    dfs(v, v);
  }
}

struct TransitiveStats {
  std::uint64_t total = 0;        // closed paths of length r
  std::uint64_t transitive = 0;   // ... whose representation is transitive
  std::uint64_t subgroups = 0;    // transitive / (N-1)!
};

inline bool acts_transitively(std::span<GroupElement const> gens, std::size_t degree) {
  std::vector<std::uint32_t> parent(degree);
  std::iota(parent.begin(), parent.end(), 0u);
  std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  };
  std::size_t components = degree;
  for (auto const& g : gens) {
    for (std::uint32_t i = 0; i < degree; ++i) {
      auto a = find(i);
      auto b = find(g[i]);
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
  }
  return components <= 1;
}

// For Sigma = S_N: classifies the period-r points by whether the image of
// the corresponding representation of K (generated by the edge labels along
// the closed path) is transitive on {1..N}.
inline TransitiveStats transitive_stats(ShiftGraph const& graph, std::uint32_t r,
                                        std::uint64_t path_cap = 1'000'000) {
  auto const& G = graph.group();
  if (!G.is_symmetric()) {
    throw InputError("transitive_stats requires a symmetric group");
  }
  detail::require_pruned(graph, "transitive_stats");
  auto const N = G.degree();
  TransitiveStats stats;
  std::vector<GroupElement> gens;
  for_each_closed_path(
      graph, r,
      [&](std::span<std::uint32_t const> path) {
        ++stats.total;
        gens.clear();
        for (auto e : path) {
          auto lab = graph.label(graph.edge(e));
          gens.insert(gens.end(), lab.begin(), lab.end());
        }
        stats.transitive += acts_transitively(gens, N);
      },
      path_cap);
  std::uint64_t const f = detail::factorial_checked(N - 1);
  if (stats.transitive % f != 0) {
    throw std::logic_error("transitive count " + std::to_string(stats.transitive)
                           + " is not divisible by (N-1)! = " + std::to_string(f));
  }
  stats.subgroups = stats.transitive / f;
  return stats;
}

// (1/R) log |Fix(sigma^R)|, 0 when the count is 0 or 1.
inline double growth_rate_estimate(std::span<BigInt const> counts) {
  if (counts.size() < 8) {
    throw InputError("growth_rate_estimate needs counts for r = 1..R with R >= 8");
  }
  auto const& last = counts.back();
  if (last <= 1) {
    return 0.0;
  }
  auto const R = static_cast<long double>(counts.size());
  return static_cast<double>(std::log(last.convert_to<long double>()) / R);
}

struct SccSummary {
  std::size_t vertices = 0;
  std::uint64_t edges = 0;
  bool is_simple_cycle = false;
  double spectral_radius = 0;
};

struct DynamicsReport {
  bool empty = false;
  double entropy = 0;
  std::vector<BigInt> fix_counts;  // r = 1..R
  ShiftVerdict verdict = ShiftVerdict::finite_shift;
  std::vector<SccSummary> scc_summary;  // cyclic components only
  std::optional<double> growth_rate;    // when R >= 8
};

inline DynamicsReport analyze(ShiftGraph const& graph, std::uint32_t R = default_max_period,
                              double tol = default_entropy_tol) {
  detail::require_pruned(graph, "analyze");
  auto const sccs = scc_decomposition(graph);
  DynamicsReport rep;
  rep.empty = graph.empty();
  double rho = 1.0;
  for (auto const& c : sccs) {
    if (!c.is_cyclic()) {
      continue;
    }
    SccSummary s{c.vertices.size(), c.internal_edges, c.is_simple_cycle,
                 scc_spectral_radius(graph, c, tol)};
    rho = std::max(rho, s.spectral_radius);
    rep.scc_summary.push_back(s);
  }
  rep.entropy = rho > 1.0 ? std::log(rho) : 0.0;
  rep.fix_counts = fix_counts(graph, sccs, R);
  rep.verdict = countability_verdict(graph, sccs);
  if (R >= 8) {
    rep.growth_rate = growth_rate_estimate(rep.fix_counts);
  }
  return rep;
}

inline std::string format_real(double x) {
  std::ostringstream s;
  s << std::setprecision(12) << std::fixed << x;
  return s.str();
}

inline void write_report(DynamicsReport const& rep, std::ostream& out) {
  out << "entropy " << format_real(rep.entropy) << (rep.empty ? " (empty shift)" : "") << "\n";
  out << "verdict " << to_string(rep.verdict) << "\n";
  std::size_t nonsimple = 0;
  for (auto const& s : rep.scc_summary) {
    nonsimple += !s.is_simple_cycle;
  }
  out << "cyclic components " << rep.scc_summary.size() << " (not simple cycles: " << nonsimple
      << ")\n";
  for (auto const& s : rep.scc_summary) {
    if (!s.is_simple_cycle) {
      out << "  component vertices " << s.vertices << ", edges " << s.edges
          << ", spectral radius " << format_real(s.spectral_radius) << "\n";
    }
  }
  out << "growth rate estimate ";
  if (rep.growth_rate) {
    out << format_real(*rep.growth_rate) << " (R = " << rep.fix_counts.size() << ")\n";
  } else {
    out << "n/a (needs R >= 8)\n";
  }
  out << "   r  |Fix(sigma^r)|\n";
  for (std::size_t r = 0; r < rep.fix_counts.size(); ++r) {
    out << std::setw(4) << (r + 1) << "  " << rep.fix_counts[r] << "\n";
  }
}

// key=value lines for scripts.
inline void write_machine_block(DynamicsReport const& rep, std::ostream& out) {
  out << "entropy=" << format_real(rep.entropy) << "\n";
  out << "verdict=" << to_string(rep.verdict) << "\n";
  for (std::size_t r = 0; r < rep.fix_counts.size(); ++r) {
    out << "fix_r_" << (r + 1) << "=" << rep.fix_counts[r] << "\n";
  }
}

}  // namespace repshift
