#pragma once

// The labeled directed graph presenting the representation shift of an
// augmented group system in a finite group.  Vertices are tuples of images of
// the U-generators; every homomorphism rho: B -> G contributes one edge from
// (rho(u_1), ..., rho(u_m)) to (rho(v_1), ..., rho(v_m)).  Bi-infinite edge
// paths are exactly the representations of the kernel K, and the shift map
// is the left shift on paths.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "repshift/error.hpp"
#include "repshift/group.hpp"
#include "repshift/hnn.hpp"
#include "repshift/words.hpp"

namespace repshift {

inline constexpr std::uint64_t default_edge_cap = 10'000'000;

using Tuple = std::vector<GroupElement>;

struct Vertex {
  Tuple tuple;
};

struct Edge {
  std::uint64_t label_code;  // lexicographic rank of the generator assignment
  std::uint32_t source;
  std::uint32_t target;
};

struct EdgeEndpoints {
  Tuple source;
  Tuple target;
};

// Endpoints of the edge labeled by `label`, or nullopt when the assignment
// violates a relator of B (and so is not a homomorphism).
inline std::optional<EdgeEndpoints> edge_endpoints(HnnSystem const& sys, FiniteGroup const& G,
                                                   std::span<GroupElement const> label) {
  if (label.size() != sys.base_rank) {
    throw InputError("edge label has " + std::to_string(label.size())
                     + " generator images, base rank is " + std::to_string(sys.base_rank));
  }
  auto const e = G.identity();
  for (auto const& r : sys.relators) {
    if (evaluate(r, label, G) != e) {
      return std::nullopt;
    }
  }
  EdgeEndpoints ep;
  ep.source.reserve(sys.u_words.size());
  ep.target.reserve(sys.v_words.size());
  for (auto const& w : sys.u_words) {
    ep.source.push_back(evaluate(w, label, G));
  }
  for (auto const& w : sys.v_words) {
    ep.target.push_back(evaluate(w, label, G));
  }
  return ep;
}

struct Scc {
  std::vector<std::uint32_t> vertices;  // ascending
  std::uint64_t internal_edges = 0;
  bool is_simple_cycle = false;

  // A single vertex without a self-loop is a trivial (acyclic) component.
  bool is_cyclic() const noexcept { return internal_edges > 0; }
};

class ShiftGraph {
 public:
  ShiftGraph(FiniteGroup group, std::uint32_t base_rank,
             std::shared_ptr<std::vector<GroupElement> const> elements)
      : group_(std::move(group)), base_rank_(base_rank), elements_(std::move(elements)) {}

  FiniteGroup const& group() const noexcept { return group_; }
  std::uint32_t base_rank() const noexcept { return base_rank_; }

  std::size_t num_vertices() const noexcept { return vertices_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return vertices_.empty(); }

  std::vector<Vertex> const& vertices() const noexcept { return vertices_; }
  std::vector<Edge> const& edges() const noexcept { return edges_; }
  Vertex const& vertex(std::size_t i) const { return vertices_.at(i); }
  Edge const& edge(std::size_t i) const { return edges_.at(i); }

  // Generator assignment carried by an edge.
  std::vector<GroupElement> label(Edge const& e) const { return decode(e.label_code); }

  std::uint64_t encode(std::span<GroupElement const> label) const {
    std::uint64_t code = 0;
    auto const n = elements_->size();
    for (auto const& g : label) {
      code = code * n + group_.rank(g);
    }
    return code;
  }

  std::vector<GroupElement> decode(std::uint64_t code) const {
    auto const n = elements_->size();
    std::vector<GroupElement> out(base_rank_);
    for (std::size_t i = base_rank_; i-- > 0;) {
      out[i] = (*elements_)[code % n];
      code /= n;
    }
    return out;
  }

  std::optional<std::uint32_t> find_vertex(Tuple const& t) const {
    auto it = vertex_index_.find(t);
    if (it == vertex_index_.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  // Edges are stored in ascending label order, so lookup is a binary search.
  std::optional<std::uint32_t> find_edge(std::span<GroupElement const> label) const {
    if (label.size() != base_rank_) {
      return std::nullopt;
    }
    for (auto const& g : label) {
      if (!group_.contains(g)) {
        return std::nullopt;
      }
    }
    auto const code = encode(label);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), code,
                               [](Edge const& e, std::uint64_t c) { return e.label_code < c; });
    if (it == edges_.end() || it->label_code != code) {
      return std::nullopt;
    }
    return static_cast<std::uint32_t>(it - edges_.begin());
  }

  // Sparse adjacency: for each vertex, (target, multiplicity) sorted by target.
  std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> adjacency() const {
    std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> adj(vertices_.size());
    for (auto const& e : edges_) {
      adj[e.source].emplace_back(e.target, 1);
    }
    for (auto& row : adj) {
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
    return adj;
  }

  std::vector<std::uint64_t> out_degrees() const {
    std::vector<std::uint64_t> d(vertices_.size());
    for (auto const& e : edges_) {
      ++d[e.source];
    }
    return d;
  }

  std::vector<std::uint64_t> in_degrees() const {
    std::vector<std::uint64_t> d(vertices_.size());
    for (auto const& e : edges_) {
      ++d[e.target];
    }
    return d;
  }

  // Same group and element table, no vertices or edges.
  ShiftGraph empty_like() const { return ShiftGraph(group_, base_rank_, elements_); }

  std::uint32_t add_vertex(Tuple t) {
    auto [it, inserted] =
        vertex_index_.try_emplace(t, static_cast<std::uint32_t>(vertices_.size()));
    if (inserted) {
      vertices_.push_back(Vertex{std::move(t)});
    }
    return it->second;
  }

  void add_edge(Edge e) { edges_.push_back(e); }

 private:
  struct TupleHash {
    std::size_t operator()(Tuple const& t) const noexcept {
      std::size_t h = 0x345678;
      GroupElementHash eh;
      for (auto const& g : t) {
        h = h * 1000003 ^ eh(g);
      }
      return h;
    }
  };

  FiniteGroup group_;
  std::uint32_t base_rank_;
  std::shared_ptr<std::vector<GroupElement> const> elements_;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::unordered_map<Tuple, std::uint32_t, TupleHash> vertex_index_;
};

// |G|^rank, saturating at UINT64_MAX.
inline std::uint64_t assignment_count(std::uint64_t order, std::uint32_t rank) {
  std::uint64_t n = 1;
  for (std::uint32_t i = 0; i < rank; ++i) {
    if (order != 0 && n > std::numeric_limits<std::uint64_t>::max() / order) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    n *= order;
  }
  return n;
}

// One edge per homomorphism B -> G, in lexicographic assignment order;
// vertices are created as edge endpoints in order of first appearance.
inline ShiftGraph build_graph(HnnSystem const& sys, FiniteGroup const& G,
                              std::uint64_t edge_cap = default_edge_cap) {
  sys.validate();
  std::uint64_t order = 0;
  try {
    order = G.order();
  } catch (InputError const&) {
    throw CapExceeded("building the shift graph over " + G.name(),
                      std::numeric_limits<std::uint64_t>::max(), edge_cap);
  }
  auto const required = assignment_count(order, sys.base_rank);
  if (required > edge_cap) {
    throw CapExceeded("building the shift graph of " + sys.name + " over " + G.name(), required,
                      edge_cap);
  }
  // Rank 0 needs no element table (and G may be too large to enumerate).
  auto elements = std::make_shared<std::vector<GroupElement> const>(
      sys.base_rank == 0 ? std::vector<GroupElement>{} : G.elements(edge_cap));
  ShiftGraph graph(G, sys.base_rank, elements);
  std::vector<std::size_t> digits(sys.base_rank, 0);
  std::vector<GroupElement> label(sys.base_rank, G.identity());
  for (auto& g : label) {
    g = elements->front();
  }
  for (std::uint64_t code = 0; code < required; ++code) {
    if (auto ep = edge_endpoints(sys, G, label)) {
      auto const s = graph.add_vertex(std::move(ep->source));
      auto const t = graph.add_vertex(std::move(ep->target));
      graph.add_edge(Edge{code, s, t});
    }
    // odometer increment, last generator fastest
    for (std::size_t i = sys.base_rank; i-- > 0;) {
      if (++digits[i] < elements->size()) {
        label[i] = (*elements)[digits[i]];
        break;
      }
      digits[i] = 0;
      label[i] = (*elements)[0];
    }
  }
  return graph;
}

// Deletes every vertex with in-degree 0 or out-degree 0, together with its
// edges, until none remain.  Survivors keep their relative order.
inline ShiftGraph prune(ShiftGraph const& graph) {
  auto const nv = graph.num_vertices();
  auto const& edges = graph.edges();
  std::vector<std::vector<std::uint32_t>> out_edges(nv), in_edges(nv);
  for (std::uint32_t i = 0; i < edges.size(); ++i) {
    out_edges[edges[i].source].push_back(i);
    in_edges[edges[i].target].push_back(i);
  }
  auto indeg = graph.in_degrees();
  auto outdeg = graph.out_degrees();
  std::vector<char> dead_vertex(nv, 0), dead_edge(edges.size(), 0);
  std::vector<std::uint32_t> worklist;
  for (std::uint32_t v = 0; v < nv; ++v) {
    if (indeg[v] == 0 || outdeg[v] == 0) {
      dead_vertex[v] = 1;
      worklist.push_back(v);
    }
  }
  while (!worklist.empty()) {
    auto const v = worklist.back();
    worklist.pop_back();
    auto kill = [&](std::uint32_t e) {
      if (dead_edge[e]) {
        return;
      }
      dead_edge[e] = 1;
      auto const s = edges[e].source;
      auto const t = edges[e].target;
      --outdeg[s];
      --indeg[t];
      for (auto w : {s, t}) {
        if (!dead_vertex[w] && (indeg[w] == 0 || outdeg[w] == 0)) {
          dead_vertex[w] = 1;
          worklist.push_back(w);
        }
      }
    };
    for (auto e : out_edges[v]) {
      kill(e);
    }
    for (auto e : in_edges[v]) {
      kill(e);
    }
  }
  auto out = graph.empty_like();
  std::vector<std::uint32_t> new_id(nv, 0);
  for (std::uint32_t v = 0; v < nv; ++v) {
    if (!dead_vertex[v]) {
      new_id[v] = out.add_vertex(graph.vertex(v).tuple);
    }
  }
  for (std::uint32_t e = 0; e < edges.size(); ++e) {
    if (!dead_edge[e]) {
      out.add_edge(Edge{edges[e].label_code, new_id[edges[e].source], new_id[edges[e].target]});
    }
  }
  return out;
}

// Strongly connected components (iterative Tarjan), ordered by smallest
// vertex.  A component is a simple cycle when it has as many internal edges
// as vertices and every vertex has exactly one internal out-edge.
inline std::vector<Scc> scc_decomposition(ShiftGraph const& graph) {
  auto const nv = static_cast<std::uint32_t>(graph.num_vertices());
  std::vector<std::vector<std::uint32_t>> succ(nv);
  for (auto const& e : graph.edges()) {
    succ[e.source].push_back(e.target);
  }
  constexpr std::uint32_t unvisited = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> index(nv, unvisited), low(nv, 0), comp(nv, unvisited);
  std::vector<char> on_stack(nv, 0);
  std::vector<std::uint32_t> stack;
  std::vector<std::pair<std::uint32_t, std::size_t>> call;  // (vertex, next successor)
  std::uint32_t counter = 0;
  std::uint32_t ncomp = 0;
  for (std::uint32_t root = 0; root < nv; ++root) {
    if (index[root] != unvisited) {
      continue;
    }
    call.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [v, next] = call.back();
      if (next < succ[v].size()) {
        auto const w = succ[v][next++];
        if (index[w] == unvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = ncomp;
        } while (w != v);
        ++ncomp;
      }
      auto const finished = v;
      call.pop_back();
      if (!call.empty()) {
        auto const parent = call.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }
  std::vector<Scc> sccs(ncomp);
  for (std::uint32_t v = 0; v < nv; ++v) {
    sccs[comp[v]].vertices.push_back(v);
  }
  std::vector<std::uint64_t> internal_out(nv, 0);
  for (auto const& e : graph.edges()) {
    if (comp[e.source] == comp[e.target]) {
      ++sccs[comp[e.source]].internal_edges;
      ++internal_out[e.source];
    }
  }
  for (auto& c : sccs) {
    c.is_simple_cycle = c.internal_edges == c.vertices.size()
                        && std::all_of(c.vertices.begin(), c.vertices.end(),
                                       [&](std::uint32_t v) { return internal_out[v] == 1; });
  }
  std::sort(sccs.begin(), sccs.end(),
            [](Scc const& a, Scc const& b) { return a.vertices.front() < b.vertices.front(); });
  return sccs;
}

inline std::string format_tuple(Tuple const& t, FiniteGroup const& G) {
  std::string s = "[";
  for (std::size_t i = 0; i < t.size(); ++i) {
    s += (i ? ", " : "") + G.format(t[i]);
  }
  return s + "]";
}

inline std::string format_label(std::span<GroupElement const> label, FiniteGroup const& G) {
  std::string s;
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (i) {
      s += ' ';
    }
    s += static_cast<char>('a' + i);
    s += '=';
    s += G.format(label[i]);
  }
  return s;
}

// GraphViz DOT; output depends only on the graph contents.
inline void export_dot(ShiftGraph const& graph, std::ostream& out) {
  auto const& G = graph.group();
  out << "digraph shift {\n";
  for (std::size_t v = 0; v < graph.num_vertices(); ++v) {
    out << "  v" << v << " [label=\"" << format_tuple(graph.vertex(v).tuple, G) << "\"];\n";
  }
  for (auto const& e : graph.edges()) {
    out << "  v" << e.source << " -> v" << e.target << " [label=\""
        << format_label(graph.label(e), G) << "\"];\n";
  }
  out << "}\n";
}

// Dense adjacency matrix, one row per vertex, comma-separated counts.
inline void export_csv(ShiftGraph const& graph, std::ostream& out) {
  auto const adj = graph.adjacency();
  auto const n = graph.num_vertices();
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t k = 0;
    for (std::size_t w = 0; w < n; ++w) {
      std::uint64_t c = 0;
      if (k < adj[v].size() && adj[v][k].first == w) {
        c = adj[v][k++].second;
      }
      out << (w ? "," : "") << c;
    }
    out << "\n";
  }
}

namespace detail {

template <typename Writer>
void write_file(std::string const& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot open " + path + " for writing");
  }
  writer(out);
  out.flush();
  if (!out) {
    throw Error("error writing " + path);
  }
}

}  // namespace detail

inline void export_dot(ShiftGraph const& graph, std::string const& path) {
  detail::write_file(path, [&](std::ostream& out) { export_dot(graph, out); });
}

inline void export_csv(ShiftGraph const& graph, std::string const& path) {
  detail::write_file(path, [&](std::ostream& out) { export_csv(graph, out); });
}

}  // namespace repshift
