#pragma once

// Nonfiberedness detection.  A shift with positive entropy is uncountable,
// which forces the kernel K to be infinitely generated, so the knot is not
// fibered.  probe_knot scans S_2, S_3, ... for such a witness.
//
// The second half builds periodic points from finite quotients of G: given
// rho~: G -> Sigma with rho(U) a proper subgroup of rho(K), K acts on the
// right cosets rho(U)\rho(K) and this action is a point of period
// ord(rho~(x)) in the shift over S_N, N the index.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "repshift/dynamics.hpp"
#include "repshift/error.hpp"
#include "repshift/group.hpp"
#include "repshift/hnn.hpp"
#include "repshift/shift_graph.hpp"
#include "repshift/words.hpp"

namespace repshift {

// A representation of G = <x, B | x^-1 u_i x = v_i> into a finite group.
struct GRep {
  GroupElement x_image;
  std::vector<GroupElement> base_images;
  Subgroup rho_u;   // <rho(u_i)>
  Subgroup rho_k;   // <rho(x)^-j rho(b) rho(x)^j : b, 0 <= j < ord(rho(x))>
  bool separated = false;  // rho_u is a proper subgroup of rho_k
};

inline bool is_hnn_representation(HnnSystem const& sys, FiniteGroup const& G,
                                  GroupElement const& x, std::span<GroupElement const> base) {
  auto ep = edge_endpoints(sys, G, base);
  if (!ep) {
    return false;
  }
  for (std::size_t i = 0; i < ep->source.size(); ++i) {
    if (conjugate(ep->source[i], x, G) != ep->target[i]) {
      return false;
    }
  }
  return true;
}

// Validates the HNN relations and fills in rho(U), rho(K).
inline GRep make_g_rep(HnnSystem const& sys, FiniteGroup const& G, GroupElement x,
                       std::vector<GroupElement> base) {
  G.check(x);
  for (auto const& b : base) {
    G.check(b);
  }
  if (!is_hnn_representation(sys, G, x, base)) {
    throw InputError("assignment does not satisfy the relations of " + sys.name);
  }
  std::vector<GroupElement> u_images;
  for (auto const& w : sys.u_words) {
    u_images.push_back(evaluate(w, base, G));
  }
  auto rho_u = subgroup_closure(u_images, G);
  std::vector<GroupElement> k_gens;
  auto const r = element_order(x, G);
  auto xj = G.identity();
  for (std::uint64_t j = 0; j < r; ++j) {
    for (auto const& b : base) {
      k_gens.push_back(conjugate(b, xj, G));
    }
    xj = G.multiply(xj, x);
  }
  auto rho_k = subgroup_closure(k_gens, G);
  bool const separated = rho_u.size() < rho_k.size();
  return GRep{std::move(x), std::move(base), std::move(rho_u), std::move(rho_k), separated};
}

// Every representation of the system into G, ordered by (x image, base
// assignment) lexicographically.  `limit` caps the |G|^(rank+1) candidates.
inline std::vector<GRep> find_g_reps(HnnSystem const& sys, FiniteGroup const& G,
                                     std::uint64_t limit = 10'000'000) {
  sys.validate();
  auto const order = G.order();
  auto const candidates = assignment_count(order, sys.base_rank + 1);
  if (candidates > limit) {
    throw CapExceeded("enumerating representations of " + sys.name + " into " + G.name(),
                      candidates, limit);
  }
  // Edges of the shift graph are exactly the homomorphisms B -> G; pair each
  // with the x images that conjugate its source tuple onto its target tuple.
  auto const graph = build_graph(sys, G, limit);
  auto const elements = G.elements(limit);
  std::vector<GRep> reps;
  for (auto const& x : elements) {
    for (auto const& e : graph.edges()) {
      auto const& s = graph.vertex(e.source).tuple;
      auto const& t = graph.vertex(e.target).tuple;
      bool ok = true;
      for (std::size_t i = 0; ok && i < s.size(); ++i) {
        ok = conjugate(s[i], x, G) == t[i];
      }
      if (ok) {
        reps.push_back(make_g_rep(sys, G, x, graph.label(e)));
      }
    }
  }
  return reps;
}

// A closed path of length `period` in the shift graph over S_N.
struct PeriodicPoint {
  std::size_t degree = 0;      // N = [rho(K) : rho(U)]
  std::uint64_t period = 0;    // r = ord(rho(x))
  FiniteGroup group = FiniteGroup::symmetric(1);
  std::vector<std::vector<GroupElement>> labels;  // edge j: B-generator images in S_N
  std::vector<Tuple> vertices;                    // period + 1 tuples, first == last
  std::uint32_t base_symbol = 0;                  // the coset rho(U) itself
};

// Edge j sends each generator b to the permutation of cosets
// rho(U)k -> rho(U) k x^-j rho(b) x^j.
inline PeriodicPoint coset_rep_construct(GRep const& rep, HnnSystem const& sys,
                                         FiniteGroup const& G) {
  if (!rep.separated) {
    throw NoSeparation("rho(U) is not a proper subgroup of rho(K) for this representation of "
                       + sys.name);
  }
  RightCosets const cosets(rep.rho_u, rep.rho_k);
  PeriodicPoint pt;
  pt.degree = cosets.size();
  pt.period = element_order(rep.x_image, G);
  pt.group = FiniteGroup::symmetric(pt.degree);
  pt.base_symbol = cosets.coset_of(G.identity());
  auto xj = G.identity();
  for (std::uint64_t j = 0; j < pt.period; ++j) {
    std::vector<GroupElement> label;
    for (auto const& b : rep.base_images) {
      auto const g = conjugate(b, xj, G);
      std::vector<std::uint32_t> img(pt.degree);
      for (std::uint32_t i = 0; i < pt.degree; ++i) {
        img[i] = cosets.act(i, g);
      }
      label.emplace_back(std::move(img));
    }
    auto ep = edge_endpoints(sys, pt.group, label);
    if (!ep) {
      throw std::logic_error("coset action violates a relator of the base group");
    }
    if (j == 0) {
      pt.vertices.push_back(ep->source);
    } else if (pt.vertices.back() != ep->source) {
      throw std::logic_error("coset path is not connected at step " + std::to_string(j));
    }
    pt.vertices.push_back(std::move(ep->target));
    pt.labels.push_back(std::move(label));
    xj = G.multiply(xj, rep.x_image);
  }
  if (pt.vertices.back() != pt.vertices.front()) {
    throw std::logic_error("coset path does not close after ord(x) steps");
  }
  for (auto const& u : pt.vertices.front()) {
    if (u[pt.base_symbol] != pt.base_symbol) {
      throw std::logic_error("U-generator image moves the coset of rho(U)");
    }
  }
  return pt;
}

// Smallest p dividing the path length such that the label sequence is
// p-periodic.
inline std::uint64_t minimal_period(PeriodicPoint const& pt) {
  auto const n = pt.labels.size();
  for (std::uint64_t p = 1; p <= n; ++p) {
    if (n % p != 0) {
      continue;
    }
    bool ok = true;
    for (std::size_t j = 0; ok && j < n; ++j) {
      ok = pt.labels[j] == pt.labels[(j + p) % n];
    }
    if (ok) {
      return p;
    }
  }
  return n;
}

struct ProbeStep {
  std::size_t degree = 0;  // N of S_N
  bool skipped = false;    // edge cap exceeded
  std::string skip_reason;
  std::size_t vertices = 0;  // after pruning
  std::size_t edges = 0;
  double entropy = 0;
  ShiftVerdict verdict = ShiftVerdict::finite_shift;
};

struct ProbeVerdict {
  std::string knot;
  std::vector<ProbeStep> steps;
  std::optional<std::size_t> witness;  // index into steps; certified nonfibered when set
  std::size_t max_degree = 0;
  std::vector<BigInt> witness_fix_counts;

  bool certified_nonfibered() const noexcept { return witness.has_value(); }
};

inline constexpr std::uint64_t default_probe_edge_cap = 1'000'000;

// Scans S_N for N = 2..max_degree and stops at the first shift of positive
// entropy.  Finding none says nothing about fiberedness.
inline ProbeVerdict probe_knot(HnnSystem const& sys, std::size_t max_degree,
                               std::uint32_t R = default_max_period,
                               std::uint64_t edge_cap = default_probe_edge_cap,
                               double tol = default_entropy_tol) {
  if (max_degree < 2 || max_degree > 6) {
    throw InputError("probe: N_max must be between 2 and 6");
  }
  ProbeVerdict out;
  out.knot = sys.name;
  out.max_degree = max_degree;
  for (std::size_t N = 2; N <= max_degree; ++N) {
    ProbeStep step;
    step.degree = N;
    try {
      auto const G = FiniteGroup::symmetric(N);
      auto const graph = prune(build_graph(sys, G, edge_cap));
      auto const sccs = scc_decomposition(graph);
      step.vertices = graph.num_vertices();
      step.edges = graph.num_edges();
      step.entropy = entropy(graph, sccs, tol);
      step.verdict = countability_verdict(graph, sccs);
      out.steps.push_back(step);
      if (step.verdict == ShiftVerdict::uncountable_shift) {
        out.witness = out.steps.size() - 1;
        out.witness_fix_counts = fix_counts(graph, sccs, R);
        break;
      }
    } catch (CapExceeded const& e) {
      step.skipped = true;
      step.skip_reason = e.what();
      out.steps.push_back(step);
    }
  }
  return out;
}

inline void write_probe(ProbeVerdict const& v, std::ostream& out) {
  for (auto const& s : v.steps) {
    out << "S" << s.degree << ": ";
    if (s.skipped) {
      out << "skipped (" << s.skip_reason << ")\n";
      continue;
    }
    out << "vertices " << s.vertices << ", edges " << s.edges << ", entropy "
        << format_real(s.entropy) << ", " << to_string(s.verdict) << "\n";
  }
  if (v.witness) {
    auto const& s = v.steps[*v.witness];
    out << "NONFIBERED certified by S" << s.degree << ", entropy h = " << format_real(s.entropy)
        << " > 0\n";
  } else {
    out << "no witness for N <= " << v.max_degree
        << "; consistent with fibered (not a certificate)\n";
  }
}

}  // namespace repshift
