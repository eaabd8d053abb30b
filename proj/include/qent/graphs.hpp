#pragma once

// Feynman-graph engine: permutation -> directed multigraph, isomorphism
// census with degeneracies, cactus classification, closed-form cactus
// contributions, pinching, and the degeneracy bound.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "qent/core.hpp"
#include "qent/entanglement.hpp"

namespace qent {

// Permutation of the 2m slot labels {1,...,m,1',...,m'}. Internally label
// j (1-based) maps to index j-1 and j' to m+j-1.
struct SlotPermutation {
  int m = 1;
  std::vector<int> map;  // size 2m, bijective on {0,...,2m-1}

  SlotPermutation() : map{0, 1} {}
  SlotPermutation(int m_, std::vector<int> map_) : m(m_), map(std::move(map_)) {
    if (static_cast<int>(map.size()) != 2 * m)
      throw std::invalid_argument("SlotPermutation: map size must be 2m");
    std::vector<bool> seen(2 * m, false);
    for (int v : map) {
      if (v < 0 || v >= 2 * m || seen[v])
        throw std::invalid_argument("SlotPermutation: not a bijection");
      seen[v] = true;
    }
  }

  static SlotPermutation identity(int m) {
    std::vector<int> id(2 * m);
    std::iota(id.begin(), id.end(), 0);
    return SlotPermutation(m, std::move(id));
  }

  int unprimed(int j) const { return map[j]; }        // p(j), j in 0..m-1
  int primed(int j) const { return map[m + j]; }      // p(j')
  int owner(int slot) const { return slot % m; }      // vertex owning a slot
};

// Directed multigraph on m vertices, two in- and two out-edges per vertex.
struct FeynmanGraph {
  int m = 0;
  std::vector<std::pair<int, int>> edges;  // (from, to), self-loops allowed

  std::vector<std::vector<int>> adjacency() const {
    std::vector<std::vector<int>> adj(m, std::vector<int>(m, 0));
    for (auto [u, v] : edges) ++adj[u][v];
    return adj;
  }

  // Weakly connected components as vertex lists.
  std::vector<std::vector<int>> components() const {
    std::vector<int> comp(m, -1);
    int nc = 0;
    for (int s = 0; s < m; ++s) {
      if (comp[s] >= 0) continue;
      comp[s] = nc;
      std::vector<int> stack{s};
      while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (auto [a, b] : edges) {
          int other = -1;
          if (a == u) other = b;
          else if (b == u) other = a;
          if (other >= 0 && comp[other] < 0) {
            comp[other] = nc;
            stack.push_back(other);
          }
        }
      }
      ++nc;
    }
    std::vector<std::vector<int>> out(nc);
    for (int v = 0; v < m; ++v) out[comp[v]].push_back(v);
    return out;
  }
};

// One edge per in-slot: the vertex owning p(slot) points at the slot's owner.
inline FeynmanGraph graph_of_permutation(const SlotPermutation& p) {
  FeynmanGraph g;
  g.m = p.m;
  for (int j = 0; j < p.m; ++j) {
    g.edges.emplace_back(p.owner(p.unprimed(j)), j);
    g.edges.emplace_back(p.owner(p.primed(j)), j);
  }
  return g;
}

// Minimum adjacency encoding over all vertex orderings. Two graphs get the
// same label iff they are isomorphic as directed multigraphs.
inline std::vector<int> canonical_form(const FeynmanGraph& g) {
  auto adj = g.adjacency();
  std::vector<int> perm(g.m);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best;
  do {
    std::vector<int> enc;
    enc.reserve(g.m * g.m);
    for (int i = 0; i < g.m; ++i)
      for (int j = 0; j < g.m; ++j) enc.push_back(adj[perm[i]][perm[j]]);
    if (best.empty() || enc < best) best = std::move(enc);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

namespace detail {

// True when the component (given as vertex list) stays weakly connected
// after dropping the two edge indices in `skip`.
inline bool connected_without(const FeynmanGraph& g, const std::vector<int>& comp,
                              int skip1, int skip2) {
  if (comp.size() <= 1) return true;
  std::vector<int> mark(g.m, 0);
  for (int v : comp) mark[v] = 1;
  std::vector<int> stack{comp[0]};
  std::vector<bool> seen(g.m, false);
  seen[comp[0]] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      if (static_cast<int>(e) == skip1 || static_cast<int>(e) == skip2) continue;
      auto [a, b] = g.edges[e];
      int other = -1;
      if (a == u) other = b;
      else if (b == u) other = a;
      if (other >= 0 && mark[other] && !seen[other]) {
        seen[other] = true;
        ++reached;
        stack.push_back(other);
      }
    }
  }
  return reached == comp.size();
}

inline bool component_is_cactus(const FeynmanGraph& g, const std::vector<int>& comp) {
  if (comp.size() == 1) return true;  // v = 1 is a cactus by definition
  for (int v : comp) {
    std::vector<int> incident;
    for (std::size_t e = 0; e < g.edges.size(); ++e)
      if (g.edges[e].first == v || g.edges[e].second == v)
        incident.push_back(static_cast<int>(e));
    bool found = false;
    for (std::size_t i = 0; i < incident.size() && !found; ++i)
      for (std::size_t j = i + 1; j < incident.size() && !found; ++j)
        if (!connected_without(g, comp, incident[i], incident[j])) found = true;
    if (!found) return false;
  }
  return true;
}

}  // namespace detail

// All connected components must individually be cacti.
inline bool is_cactus(const FeynmanGraph& g) {
  for (const auto& comp : g.components())
    if (!detail::component_is_cactus(g, comp)) return false;
  return true;
}

// Closed-form bracket of an all-cactus graph: product over components of
// N ((N_A + N_Abar)/2)^v.
inline double cactus_value(const FeynmanGraph& g, double N, double NA, double NAbar) {
  if (!is_cactus(g)) throw std::invalid_argument("cactus_value: graph is not a cactus");
  const double per_vertex = 0.5 * (NA + NAbar);
  double value = 1.0;
  for (const auto& comp : g.components()) {
    double c = N;
    for (std::size_t i = 0; i < comp.size(); ++i) c *= per_vertex;
    value *= c;
  }
  return value;
}

struct GraphClass {
  std::vector<int> canonical;
  std::int64_t degeneracy = 0;
  bool cactus = false;
  SlotPermutation representative;
};

struct GraphCensus {
  int m = 0;
  std::vector<GraphClass> classes;
  std::int64_t cactus_classes = 0;     // classes whose every component is a cactus
  std::int64_t noncactus_classes = 0;

  std::int64_t total_degeneracy() const {
    std::int64_t t = 0;
    for (const auto& c : classes) t += c.degeneracy;
    return t;
  }
};

// Exhaustive classification of S_2m by canonical form; ground truth for the
// degeneracies D(G).
inline GraphCensus census(int m, int limit = 4) {
  if (m < 1 || m > limit) throw std::runtime_error("census: enumeration guard exceeded");
  GraphCensus out;
  out.m = m;
  std::map<std::vector<int>, GraphClass> classes;
  std::vector<int> perm(2 * m);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    SlotPermutation p(m, perm);
    FeynmanGraph g = graph_of_permutation(p);
    auto key = canonical_form(g);
    auto it = classes.find(key);
    if (it == classes.end()) {
      GraphClass c;
      c.canonical = key;
      c.degeneracy = 1;
      c.cactus = is_cactus(g);
      c.representative = p;
      classes.emplace(std::move(key), std::move(c));
    } else {
      ++it->second.degeneracy;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (auto& [key, c] : classes) {
    if (c.cactus) ++out.cactus_classes;
    else ++out.noncactus_classes;
    out.classes.push_back(std::move(c));
  }
  // largest degeneracy first, for stable human-facing output
  std::sort(out.classes.begin(), out.classes.end(),
            [](const GraphClass& a, const GraphClass& b) {
              if (a.degeneracy != b.degeneracy) return a.degeneracy > b.degeneracy;
              return a.canonical < b.canonical;
            });
  return out;
}

// Degeneracy bound D(G) <= 2^(2v) v! for every class of the census.
inline bool degeneracy_bound_check(const GraphCensus& c) {
  std::int64_t bound = pow_ll(4, c.m);
  for (int i = 2; i <= c.m; ++i) bound *= i;
  for (const auto& cls : c.classes)
    if (cls.degeneracy > bound) return false;
  return true;
}

// Brute-force check of the loop bound: the isolated two-vertex loop
// contribution never exceeds (N_A + N_Abar)/2. The graph argument must
// contain a loop pattern (a pair of vertices with edges both ways).
inline bool loop_bound_check(const FeynmanGraph& g, int n, int d) {
  auto adj = g.adjacency();
  bool has_loop = false;
  for (int u = 0; u < g.m && !has_loop; ++u)
    for (int v = u + 1; v < g.m && !has_loop; ++v)
      if (adj[u][v] >= 1 && adj[v][u] >= 1) has_loop = true;
  if (!has_loop) throw std::invalid_argument("loop_bound_check: no two-vertex loop in graph");

  const std::int64_t N = pow_ll(d, n);
  const int n_a = n / 2;
  const double bound = 0.5 * (pow_ll(d, n_a) + pow_ll(d, n - n_a)) + 1e-9;
  std::vector<QuditString> strings;
  strings.reserve(N);
  for (std::int64_t i = 0; i < N; ++i) strings.push_back(string_of(i, n, d));
  // externals: k_i, k_j, k_p(i); conservation fixes k_p(j)
  for (std::int64_t iki = 0; iki < N; ++iki) {
    for (std::int64_t ikj = 0; ikj < N; ++ikj) {
      for (std::int64_t ipi = 0; ipi < N; ++ipi) {
        const QuditString kpj =
            sub_mod(add_mod(strings[iki], strings[ikj]), strings[ipi]);
        double sum = 0.0;
        for (std::int64_t iip = 0; iip < N; ++iip) {
          for (std::int64_t ijp = 0; ijp < N; ++ijp) {
            const double d1 = coupling_delta(strings[iki], strings[iip],
                                             strings[ipi], strings[ijp], n_a);
            if (d1 == 0.0) continue;
            const double d2 = coupling_delta(strings[ikj], strings[ijp], kpj,
                                             strings[iip], n_a);
            sum += d1 * d2;
          }
        }
        if (sum > bound) return false;
      }
    }
  }
  return true;
}

// Pinching: split two distinct edges at a fresh vertex. Edge (a,b) becomes
// (a,w)+(w,b) and edge (c,e) becomes (c,w)+(w,e), so every degree is kept.
inline FeynmanGraph pinch(const FeynmanGraph& g, int edge1, int edge2) {
  const int ne = static_cast<int>(g.edges.size());
  if (edge1 == edge2 || edge1 < 0 || edge2 < 0 || edge1 >= ne || edge2 >= ne)
    throw std::invalid_argument("pinch: need two distinct edge indices");
  FeynmanGraph out;
  out.m = g.m + 1;
  const int w = g.m;
  for (int e = 0; e < ne; ++e) {
    if (e == edge1 || e == edge2) continue;
    out.edges.push_back(g.edges[e]);
  }
  auto [a, b] = g.edges[edge1];
  auto [c, ee] = g.edges[edge2];
  out.edges.emplace_back(a, w);
  out.edges.emplace_back(w, b);
  out.edges.emplace_back(c, w);
  out.edges.emplace_back(w, ee);
  return out;
}

// Leaf germination: a single edge (a,b) becomes (a,w)+(w,b) plus a self-loop
// at the new vertex.
inline FeynmanGraph pinch_leaf(const FeynmanGraph& g, int edge) {
  const int ne = static_cast<int>(g.edges.size());
  if (edge < 0 || edge >= ne) throw std::invalid_argument("pinch_leaf: bad edge index");
  FeynmanGraph out;
  out.m = g.m + 1;
  const int w = g.m;
  for (int e = 0; e < ne; ++e) {
    if (e == edge) continue;
    out.edges.push_back(g.edges[e]);
  }
  auto [a, b] = g.edges[edge];
  out.edges.emplace_back(a, w);
  out.edges.emplace_back(w, b);
  out.edges.emplace_back(w, w);
  return out;
}

}  // namespace qent
