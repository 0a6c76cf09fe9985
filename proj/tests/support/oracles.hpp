#pragma once

// Test-only oracles. They work on raw adjacency matrices and bit masks so they
// share no code with the library under test.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "degen/graph.hpp"

namespace degen::testing {

struct Matrix {
  int n = 0;
  std::vector<std::uint64_t> rows;  // rows[u] bit v set iff uv is an edge

  explicit Matrix(const Graph& g) : n(static_cast<int>(g.n())), rows(g.n(), 0) {
    for (const auto& [u, v] : g.edges()) {
      rows[u] |= std::uint64_t{1} << v;
      rows[v] |= std::uint64_t{1} << u;
    }
  }

  int degree_in(int v, std::uint64_t mask) const { return std::popcount(rows[v] & mask); }

  int edges_in(std::uint64_t mask) const {
    int twice = 0;
    for (int v = 0; v < n; ++v) {
      if ((mask >> v) & 1U) twice += degree_in(v, mask);
    }
    return twice / 2;
  }
};

/// Definition straight from the glossary: every nonempty subset T of S holds
/// a vertex with at most d neighbours in T.
inline bool definitional_degenerate(const Matrix& g, std::uint64_t s, int d) {
  for (std::uint64_t t = s; t != 0; t = (t - 1) & s) {
    bool found = false;
    for (int v = 0; v < g.n && !found; ++v) {
      found = ((t >> v) & 1U) && g.degree_in(v, t) <= d;
    }
    if (!found) return false;
  }
  return true;
}

/// Graph on n vertices whose edge set is selected by the bits of `code` over
/// the pairs (0,1), (0,2), ..., (n-2,n-1).
inline Graph graph_from_code(std::size_t n, std::uint64_t code) {
  std::vector<Edge> edges;
  int bit = 0;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v, ++bit) {
      if ((code >> bit) & 1U) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(n, edges);
}

inline std::uint64_t pair_count(std::size_t n) { return n * (n == 0 ? 0 : n - 1) / 2; }

/// Every labelled graph on exactly n vertices (n <= 6).
inline std::vector<Graph> all_labelled_graphs(std::size_t n) {
  std::vector<Graph> out;
  const std::uint64_t total = std::uint64_t{1} << pair_count(n);
  out.reserve(total);
  for (std::uint64_t code = 0; code < total; ++code) out.push_back(graph_from_code(n, code));
  return out;
}

/// Smallest edge code over all relabellings (n <= 7).
inline std::uint64_t canonical_code(const Graph& g) {
  const std::size_t n = g.n();
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = ~std::uint64_t{0};
  do {
    std::uint64_t code = 0;
    int bit = 0;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v, ++bit) {
        if (g.adjacent(perm[u], perm[v])) code |= std::uint64_t{1} << bit;
      }
    }
    best = std::min(best, code);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// One representative per isomorphism class on exactly n vertices (n <= 5).
inline std::vector<Graph> isomorphism_classes(std::size_t n) {
  std::vector<std::uint64_t> seen;
  std::vector<Graph> out;
  for (const Graph& g : all_labelled_graphs(n)) {
    const std::uint64_t code = canonical_code(g);
    if (std::find(seen.begin(), seen.end(), code) == seen.end()) {
      seen.push_back(code);
      out.push_back(g);
    }
  }
  return out;
}

/// Random graph drawn with the standard library, independent of the
/// library's own generators.
inline Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(n, edges);
}

/// Maximal d-degenerate sets by brute force over masks, from the definition.
inline std::vector<std::uint64_t> maximal_masks(const Matrix& g, int d) {
  const std::uint64_t total = std::uint64_t{1} << g.n;
  std::vector<char> ok(total);
  for (std::uint64_t s = 0; s < total; ++s) ok[s] = definitional_degenerate(g, s, d);
  std::vector<std::uint64_t> out;
  for (std::uint64_t s = 0; s < total; ++s) {
    if (!ok[s]) continue;
    bool maximal = true;
    for (int v = 0; v < g.n && maximal; ++v) {
      if (!((s >> v) & 1U) && ok[s | (std::uint64_t{1} << v)]) maximal = false;
    }
    if (maximal) out.push_back(s);
  }
  return out;
}

}  // namespace degen::testing
