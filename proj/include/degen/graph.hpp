#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "degen/vertex_set.hpp"

namespace degen {

using Edge = std::pair<Vertex, Vertex>;

/// Immutable simple undirected graph on vertices 0..n-1.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an edge list. Duplicate edges (in either
  /// orientation) collapse; self-loops and out-of-range endpoints throw
  /// std::invalid_argument.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);
  static Graph edgeless(std::size_t n);
  static Graph complete(std::size_t n);
  static Graph cycle(std::size_t n);
  static Graph path(std::size_t n);

  std::size_t n() const { return adjacency_.size(); }
  std::size_t m() const { return m_; }
  const VertexSet& neighbors(Vertex v) const { return adjacency_[v]; }
  std::size_t degree(Vertex v) const { return adjacency_[v].size(); }
  bool adjacent(Vertex u, Vertex v) const { return adjacency_[u].contains(v); }

  VertexSet vertices() const { return VertexSet::full(n()); }
  VertexSet empty_set() const { return VertexSet(n()); }
  /// Edges with u < v, ordered by (u, v).
  std::vector<Edge> edges() const;

  bool operator==(const Graph& other) const = default;

 private:
  std::vector<VertexSet> adjacency_;
  std::size_t m_ = 0;
};

/// Number of edges of G[S].
std::size_t edges_within(const Graph& g, const VertexSet& s);

/// Edges of G[S] as (u, v) with u < v, in ascending (u, v) order.
std::vector<Edge> edge_list_within(const Graph& g, const VertexSet& s);

/// The `index`-th edge of G[S] in the order of edge_list_within.
Edge nth_edge_within(const Graph& g, const VertexSet& s, std::size_t index);

/// True iff G[S] is d-degenerate. Peels the lowest-numbered vertex of
/// residual degree <= d until none remains; the empty set is accepted.
bool is_degenerate(const Graph& g, const VertexSet& s, std::size_t d);

/// True iff G[X] is d-degenerate and no single vertex outside X can be added
/// while keeping it d-degenerate.
bool is_maximal_degenerate(const Graph& g, const VertexSet& x, std::size_t d);

/// Smallest d for which G[S] is d-degenerate. Throws std::invalid_argument on
/// an empty set.
std::size_t degeneracy(const Graph& g, const VertexSet& s);

}  // namespace degen
