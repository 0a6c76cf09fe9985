#include "degen/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace degen {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  Graph g;
  g.adjacency_.assign(n, VertexSet(n));
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw std::invalid_argument("edge endpoint out of range: (" + std::to_string(u) + ", " +
                                  std::to_string(v) + ") with n = " + std::to_string(n));
    }
    if (u == v) {
      throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    }
    if (!g.adjacency_[u].contains(v)) {
      g.adjacency_[u].insert(v);
      g.adjacency_[v].insert(u);
      ++g.m_;
    }
  }
  return g;
}

Graph Graph::edgeless(std::size_t n) { return from_edges(n, {}); }

Graph Graph::complete(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      edges.emplace_back(u, v);
    }
  }
  return from_edges(n, edges);
}

Graph Graph::cycle(std::size_t n) {
  if (n < 3) {
    throw std::invalid_argument("a simple cycle needs at least 3 vertices");
  }
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    edges.emplace_back(u, static_cast<Vertex>((u + 1) % n));
  }
  return from_edges(n, edges);
}

Graph Graph::path(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u + 1 < n; ++u) {
    edges.emplace_back(u, u + 1);
  }
  return from_edges(n, edges);
}

std::vector<Edge> Graph::edges() const { return edge_list_within(*this, vertices()); }

std::size_t edges_within(const Graph& g, const VertexSet& s) {
  std::size_t twice = 0;
  for (Vertex v : s) {
    twice += g.neighbors(v).intersection_size(s);
  }
  return twice / 2;
}

std::vector<Edge> edge_list_within(const Graph& g, const VertexSet& s) {
  std::vector<Edge> out;
  for (Vertex u : s) {
    for (Vertex v : g.neighbors(u) & s) {
      if (u < v) {
        out.emplace_back(u, v);
      }
    }
  }
  return out;
}

Edge nth_edge_within(const Graph& g, const VertexSet& s, std::size_t index) {
  for (Vertex u : s) {
    for (Vertex v : g.neighbors(u) & s) {
      if (u < v) {
        if (index == 0) {
          return {u, v};
        }
        --index;
      }
    }
  }
  throw std::out_of_range("edge index past the end of G[S]");
}

namespace {

/// Residual degrees of every member of S inside G[S]; other entries unused.
std::vector<std::size_t> residual_degrees(const Graph& g, const VertexSet& s) {
  std::vector<std::size_t> deg(g.n(), 0);
  for (Vertex v : s) {
    deg[v] = g.neighbors(v).intersection_size(s);
  }
  return deg;
}

}  // namespace

bool is_degenerate(const Graph& g, const VertexSet& s, std::size_t d) {
  VertexSet alive = s;
  auto deg = residual_degrees(g, s);
  std::size_t left = alive.size();
  while (left > 0) {
    bool peeled = false;
    for (Vertex v : alive) {
      if (deg[v] <= d) {
        alive.erase(v);
        --left;
        for (Vertex u : g.neighbors(v) & alive) {
          --deg[u];
        }
        peeled = true;
        break;
      }
    }
    if (!peeled) {
      return false;
    }
  }
  return true;
}

bool is_maximal_degenerate(const Graph& g, const VertexSet& x, std::size_t d) {
  if (!is_degenerate(g, x, d)) {
    return false;
  }
  VertexSet extended = x;
  for (Vertex v : x.complement()) {
    extended.insert(v);
    const bool grows = is_degenerate(g, extended, d);
    extended.erase(v);
    if (grows) {
      return false;
    }
  }
  return true;
}

std::size_t degeneracy(const Graph& g, const VertexSet& s) {
  if (s.empty()) {
    throw std::invalid_argument("degeneracy of an empty vertex set is undefined");
  }
  VertexSet alive = s;
  auto deg = residual_degrees(g, s);
  std::size_t result = 0;
  while (!alive.empty()) {
    Vertex pick = alive.front();
    for (Vertex v : alive) {
      if (deg[v] < deg[pick]) {
        pick = v;
      }
    }
    result = std::max(result, deg[pick]);
    alive.erase(pick);
    for (Vertex u : g.neighbors(pick) & alive) {
      --deg[u];
    }
  }
  return result;
}

}  // namespace degen
