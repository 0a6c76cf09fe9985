#include "degen/graph_io.hpp"

#include <charconv>
#include <optional>
#include <set>
#include <sstream>

#include "degen/rng.hpp"

namespace degen {

GraphFormat parse_format(std::string_view name) {
  if (name == "edgelist" || name == "edge-list") {
    return GraphFormat::kEdgeList;
  }
  if (name == "dimacs") {
    return GraphFormat::kDimacs;
  }
  throw std::invalid_argument("unknown graph format '" + std::string(name) + "'");
}

std::string_view format_name(GraphFormat format) {
  return format == GraphFormat::kDimacs ? "dimacs" : "edgelist";
}

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
      ++i;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
      ++i;
    }
    if (i > start) {
      out.push_back(line.substr(start, i - start));
    }
  }
  return out;
}

std::uint64_t parse_count(std::string_view token, std::size_t line, const char* what) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(line, std::string("expected a non-negative integer ") + what + ", got '" +
                               std::string(token) + "'");
  }
  return value;
}

/// Collects edges, collapsing duplicates with a warning.
class EdgeCollector {
 public:
  void add(std::uint64_t u, std::uint64_t v, std::size_t line, std::vector<std::string>& warnings) {
    if (u == v) {
      throw ParseError(line, "self-loop at vertex " + std::to_string(u));
    }
    const auto key = u < v ? std::make_pair(u, v) : std::make_pair(v, u);
    if (!seen_.insert(key).second) {
      warnings.push_back("line " + std::to_string(line) + ": duplicate edge " +
                         std::to_string(key.first) + " " + std::to_string(key.second) +
                         " collapsed");
      return;
    }
    edges_.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  const std::vector<Edge>& edges() const { return edges_; }

 private:
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen_;
  std::vector<Edge> edges_;
};

template <typename OnLine>
void for_each_line(std::string_view text, OnLine&& on_line) {
  std::size_t number = 0;
  while (!text.empty()) {
    const std::size_t cut = text.find('\n');
    const std::string_view line = text.substr(0, cut);
    ++number;
    on_line(line, number);
    if (cut == std::string_view::npos) {
      break;
    }
    text.remove_prefix(cut + 1);
  }
}

constexpr std::uint64_t kMaxVertices = std::uint64_t{1} << 31;

ParsedGraph parse_edge_list(std::string_view text) {
  ParsedGraph out;
  EdgeCollector edges;
  std::optional<std::uint64_t> declared;
  std::uint64_t max_endpoint = 0;
  bool any_edge = false;
  std::vector<std::pair<std::uint64_t, std::size_t>> endpoints_seen;
  for_each_line(text, [&](std::string_view line, std::size_t number) {
    line = line.substr(0, line.find('#'));
    const auto tokens = split_tokens(line);
    if (tokens.empty()) {
      return;
    }
    if (tokens[0] == "n") {
      if (tokens.size() != 2 || declared) {
        throw ParseError(number, "malformed or repeated header; expected 'n <count>'");
      }
      declared = parse_count(tokens[1], number, "vertex count");
      if (*declared > kMaxVertices) {
        throw ParseError(number, "vertex count too large");
      }
      return;
    }
    if (tokens.size() != 2) {
      throw ParseError(number, "expected 'u v', got '" + std::string(line) + "'");
    }
    const auto u = parse_count(tokens[0], number, "endpoint");
    const auto v = parse_count(tokens[1], number, "endpoint");
    if (u >= kMaxVertices || v >= kMaxVertices) {
      throw ParseError(number, "endpoint too large");
    }
    edges.add(u, v, number, out.warnings);
    endpoints_seen.emplace_back(std::max(u, v), number);
    max_endpoint = std::max({max_endpoint, u, v});
    any_edge = true;
  });
  const std::uint64_t n = declared ? *declared : (any_edge ? max_endpoint + 1 : 0);
  for (const auto& [endpoint, number] : endpoints_seen) {
    if (endpoint >= n) {
      throw ParseError(number, "endpoint " + std::to_string(endpoint) +
                                   " out of range for n = " + std::to_string(n));
    }
  }
  out.graph = Graph::from_edges(static_cast<std::size_t>(n), edges.edges());
  return out;
}

ParsedGraph parse_dimacs(std::string_view text) {
  ParsedGraph out;
  EdgeCollector edges;
  std::optional<std::uint64_t> n;
  std::uint64_t declared_edges = 0;
  std::uint64_t edge_lines = 0;
  for_each_line(text, [&](std::string_view line, std::size_t number) {
    const auto tokens = split_tokens(line);
    if (tokens.empty() || tokens[0] == "c") {
      return;
    }
    if (tokens[0] == "p") {
      if (n || tokens.size() != 4 || tokens[1] != "edge") {
        throw ParseError(number, "expected a single 'p edge <n> <m>' line");
      }
      n = parse_count(tokens[2], number, "vertex count");
      if (*n > kMaxVertices) {
        throw ParseError(number, "vertex count too large");
      }
      declared_edges = parse_count(tokens[3], number, "edge count");
      return;
    }
    if (tokens[0] == "e") {
      if (!n) {
        throw ParseError(number, "edge line before the 'p edge' line");
      }
      if (tokens.size() != 3) {
        throw ParseError(number, "expected 'e <u> <v>'");
      }
      const auto u = parse_count(tokens[1], number, "endpoint");
      const auto v = parse_count(tokens[2], number, "endpoint");
      if (u == 0 || v == 0 || u > *n || v > *n) {
        throw ParseError(number, "endpoint out of range 1.." + std::to_string(*n));
      }
      edges.add(u - 1, v - 1, number, out.warnings);
      ++edge_lines;
      return;
    }
    throw ParseError(number, "unrecognized line '" + std::string(line) + "'");
  });
  if (!n) {
    throw ParseError(0, "missing 'p edge <n> <m>' line");
  }
  if (edge_lines != declared_edges) {
    out.warnings.push_back("declared " + std::to_string(declared_edges) + " edges but found " +
                           std::to_string(edge_lines));
  }
  out.graph = Graph::from_edges(static_cast<std::size_t>(*n), edges.edges());
  return out;
}

}  // namespace

ParsedGraph parse_graph(std::string_view text, GraphFormat format) {
  return format == GraphFormat::kDimacs ? parse_dimacs(text) : parse_edge_list(text);
}

std::string serialize_graph(const Graph& g, GraphFormat format) {
  std::ostringstream out;
  if (format == GraphFormat::kDimacs) {
    out << "p edge " << g.n() << ' ' << g.m() << '\n';
    for (const auto& [u, v] : g.edges()) {
      out << "e " << u + 1 << ' ' << v + 1 << '\n';
    }
  } else {
    out << "n " << g.n() << '\n';
    for (const auto& [u, v] : g.edges()) {
      out << u << ' ' << v << '\n';
    }
  }
  return out.str();
}

Graph generate_gnp(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("edge probability must lie in [0, 1]");
  }
  Rng rng(seed);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (rng.uniform_real() < p) {
        edges.emplace_back(u, v);
      }
    }
  }
  return Graph::from_edges(n, edges);
}

Graph generate_gnm(std::size_t n, std::size_t m, std::uint64_t seed) {
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n == 0 ? 0 : n - 1) / 2;
  if (m > pairs) {
    throw std::invalid_argument("G(n, m) needs m <= n(n-1)/2 = " + std::to_string(pairs));
  }
  // Selection sampling: pair i is kept with probability
  // (still needed) / (pairs not yet visited), which yields a uniform m-subset.
  Rng rng(seed);
  std::vector<Edge> edges;
  edges.reserve(m);
  std::uint64_t visited = 0;
  for (Vertex u = 0; u < n && edges.size() < m; ++u) {
    for (Vertex v = u + 1; v < n && edges.size() < m; ++v) {
      const std::uint64_t needed = m - edges.size();
      if (rng.uniform_index(pairs - visited) < needed) {
        edges.emplace_back(u, v);
      }
      ++visited;
    }
  }
  return Graph::from_edges(n, edges);
}

}  // namespace degen
