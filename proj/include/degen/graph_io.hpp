#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "degen/graph.hpp"

namespace degen {

enum class GraphFormat { kEdgeList, kDimacs };

GraphFormat parse_format(std::string_view name);
std::string_view format_name(GraphFormat format);

class ParseError : public std::invalid_argument {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::invalid_argument("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct ParsedGraph {
  Graph graph;
  std::vector<std::string> warnings;
};

/// Edge list: "u v" lines with 0-based endpoints, optional "n <count>" header,
/// '#' comments. DIMACS: "c" comments, "p edge n m", then "e u v" with 1-based
/// endpoints. Duplicate edges collapse with a warning.
ParsedGraph parse_graph(std::string_view text, GraphFormat format);

/// Inverse of parse_graph; the edge-list form always carries the header.
std::string serialize_graph(const Graph& g, GraphFormat format);

/// G(n, p): each pair independently with probability p.
Graph generate_gnp(std::size_t n, double p, std::uint64_t seed);
/// G(n, m): a uniformly random m-subset of the pairs.
Graph generate_gnm(std::size_t n, std::size_t m, std::uint64_t seed);

}  // namespace degen
