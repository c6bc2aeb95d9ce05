#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace isoreach {

/// Vertices are dense 1-based integers.
using Vertex = std::uint32_t;

/// Zero-based position of an edge in the input order. The weight exponent of
/// edge e_{i} is its id, so w0(e) = 2^id.
using EdgeId = std::uint32_t;

struct Edge {
  Vertex tail = 0;
  Vertex head = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

inline constexpr std::size_t kMaxVertices = 65536;

/// Thrown on malformed edge lists and on invalid graph construction.
/// line() is the 1-based input line, or 0 when not tied to parsing.
class GraphError : public std::runtime_error {
 public:
  GraphError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Immutable simple directed graph. Self-loops are allowed, parallel edges
/// are not. Edge order is significant: it fixes the w0 indexing.
class Graph {
 public:
  Graph() = default;
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId id) const { return edges_[id]; }

  /// Edge ids leaving / entering v, sorted by (head, id) / (tail, id).
  const std::vector<EdgeId>& out_edges(Vertex v) const { return out_[v]; }
  const std::vector<EdgeId>& in_edges(Vertex v) const { return in_[v]; }

  bool has_vertex(Vertex v) const { return v >= 1 && v <= n_; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
};

/// Parses the "n m" header followed by m "tail head" lines.
Graph parse_edge_list(std::string_view text);

/// Inverse of parse_edge_list. No trailing newline.
std::string serialize(const Graph& g);

/// Graphviz export with edges labelled by their 1-based index.
std::string to_dot(const Graph& g);

/// m distinct non-loop edges drawn uniformly; a pure function of its inputs.
Graph gen_random(std::size_t n, std::size_t m, std::uint64_t seed);

/// `layers` diamonds in series. Vertex 1 is the source, vertex 3*layers+1 the
/// sink; there are 2^layers source-sink paths, each of length 2*layers.
Graph gen_diamond_stack(std::size_t layers);

/// rows x cols grid, cells numbered row-major from 1, edges right and down.
Graph gen_grid(std::size_t rows, std::size_t cols);

}  // namespace isoreach
