#include "isoreach/graph.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <utility>

namespace isoreach {

Graph::Graph(std::size_t n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)), out_(n + 1), in_(n + 1) {
  if (n == 0) throw GraphError("graph must have at least one vertex");
  if (n > kMaxVertices) throw GraphError("graph too large (n > 65536)");
  std::set<std::pair<Vertex, Vertex>> seen;
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    if (!has_vertex(e.tail) || !has_vertex(e.head)) {
      throw GraphError("edge " + std::to_string(id + 1) + " (" +
                       std::to_string(e.tail) + "," + std::to_string(e.head) +
                       ") has a vertex outside 1.." + std::to_string(n));
    }
    if (!seen.emplace(e.tail, e.head).second) {
      throw GraphError("duplicate edge " + std::to_string(e.tail) + " " +
                       std::to_string(e.head));
    }
    out_[e.tail].push_back(id);
    in_[e.head].push_back(id);
  }
  for (Vertex v = 1; v <= n_; ++v) {
    std::stable_sort(out_[v].begin(), out_[v].end(), [&](EdgeId a, EdgeId b) {
      return edges_[a].head < edges_[b].head;
    });
    std::stable_sort(in_[v].begin(), in_[v].end(), [&](EdgeId a, EdgeId b) {
      return edges_[a].tail < edges_[b].tail;
    });
  }
}

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::uint64_t parse_count(std::string_view tok, std::size_t line) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw GraphError("line " + std::to_string(line) + ": expected a nonnegative integer, got '" +
                         std::string(tok) + "'",
                     line);
  }
  return value;
}

}  // namespace

Graph parse_edge_list(std::string_view text) {
  const auto lines = split_lines(text);
  std::size_t cursor = 0;
  auto next_content_line = [&]() -> std::pair<std::size_t, std::vector<std::string_view>> {
    while (cursor < lines.size()) {
      auto toks = tokens(lines[cursor]);
      ++cursor;
      if (!toks.empty()) return {cursor, std::move(toks)};
    }
    return {0, {}};
  };

  auto [header_line, header] = next_content_line();
  if (header.size() != 2) throw GraphError("line 1: header must be 'n m'", header_line ? header_line : 1);
  const auto n = parse_count(header[0], header_line);
  const auto m = parse_count(header[1], header_line);
  if (n == 0) throw GraphError("line " + std::to_string(header_line) + ": n must be positive", header_line);

  std::vector<Edge> edges;
  edges.reserve(m);
  std::set<std::pair<Vertex, Vertex>> seen;
  for (std::uint64_t e = 0; e < m; ++e) {
    auto [line, toks] = next_content_line();
    if (line == 0) {
      throw GraphError("expected " + std::to_string(m) + " edge lines, found " + std::to_string(e),
                       lines.size());
    }
    if (toks.size() != 2) {
      throw GraphError("line " + std::to_string(line) + ": edge must be 'tail head'", line);
    }
    const auto tail = parse_count(toks[0], line);
    const auto head = parse_count(toks[1], line);
    if (tail < 1 || tail > n || head < 1 || head > n) {
      throw GraphError("line " + std::to_string(line) + ": vertex out of range 1.." + std::to_string(n),
                       line);
    }
    if (!seen.emplace(tail, head).second) {
      throw GraphError("line " + std::to_string(line) + ": duplicate edge " + std::to_string(tail) +
                           " " + std::to_string(head),
                       line);
    }
    edges.push_back({static_cast<Vertex>(tail), static_cast<Vertex>(head)});
  }
  if (auto [extra, toks] = next_content_line(); extra != 0) {
    throw GraphError("line " + std::to_string(extra) + ": unexpected content after edge list", extra);
  }
  return Graph(n, std::move(edges));
}

std::string serialize(const Graph& g) {
  std::ostringstream out;
  out << g.vertex_count() << ' ' << g.edge_count();
  for (const Edge& e : g.edges()) out << '\n' << e.tail << ' ' << e.head;
  return out.str();
}

std::string to_dot(const Graph& g) {
  std::ostringstream out;
  out << "digraph G {\n";
  for (Vertex v = 1; v <= g.vertex_count(); ++v) out << "  " << v << ";\n";
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    out << "  " << e.tail << " -> " << e.head << " [label=\"e" << id + 1 << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

namespace {

// Rejection sampling on raw mt19937_64 output; unlike
// std::uniform_int_distribution this is identical across standard libraries.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

Graph gen_random(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n == 0) throw GraphError("gen_random: n must be positive");
  const std::size_t capacity = n * (n - 1);
  if (m > capacity) {
    throw GraphError("gen_random: m=" + std::to_string(m) + " exceeds the " +
                     std::to_string(capacity) + " non-loop pairs on " + std::to_string(n) + " vertices");
  }
  std::vector<Edge> pairs;
  pairs.reserve(capacity);
  for (Vertex a = 1; a <= n; ++a)
    for (Vertex b = 1; b <= n; ++b)
      if (a != b) pairs.push_back({a, b});

  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = i + uniform_below(rng, capacity - i);
    std::swap(pairs[i], pairs[j]);
  }
  pairs.resize(m);
  return Graph(n, std::move(pairs));
}

Graph gen_diamond_stack(std::size_t layers) {
  if (layers == 0) throw GraphError("gen_diamond_stack: layers must be at least 1");
  std::vector<Edge> edges;
  edges.reserve(4 * layers);
  for (std::size_t l = 0; l < layers; ++l) {
    const auto base = static_cast<Vertex>(1 + 3 * l);
    edges.push_back({base, base + 1});
    edges.push_back({base, base + 2});
    edges.push_back({base + 1, base + 3});
    edges.push_back({base + 2, base + 3});
  }
  return Graph(1 + 3 * layers, std::move(edges));
}

Graph gen_grid(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw GraphError("gen_grid: rows and cols must be at least 1");
  auto cell = [cols](std::size_t r, std::size_t c) { return static_cast<Vertex>(r * cols + c + 1); };
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.push_back({cell(r, c), cell(r, c + 1)});
      if (r + 1 < rows) edges.push_back({cell(r, c), cell(r + 1, c)});
    }
  }
  return Graph(rows * cols, std::move(edges));
}

}  // namespace isoreach
