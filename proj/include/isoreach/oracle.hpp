#pragma once

// Brute-force ground truth. Nothing here is space-efficient; these routines
// exist to judge the small-space algorithms in core.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "isoreach/graph.hpp"
#include "isoreach/numeric.hpp"

namespace isoreach {

struct DistEntry {
  LimbWeight dist = LimbWeight::infinity();
  std::optional<std::uint32_t> len;  // minimal length of a min-weight path; nullopt = infinity
  std::uint64_t count = 0;           // min-weight paths of length <= bound, saturated at n+1
};

/// d^i(u, .), l^i(u, .) and min-weight path counts for one source and bound.
class DistTable {
 public:
  DistTable(Vertex source, std::uint32_t bound, std::vector<DistEntry> entries)
      : source_(source), bound_(bound), entries_(std::move(entries)) {}

  Vertex source() const { return source_; }
  std::uint32_t bound() const { return bound_; }
  std::size_t vertex_count() const { return entries_.size() - 1; }
  const DistEntry& operator[](Vertex v) const { return entries_[v]; }

  /// c_k and D_k: vertices with d <= k and the sum of their distances.
  std::uint64_t count_within(const LimbWeight& k) const;
  CensusSum sum_within(const LimbWeight& k) const;

 private:
  Vertex source_;
  std::uint32_t bound_;
  std::vector<DistEntry> entries_;
};

/// Layered DP over (length, vertex). Bounds above n-1 are clamped: weights are
/// positive, so min-weight walks are simple paths.
DistTable bounded_shortest_paths(const Graph& g, const WeightAssignment& w, Vertex u, std::uint32_t bound);

struct MinUniqueVerdict {
  std::optional<std::pair<Vertex, Vertex>> witness;
  bool ok() const { return !witness.has_value(); }
};

/// First pair (u, v) in vertex order with two min-weight paths of length <= bound.
MinUniqueVerdict brute_min_unique(const Graph& g, const WeightAssignment& w, std::uint32_t bound);

std::uint64_t count_min_weight_paths(const Graph& g, const WeightAssignment& w, Vertex u, Vertex v,
                                     std::uint32_t bound);

/// All simple u-v paths with at most max_len edges, ordered by length and then
/// by edge-id sequence. Exponential; meant for n <= 12.
std::vector<std::vector<EdgeId>> enumerate_paths(const Graph& g, Vertex u, Vertex v, std::uint32_t max_len);

/// Sorted reachable set, including u itself.
std::vector<Vertex> bfs_reach(const Graph& g, Vertex u);
bool bfs_reaches(const Graph& g, Vertex s, Vertex t);

LimbWeight path_weight(const Graph& g, const WeightAssignment& w, const std::vector<EdgeId>& path);

// The k'-stepping admits a predecessor x of v only when the min-weight path to
// x is short enough to extend (l(u,x) + 1 <= i). Below i = n-1 this can miss
// a v whose best bounded path runs through a heavier, shorter path to x, so
// the balls the stepping builds are those of the greedy tree below, not of
// bounded_shortest_paths. At i >= n-1 the two coincide.

struct PrefixClosedEntry {
  LimbWeight dist = LimbWeight::infinity();
  std::optional<std::uint32_t> len;
  std::optional<EdgeId> parent;  // last edge of the tree path
  bool tied = false;             // a second admissible predecessor reached the same value
};

class PrefixClosedTable {
 public:
  PrefixClosedTable(Vertex source, std::uint32_t bound, std::vector<PrefixClosedEntry> entries)
      : source_(source), bound_(bound), entries_(std::move(entries)) {}

  Vertex source() const { return source_; }
  std::uint32_t bound() const { return bound_; }
  std::size_t vertex_count() const { return entries_.size() - 1; }
  const PrefixClosedEntry& operator[](Vertex v) const { return entries_[v]; }

  /// Edge ids of the tree path from the source to v, in walking order.
  std::vector<EdgeId> path_to(const Graph& g, Vertex v) const;

 private:
  Vertex source_;
  std::uint32_t bound_;
  std::vector<PrefixClosedEntry> entries_;
};

/// Grows the ball exactly as the k'-stepping does: repeatedly admits, at the
/// smallest reachable value, every outside vertex entered from an inside
/// vertex x with len(x) + 1 <= bound.
PrefixClosedTable prefix_closed_shortest_paths(const Graph& g, const WeightAssignment& w, Vertex u,
                                               std::uint32_t bound);

}  // namespace isoreach
