#include "isoreach/oracle.hpp"

#include <algorithm>
#include <deque>

namespace isoreach {

std::uint64_t DistTable::count_within(const LimbWeight& k) const {
  std::uint64_t c = 0;
  for (std::size_t v = 1; v < entries_.size(); ++v)
    if (!entries_[v].dist.is_infinite() && entries_[v].dist <= k) ++c;
  return c;
}

CensusSum DistTable::sum_within(const LimbWeight& k) const {
  CensusSum sum(entries_[source_].dist.size());
  for (std::size_t v = 1; v < entries_.size(); ++v)
    if (!entries_[v].dist.is_infinite() && entries_[v].dist <= k) sum.add(entries_[v].dist);
  return sum;
}

DistTable bounded_shortest_paths(const Graph& g, const WeightAssignment& w, Vertex u, std::uint32_t bound) {
  const std::size_t n = g.vertex_count();
  const std::uint64_t saturation = n + 1;
  const std::uint32_t effective = std::min<std::uint32_t>(bound, static_cast<std::uint32_t>(n - 1));

  std::vector<DistEntry> best(n + 1);
  best[u] = {w.zero(), 0, 1};

  // layer[v]: min weight over walks with exactly `len` edges, and their count.
  std::vector<LimbWeight> layer(n + 1, LimbWeight::infinity());
  std::vector<std::uint64_t> layer_count(n + 1, 0);
  layer[u] = w.zero();
  layer_count[u] = 1;

  for (std::uint32_t len = 1; len <= effective; ++len) {
    std::vector<LimbWeight> next(n + 1, LimbWeight::infinity());
    std::vector<std::uint64_t> next_count(n + 1, 0);
    bool any = false;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const Edge& edge = g.edge(e);
      if (layer[edge.tail].is_infinite()) continue;
      const LimbWeight cand = limb_add(layer[edge.tail], w.weight(e));
      const auto cmp = cand <=> next[edge.head];
      if (cmp < 0) {
        next[edge.head] = cand;
        next_count[edge.head] = layer_count[edge.tail];
      } else if (cmp == 0) {
        next_count[edge.head] = std::min(saturation, next_count[edge.head] + layer_count[edge.tail]);
      }
      any = true;
    }
    if (!any) break;
    for (Vertex v = 1; v <= n; ++v) {
      if (next[v].is_infinite()) continue;
      const auto cmp = next[v] <=> best[v].dist;
      if (cmp < 0) {
        best[v] = {next[v], len, next_count[v]};
      } else if (cmp == 0) {
        best[v].count = std::min(saturation, best[v].count + next_count[v]);
      }
    }
    layer = std::move(next);
    layer_count = std::move(next_count);
  }
  return DistTable(u, bound, std::move(best));
}

MinUniqueVerdict brute_min_unique(const Graph& g, const WeightAssignment& w, std::uint32_t bound) {
  for (Vertex u = 1; u <= g.vertex_count(); ++u) {
    const DistTable table = bounded_shortest_paths(g, w, u, bound);
    for (Vertex v = 1; v <= g.vertex_count(); ++v) {
      if (table[v].count > 1) return {std::pair{u, v}};
    }
  }
  return {};
}

std::uint64_t count_min_weight_paths(const Graph& g, const WeightAssignment& w, Vertex u, Vertex v,
                                     std::uint32_t bound) {
  return bounded_shortest_paths(g, w, u, bound)[v].count;
}

std::vector<std::vector<EdgeId>> enumerate_paths(const Graph& g, Vertex u, Vertex v, std::uint32_t max_len) {
  std::vector<std::vector<EdgeId>> found;
  std::vector<EdgeId> path;
  std::vector<bool> on_path(g.vertex_count() + 1, false);

  auto dfs = [&](auto&& self, Vertex at) -> void {
    if (at == v) {
      found.push_back(path);
      return;
    }
    if (path.size() == max_len) return;
    for (EdgeId e : g.out_edges(at)) {
      const Vertex next = g.edge(e).head;
      if (on_path[next]) continue;
      on_path[next] = true;
      path.push_back(e);
      self(self, next);
      path.pop_back();
      on_path[next] = false;
    }
  };
  on_path[u] = true;
  dfs(dfs, u);

  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return found;
}

std::vector<Vertex> bfs_reach(const Graph& g, Vertex u) {
  std::vector<bool> seen(g.vertex_count() + 1, false);
  std::deque<Vertex> queue{u};
  seen[u] = true;
  while (!queue.empty()) {
    const Vertex x = queue.front();
    queue.pop_front();
    for (EdgeId e : g.out_edges(x)) {
      const Vertex y = g.edge(e).head;
      if (!seen[y]) {
        seen[y] = true;
        queue.push_back(y);
      }
    }
  }
  std::vector<Vertex> out;
  for (Vertex v = 1; v <= g.vertex_count(); ++v)
    if (seen[v]) out.push_back(v);
  return out;
}

bool bfs_reaches(const Graph& g, Vertex s, Vertex t) {
  const auto reach = bfs_reach(g, s);
  return std::binary_search(reach.begin(), reach.end(), t);
}

LimbWeight path_weight(const Graph& g, const WeightAssignment& w, const std::vector<EdgeId>& path) {
  (void)g;
  LimbWeight total = w.zero();
  for (EdgeId e : path) total = limb_add(total, w.weight(e));
  return total;
}

std::vector<EdgeId> PrefixClosedTable::path_to(const Graph& g, Vertex v) const {
  std::vector<EdgeId> path;
  if (entries_[v].dist.is_infinite()) return path;
  for (Vertex at = v; at != source_;) {
    const EdgeId e = *entries_[at].parent;
    path.push_back(e);
    at = g.edge(e).tail;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

PrefixClosedTable prefix_closed_shortest_paths(const Graph& g, const WeightAssignment& w, Vertex u,
                                               std::uint32_t bound) {
  const std::size_t n = g.vertex_count();
  std::vector<PrefixClosedEntry> entries(n + 1);
  std::vector<bool> inside(n + 1, false);
  entries[u].dist = w.zero();
  entries[u].len = 0;
  inside[u] = true;

  while (true) {
    std::vector<PrefixClosedEntry> cand(n + 1);
    LimbWeight next = LimbWeight::infinity();
    for (Vertex v = 1; v <= n; ++v) {
      if (inside[v]) continue;
      for (EdgeId e : g.in_edges(v)) {
        const Vertex x = g.edge(e).tail;
        if (!inside[x] || *entries[x].len + 1 > bound) continue;
        const LimbWeight value = limb_add(entries[x].dist, w.weight(e));
        const auto cmp = value <=> cand[v].dist;
        if (cmp < 0) {
          cand[v] = {value, *entries[x].len + 1, e, false};
        } else if (cmp == 0) {
          cand[v].tied = true;
        }
      }
      if (cand[v].dist < next) next = cand[v].dist;
    }
    if (next.is_infinite()) break;
    for (Vertex v = 1; v <= n; ++v) {
      if (!inside[v] && !cand[v].dist.is_infinite() && cand[v].dist == next) {
        entries[v] = cand[v];
        inside[v] = true;
      }
    }
  }
  return PrefixClosedTable(u, bound, std::move(entries));
}

}  // namespace isoreach
