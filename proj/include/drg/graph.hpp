#pragma once

// Immutable compressed adjacency structure plus the distance machinery
// (BFS rows, distance partitions, induced subgraphs) that every other
// module consumes.

#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "drg/core.hpp"

namespace drg {

/// Simple undirected graph in CSR form. Neighbor lists are sorted
/// ascending; the structure is immutable after construction, so
/// concurrent read-only use is safe.
class Graph {
 public:
  Graph() : offsets_(1, 0) {}

  /// Builds from an edge list. Duplicate edges collapse; self-loops and
  /// out-of-range endpoints are rejected.
  static Graph from_edges(Vertex n, std::vector<std::pair<Vertex, Vertex>> edges) {
    if (n < 0) fail(errc::vertex_out_of_range, "negative vertex count");
    for (auto& [u, v] : edges) {
      if (u == v) fail(errc::self_loop, "edge " + std::to_string(u) + "-" + std::to_string(v));
      if (u < 0 || v < 0 || u >= n || v >= n)
        fail(errc::vertex_out_of_range,
             "edge " + std::to_string(u) + "-" + std::to_string(v) + " with n=" + std::to_string(n));
      if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    Graph g;
    g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (auto [u, v] : edges) {
      ++g.offsets_[static_cast<std::size_t>(u) + 1];
      ++g.offsets_[static_cast<std::size_t>(v) + 1];
    }
    std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
    g.neighbors_.resize(g.offsets_.back());
    std::vector<std::int64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (auto [u, v] : edges) {
      g.neighbors_[static_cast<std::size_t>(cursor[u]++)] = v;
      g.neighbors_[static_cast<std::size_t>(cursor[v]++)] = u;
    }
    // Each bucket was filled in ascending order because edges are sorted
    // by (min,max); the v-side entries still need a per-bucket sort.
    for (Vertex v = 0; v < n; ++v) {
      auto s = g.neighbors_.begin() + g.offsets_[v];
      auto e = g.neighbors_.begin() + g.offsets_[static_cast<std::size_t>(v) + 1];
      std::sort(s, e);
    }
    g.edge_count_ = static_cast<std::int64_t>(edges.size());
    return g;
  }

  Vertex n() const noexcept { return static_cast<Vertex>(offsets_.size() - 1); }
  std::int64_t edge_count() const noexcept { return edge_count_; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {neighbors_.data() + offsets_[v],
            neighbors_.data() + offsets_[static_cast<std::size_t>(v) + 1]};
  }

  Vertex degree(Vertex v) const {
    return static_cast<Vertex>(offsets_[static_cast<std::size_t>(v) + 1] - offsets_[v]);
  }

  bool has_edge(Vertex u, Vertex v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  /// Calls f(u, v) once per edge with u < v.
  template <typename F>
  void for_each_edge(F&& f) const {
    for (Vertex u = 0; u < n(); ++u)
      for (Vertex v : neighbors(u))
        if (u < v) f(u, v);
  }

  bool operator==(const Graph&) const = default;

 private:
  std::vector<std::int64_t> offsets_;
  std::vector<Vertex> neighbors_;
  std::int64_t edge_count_ = 0;
};

/// One BFS row: exact distances from a fixed source, kUnreachable for
/// vertices in other components.
struct DistanceRow {
  Vertex source = 0;
  std::vector<Vertex> dist;

  Vertex operator[](Vertex v) const { return dist[static_cast<std::size_t>(v)]; }

  Vertex eccentricity() const {
    Vertex e = 0;
    for (Vertex d : dist)
      if (d != kUnreachable && d > e) e = d;
    return e;
  }

  bool all_reachable() const {
    return std::find(dist.begin(), dist.end(), kUnreachable) == dist.end();
  }
};

inline DistanceRow bfs_distances(const Graph& g, Vertex source) {
  if (source < 0 || source >= g.n()) fail(errc::vertex_out_of_range, "bfs source");
  DistanceRow row;
  row.source = source;
  row.dist.assign(static_cast<std::size_t>(g.n()), kUnreachable);
  row.dist[static_cast<std::size_t>(source)] = 0;
  std::vector<Vertex> frontier{source}, next;
  Vertex d = 0;
  while (!frontier.empty()) {
    ++d;
    next.clear();
    for (Vertex u : frontier) {
      for (Vertex w : g.neighbors(u)) {
        auto& dw = row.dist[static_cast<std::size_t>(w)];
        if (dw == kUnreachable) {
          dw = d;
          next.push_back(w);
        }
      }
    }
    frontier.swap(next);
  }
  return row;
}

/// Lazily computed, memoized BFS rows. One instance per worker: lookups
/// mutate the cache, so instances must not be shared across threads.
class DistanceCache {
 public:
  explicit DistanceCache(const Graph& g) : g_(&g) {}

  const DistanceRow& row(Vertex source) {
    auto it = rows_.find(source);
    if (it == rows_.end()) it = rows_.emplace(source, bfs_distances(*g_, source)).first;
    return it->second;
  }

  Vertex distance(Vertex u, Vertex v) { return row(u)[v]; }

  const Graph& graph() const noexcept { return *g_; }

 private:
  const Graph* g_;
  std::unordered_map<Vertex, DistanceRow> rows_;
};

/// Partition of the vertex set by distance from x: Gamma_0(x) .. Gamma_ecc(x).
/// Throws if some vertex is unreachable from x.
inline std::vector<VertexSubset> distance_partition(const Graph& g, Vertex x) {
  DistanceRow row = bfs_distances(g, x);
  Vertex ecc = 0;
  for (Vertex v = 0; v < g.n(); ++v) {
    if (row[v] == kUnreachable)
      fail(errc::disconnected, "vertex " + std::to_string(v) + " unreachable from " + std::to_string(x));
    ecc = std::max(ecc, row[v]);
  }
  std::vector<std::vector<Vertex>> layers(static_cast<std::size_t>(ecc) + 1);
  for (Vertex v = 0; v < g.n(); ++v) layers[static_cast<std::size_t>(row[v])].push_back(v);
  std::vector<VertexSubset> out;
  out.reserve(layers.size());
  for (auto& layer : layers) out.emplace_back(std::move(layer));
  return out;
}

/// Induced subgraph on s plus the map from new indices back to parent ones.
struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> to_parent;
};

inline InducedSubgraph induced_subgraph(const Graph& g, const VertexSubset& s) {
  if (s.empty()) fail(errc::empty_subset, "induced_subgraph");
  std::unordered_map<Vertex, Vertex> to_local;
  to_local.reserve(s.size());
  Vertex next = 0;
  for (Vertex v : s) to_local.emplace(v, next++);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v : s) {
    for (Vertex w : g.neighbors(v)) {
      if (w > v && s.contains(w)) edges.emplace_back(to_local[v], to_local[w]);
    }
  }
  return {Graph::from_edges(static_cast<Vertex>(s.size()), std::move(edges)),
          std::vector<Vertex>(s.begin(), s.end())};
}

struct DiameterReport {
  Vertex diameter = 0;
  std::optional<Vertex> valency;  // present iff all degrees equal
};

/// Exact diameter by all-sources BFS, plus the common valency if the
/// graph is regular. Throws on a disconnected graph.
inline DiameterReport diameter_and_regularity(const Graph& g) {
  if (g.n() == 0) fail(errc::empty_subset, "diameter of empty graph");
  DiameterReport rep;
  rep.valency = g.degree(0);
  for (Vertex v = 1; v < g.n(); ++v)
    if (g.degree(v) != *rep.valency) {
      rep.valency.reset();
      break;
    }
  for (Vertex v = 0; v < g.n(); ++v) {
    DistanceRow row = bfs_distances(g, v);
    if (!row.all_reachable()) fail(errc::disconnected, "diameter_and_regularity");
    rep.diameter = std::max(rep.diameter, row.eccentricity());
  }
  return rep;
}

inline bool is_connected(const Graph& g) {
  if (g.n() == 0) return true;
  return bfs_distances(g, 0).all_reachable();
}

}  // namespace drg
