#pragma once

// Test-only oracles: deliberately naive reimplementations used to freeze
// expected values and to cross-check the library's fast paths. Nothing
// here may call the code path it is checking.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "drg/core.hpp"
#include "drg/graph.hpp"

namespace oracle {

using drg::Graph;
using drg::Vertex;

constexpr int kInf = 1 << 28;

/// All-pairs distances by Floyd-Warshall (quadratic memory, cubic time).
inline std::vector<std::vector<int>> all_pairs_floyd(const Graph& g) {
  const int n = g.n();
  std::vector<std::vector<int>> d(n, std::vector<int>(n, kInf));
  for (int v = 0; v < n; ++v) d[v][v] = 0;
  g.for_each_edge([&](Vertex u, Vertex v) { d[u][v] = d[v][u] = 1; });
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

/// p^h_ij by direct triple counting for one pair.
inline std::int64_t count_pair(const std::vector<std::vector<int>>& dist, Vertex x, Vertex y,
                               int i, int j) {
  std::int64_t count = 0;
  for (std::size_t z = 0; z < dist.size(); ++z)
    if (dist[x][z] == i && dist[y][z] == j) ++count;
  return count;
}

/// The full tensor, failing (returning nullopt) if any count depends on
/// the pair chosen.
inline std::optional<std::vector<std::int64_t>> tensor_by_counting(const Graph& g, int& D_out) {
  auto dist = all_pairs_floyd(g);
  const int n = g.n();
  int D = 0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (dist[x][y] >= kInf) return std::nullopt;
      D = std::max(D, dist[x][y]);
    }
  const int m = D + 1;
  std::vector<std::int64_t> tensor(static_cast<std::size_t>(m) * m * m, -1);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int h = dist[x][y];
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          std::int64_t c = count_pair(dist, x, y, i, j);
          auto& slot = tensor[(static_cast<std::size_t>(h) * m + i) * m + j];
          if (slot < 0) slot = c;
          else if (slot != c) return std::nullopt;
        }
    }
  D_out = D;
  return tensor;
}

/// Labeled parallelogram search by the quadruple loop.
inline std::vector<std::tuple<Vertex, Vertex, Vertex, Vertex>> parallelograms_naive(const Graph& g,
                                                                                    int len) {
  auto dist = all_pairs_floyd(g);
  std::vector<std::tuple<Vertex, Vertex, Vertex, Vertex>> found;
  const int n = g.n();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (dist[x][y] != 1) continue;
      for (int z = 0; z < n; ++z) {
        if (dist[x][z] != len || dist[y][z] != len - 1) continue;
        for (int w = 0; w < n; ++w)
          if (dist[z][w] == 1 && dist[x][w] == len - 1 && dist[y][w] == len - 1)
            found.emplace_back(x, y, z, w);
      }
    }
  return found;
}

/// Labeled pentagon (5-tuple, consecutive distances 1, distinct) count.
inline std::int64_t pentagons_naive(const Graph& g) {
  auto dist = all_pairs_floyd(g);
  const int n = g.n();
  std::int64_t count = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (dist[a][b] != 1) continue;
      for (int c = 0; c < n; ++c) {
        if (c == a || dist[b][c] != 1) continue;
        for (int d = 0; d < n; ++d) {
          if (d == a || d == b || dist[c][d] != 1) continue;
          for (int e = 0; e < n; ++e) {
            if (e == a || e == b || e == c) continue;
            if (dist[d][e] == 1 && dist[e][a] == 1) ++count;
          }
        }
      }
    }
  return count;
}

/// Weak-geodetic closedness straight from the definition: no triple
/// x,z in Omega, y outside with d(x,y)+d(y,z) <= d(x,z)+1.
inline bool closed_by_definition(const Graph& g, const std::vector<Vertex>& members) {
  auto dist = all_pairs_floyd(g);
  std::vector<char> in(g.n(), 0);
  for (Vertex v : members) in[v] = 1;
  for (Vertex x : members)
    for (Vertex z : members)
      for (Vertex y = 0; y < g.n(); ++y)
        if (!in[y] && dist[x][y] + dist[y][z] <= dist[x][z] + 1) return false;
  return true;
}

/// Definitional closure: keep adding qualifying middle vertices one
/// sweep at a time until stable. Independent of the library's pair-queue
/// implementation.
inline std::vector<Vertex> closure_by_definition(const Graph& g, std::vector<Vertex> members) {
  auto dist = all_pairs_floyd(g);
  std::vector<char> in(g.n(), 0);
  for (Vertex v : members) in[v] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Vertex> snapshot = members;
    for (Vertex x : snapshot)
      for (Vertex z : snapshot)
        for (Vertex y = 0; y < g.n(); ++y)
          if (!in[y] && dist[x][y] + dist[y][z] <= dist[x][z] + 1) {
            in[y] = 1;
            members.push_back(y);
            changed = true;
          }
  }
  std::sort(members.begin(), members.end());
  return members;
}

/// Erdos-Renyi-ish random simple graph from a seeded generator.
inline Graph random_graph(Vertex n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return Graph::from_edges(n, std::move(edges));
}

inline int girth(const Graph& g) {
  // Shortest cycle through each base edge: remove the edge implicitly by
  // forbidding the direct step at depth 0.
  int best = kInf;
  for (Vertex u = 0; u < g.n(); ++u) {
    for (Vertex v : g.neighbors(u)) {
      if (v < u) continue;
      // BFS from u to v avoiding the edge (u,v).
      std::vector<int> dist(g.n(), -1);
      std::vector<Vertex> queue{u};
      dist[u] = 0;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex w = queue[head];
        for (Vertex t : g.neighbors(w)) {
          if (w == u && t == v) continue;
          if (dist[t] < 0) {
            dist[t] = dist[w] + 1;
            queue.push_back(t);
          }
        }
      }
      if (dist[v] >= 0) best = std::min(best, dist[v] + 1);
    }
  }
  return best;
}

}  // namespace oracle
