#pragma once

// Weak-geodetic machinery. A sequence x,y,z is weak-geodetic when
// d(x,y) + d(y,z) <= d(x,z) + 1; a subset is weak-geodetically closed
// when it contains every middle vertex of such a sequence between its
// members. This header implements the closure operator, the
// parallelogram and pentagon scans, the diameter-2 subgraphs Omega(z,s),
// the interval construction Delta = [x,C] for distance-3 pairs, and the
// boundedness and local-property checkers built on top of them.

#include <array>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "drg/core.hpp"
#include "drg/graph.hpp"
#include "drg/intersection.hpp"

namespace drg {

// ---------------------------------------------------------------------------
// Certificates and small types

enum class Construction { closure_fixed_point, delta_construction, whole_graph };

inline const char* construction_name(Construction c) {
  switch (c) {
    case Construction::closure_fixed_point: return "closure-fixed-point";
    case Construction::delta_construction: return "delta-construction";
    case Construction::whole_graph: return "whole-graph";
  }
  return "unknown";
}

struct ClosedSubgraphCertificate {
  VertexSubset members;
  Vertex diameter = 0;
  std::optional<Vertex> valency;
  bool closed = false;
  std::vector<Vertex> closed_wrt;  // vertices whose closure condition was re-verified
  Construction construction = Construction::closure_fixed_point;
};

/// 4-tuple x,y,z,w with d(x,y)=d(z,w)=1, d(x,z)=i and the remaining
/// three distances i-1.
struct Parallelogram {
  Vertex x, y, z, w;
  int length;

  auto operator<=>(const Parallelogram&) const = default;
};

/// 5-tuple with consecutive distances 1 (cyclically). Enumerated as
/// labeled tuples; rotations and reflections count separately.
struct Pentagon {
  std::array<Vertex, 5> v;

  auto operator<=>(const Pentagon&) const = default;
};

/// Hypotheses the closure constructions rely on. parallelogram_free
/// means freedom from parallelograms of every length 3..D, established
/// either by direct scans or through a classical-parameter fit.
struct ClosureGate {
  bool d_ge_3 = false;
  bool a1_zero = false;
  bool a2_nonzero = false;
  bool parallelogram_free = false;

  bool admissible() const { return d_ge_3 && a1_zero && a2_nonzero && parallelogram_free; }
};

inline ClosureGate make_gate(const DRGCertificate& cert, bool parallelogram_free_established) {
  GateReport gr = hypothesis_gate(cert);
  return {gr.d_ge_3, gr.a1_zero, gr.a2_nonzero, parallelogram_free_established};
}

// ---------------------------------------------------------------------------
// Predicates

/// Whether x, y, z is weak-geodetic, evaluated from the rows at x and z.
inline bool is_weak_geodetic(const DistanceRow& dx, const DistanceRow& dz, Vertex y) {
  Vertex a = dx[y], b = dz[y], base = dx[dz.source];
  if (a == kUnreachable || b == kUnreachable || base == kUnreachable) return false;
  return a + b <= base + 1;
}

struct ClosedWrtReport {
  bool closed = true;
  Vertex z = -1;         // member whose neighborhood leaks
  Vertex offender = -1;  // the neighbor outside omega
};

namespace detail {

inline std::vector<char> membership_mask(const Graph& g, const VertexSubset& omega) {
  std::vector<char> in(static_cast<std::size_t>(g.n()), 0);
  for (Vertex v : omega) in[static_cast<std::size_t>(v)] = 1;
  return in;
}

inline ClosedWrtReport closed_wrt_masked(const Graph& g, const VertexSubset& omega,
                                         const std::vector<char>& in,
                                         const DistanceRow& row_x) {
  // Omega is weak-geodetically closed with respect to x iff
  // C(z,x) and A(z,x) stay inside Omega for every member z.
  for (Vertex z : omega) {
    Vertex dz = row_x[z];
    for (Vertex w : g.neighbors(z)) {
      Vertex dw = row_x[w];
      if ((dw == dz - 1 || dw == dz) && !in[static_cast<std::size_t>(w)])
        return {false, z, w};
    }
  }
  return {};
}

}  // namespace detail

/// Closure condition relative to one member x: C(z,x) and A(z,x)
/// contained in Omega for all z in Omega. Reports the first
/// violation under deterministic order.
inline ClosedWrtReport is_closed_wrt(const Graph& g, const VertexSubset& omega, Vertex x) {
  if (!omega.contains(x)) fail(errc::vertex_out_of_range, "x must belong to omega");
  auto in = detail::membership_mask(g, omega);
  DistanceRow row = bfs_distances(g, x);
  return detail::closed_wrt_masked(g, omega, in, row);
}

/// Weak-geodetic closedness: the condition relative to every member.
inline bool is_weak_geodetically_closed(const Graph& g, const VertexSubset& omega) {
  if (omega.empty()) fail(errc::empty_subset, "closedness of empty set");
  if (static_cast<Vertex>(omega.size()) == g.n()) return true;
  auto in = detail::membership_mask(g, omega);
  for (Vertex x : omega) {
    DistanceRow row = bfs_distances(g, x);
    if (!detail::closed_wrt_masked(g, omega, in, row).closed) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Closure operator

/// Least weak-geodetically closed superset of the seed: every round adds
/// all vertices lying on a weak-geodetic sequence between current
/// members, until nothing changes. Each unordered member pair is scanned
/// exactly once; if the set reaches the whole vertex set the scan stops
/// early. The certificate carries the induced subgraph's diameter and
/// valency.
inline ClosedSubgraphCertificate weak_geodetic_closure(const Graph& g, const VertexSubset& seed,
                                                       DistanceCache* shared_cache = nullptr) {
  if (seed.empty()) fail(errc::empty_subset, "closure of empty seed");
  const Vertex n = g.n();
  DistanceCache local(g);
  DistanceCache& cache = shared_cache ? *shared_cache : local;

  std::vector<char> in(static_cast<std::size_t>(n), 0);
  std::vector<Vertex> members;
  std::deque<std::pair<Vertex, Vertex>> pending;
  auto add = [&](Vertex v) {
    if (in[static_cast<std::size_t>(v)]) return;
    in[static_cast<std::size_t>(v)] = 1;
    for (Vertex u : members) pending.emplace_back(u, v);
    members.push_back(v);
  };
  for (Vertex v : seed) add(v);

  while (!pending.empty() && static_cast<Vertex>(members.size()) < n) {
    auto [p, q] = pending.front();
    pending.pop_front();
    const Vertex* dp = cache.row(p).dist.data();
    const Vertex* dq = cache.row(q).dist.data();
    const Vertex bound = dp[q] + 1;
    for (Vertex y = 0; y < n; ++y)
      if (!in[static_cast<std::size_t>(y)] && dp[y] != kUnreachable && dq[y] != kUnreachable &&
          dp[y] + dq[y] <= bound)
        add(y);
  }

  ClosedSubgraphCertificate cert;
  if (static_cast<Vertex>(members.size()) == n) {
    std::vector<Vertex> all(n);
    for (Vertex v = 0; v < n; ++v) all[static_cast<std::size_t>(v)] = v;
    cert.members = VertexSubset(std::move(all));
    cert.construction = Construction::whole_graph;
  } else {
    cert.members = VertexSubset(std::move(members));
    cert.construction = Construction::closure_fixed_point;
  }
  InducedSubgraph sub = induced_subgraph(g, cert.members);
  DiameterReport rep = diameter_and_regularity(sub.graph);
  cert.diameter = rep.diameter;
  cert.valency = rep.valency;
  cert.closed = true;
  return cert;
}

// ---------------------------------------------------------------------------
// Parallelogram and pentagon scans

/// Exhaustive scan for parallelograms of the given length: ordered edges
/// (x,y), then z at distance i from x and i-1 from y, then neighbors w
/// of z at distance i-1 from both. Every labeled occurrence is reported
/// unless first_only is set.
inline std::vector<Parallelogram> find_parallelograms(const Graph& g, int length,
                                                      bool first_only = false) {
  if (length < 2) fail(errc::unsupported_parameters, "parallelogram length must be >= 2");
  const Vertex n = g.n();
  std::vector<Parallelogram> found;
  // Per-source transient rows keep memory linear even on large graphs.
  for (Vertex x = 0; x < n; ++x) {
    DistanceRow dx = bfs_distances(g, x);
    std::vector<Vertex> layer;
    for (Vertex v = 0; v < n; ++v)
      if (dx[v] == length) layer.push_back(v);
    if (layer.empty()) continue;
    for (Vertex y : g.neighbors(x)) {
      DistanceRow dy = bfs_distances(g, y);
      for (Vertex z : layer) {
        if (dy[z] != length - 1) continue;
        for (Vertex w : g.neighbors(z)) {
          if (dx[w] == length - 1 && dy[w] == length - 1) {
            found.push_back({x, y, z, w, length});
            if (first_only) return found;
          }
        }
      }
    }
  }
  return found;
}

/// Layer constraints for the five pentagon positions, relative to a base
/// vertex: pattern[p] demands d(base, v_p) == *pattern[p].
using PentagonPattern = std::array<std::optional<int>, 5>;

/// All labeled pentagons v1..v5 (consecutive distances 1, vertices
/// distinct) whose positions satisfy the pattern relative to x.
/// max_count = 0 means unlimited.
inline std::vector<Pentagon> find_pentagons_constrained(const Graph& g, Vertex x,
                                                        const PentagonPattern& pattern,
                                                        std::size_t max_count = 0) {
  DistanceRow row = bfs_distances(g, x);
  auto allowed = [&](int pos, Vertex v) {
    return !pattern[static_cast<std::size_t>(pos)] ||
           row[v] == *pattern[static_cast<std::size_t>(pos)];
  };
  std::vector<Pentagon> found;
  std::array<Vertex, 5> cur{};
  auto distinct_prefix = [&](int upto, Vertex v) {
    for (int i = 0; i < upto; ++i)
      if (cur[static_cast<std::size_t>(i)] == v) return false;
    return true;
  };
  for (Vertex v1 = 0; v1 < g.n(); ++v1) {
    if (!allowed(0, v1)) continue;
    cur[0] = v1;
    for (Vertex v2 : g.neighbors(v1)) {
      if (!allowed(1, v2)) continue;
      cur[1] = v2;
      for (Vertex v3 : g.neighbors(v2)) {
        if (v3 == v1 || !allowed(2, v3)) continue;
        cur[2] = v3;
        for (Vertex v4 : g.neighbors(v3)) {
          if (!distinct_prefix(3, v4) || !allowed(3, v4)) continue;
          cur[3] = v4;
          for (Vertex v5 : g.neighbors(v4)) {
            if (!distinct_prefix(4, v5) || !allowed(4, v5)) continue;
            if (!g.has_edge(v5, v1)) continue;
            cur[4] = v5;
            found.push_back({cur});
            if (max_count && found.size() >= max_count) return found;
          }
        }
      }
    }
  }
  return found;
}

// ---------------------------------------------------------------------------
// B-set context for a base vertex

/// Rows from x and from every neighbor of x, with B(x,z) available as a
/// bitmask over the neighbor positions: v in B(x,z) iff
/// d(v,z) = d(x,z)+1. This is the workhorse behind C-set construction
/// and the lemma-level checks.
class BaseVertexContext {
 public:
  BaseVertexContext(const Graph& g, Vertex x) : g_(&g), x_(x), row_x_(bfs_distances(g, x)) {
    auto nb = g.neighbors(x);
    nbrs_.assign(nb.begin(), nb.end());
    rows_.reserve(nbrs_.size());
    for (Vertex v : nbrs_) rows_.push_back(bfs_distances(g, v));
    words_ = (nbrs_.size() + 63) / 64;
  }

  Vertex base() const { return x_; }
  const DistanceRow& row_x() const { return row_x_; }
  const std::vector<Vertex>& neighbors() const { return nbrs_; }
  const DistanceRow& neighbor_row(std::size_t pos) const { return rows_[pos]; }

  std::vector<std::uint64_t> b_mask(Vertex z) const {
    std::vector<std::uint64_t> mask(words_, 0);
    const Vertex target = row_x_[z] + 1;
    for (std::size_t p = 0; p < nbrs_.size(); ++p)
      if (rows_[p][z] == target) mask[p / 64] |= 1ull << (p % 64);
    return mask;
  }

  std::vector<Vertex> b_set(Vertex z) const {
    std::vector<Vertex> out;
    const Vertex target = row_x_[z] + 1;
    for (std::size_t p = 0; p < nbrs_.size(); ++p)
      if (rows_[p][z] == target) out.push_back(nbrs_[p]);
    return out;
  }

 private:
  const Graph* g_;
  Vertex x_;
  DistanceRow row_x_;
  std::vector<Vertex> nbrs_;
  std::vector<DistanceRow> rows_;
  std::size_t words_ = 0;
};

// ---------------------------------------------------------------------------
// Omega(z,s), intervals, and Delta

/// The regular diameter-2 weak-geodetically closed subgraph through a
/// distance-2 pair, realized as the weak-geodetic closure of the pair
/// and then certified: diameter 2, regular, valency c_2 + a_2. Under the
/// gate these cannot fail; a failure aborts loudly.
inline ClosedSubgraphCertificate omega_2(const Graph& g, const DRGCertificate& cert,
                                         const ClosureGate& gate, Vertex z, Vertex s,
                                         DistanceCache* cache = nullptr) {
  if (!gate.a1_zero || !gate.a2_nonzero || !gate.parallelogram_free || !gate.d_ge_3)
    fail(errc::hypothesis_violated, "omega_2 needs a1=0, a2!=0, D>=3, no parallelograms");
  DistanceCache local(g);
  DistanceCache& rows = cache ? *cache : local;
  if (rows.distance(z, s) != 2)
    fail(errc::hypothesis_violated,
         "omega_2 needs a pair at distance 2, got " + std::to_string(rows.distance(z, s)));
  ClosedSubgraphCertificate out =
      weak_geodetic_closure(g, VertexSubset(std::vector<Vertex>{z, s}), &rows);
  const std::int64_t expected = cert.array.c(2) + cert.array.a(2);
  if (out.diameter != 2)
    fail(errc::certification_failed,
         "Omega(" + std::to_string(z) + "," + std::to_string(s) + ") has diameter " +
             std::to_string(out.diameter));
  if (!out.valency)
    fail(errc::certification_failed,
         "Omega(" + std::to_string(z) + "," + std::to_string(s) + ") is not regular");
  if (*out.valency != expected)
    fail(errc::certification_failed,
         "Omega(" + std::to_string(z) + "," + std::to_string(s) + ") has valency " +
             std::to_string(*out.valency) + ", expected c_2+a_2 = " + std::to_string(expected));
  return out;
}

/// [x,C]: vertices on a geodesic from x to some member of C.
inline VertexSubset interval_set(const Graph& g, Vertex x, const VertexSubset& c_set,
                                 DistanceCache* cache = nullptr) {
  DistanceCache local(g);
  DistanceCache& rows = cache ? *cache : local;
  const Vertex n = g.n();
  const Vertex* dx = rows.row(x).dist.data();
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (Vertex z : c_set) {
    const Vertex* dz = rows.row(z).dist.data();
    const Vertex base = dx[z];
    for (Vertex v = 0; v < n; ++v)
      if (!in[static_cast<std::size_t>(v)] && dx[v] != kUnreachable && dz[v] != kUnreachable &&
          dx[v] + dz[v] == base)
        in[static_cast<std::size_t>(v)] = 1;
  }
  std::vector<Vertex> members;
  for (Vertex v = 0; v < n; ++v)
    if (in[static_cast<std::size_t>(v)]) members.push_back(v);
  return VertexSubset(std::move(members));
}

/// C = { z in Gamma_3(x) : B(x,z) = B(x,y) }, computed from the rows of
/// the neighbors of x.
inline VertexSubset build_C_set(const BaseVertexContext& ctx, Vertex y) {
  if (ctx.row_x()[y] != 3)
    fail(errc::hypothesis_violated, "build_C_set needs a pair at distance 3");
  const auto want = ctx.b_mask(y);
  std::vector<Vertex> members;
  const auto& row = ctx.row_x();
  for (Vertex z = 0; z < static_cast<Vertex>(row.dist.size()); ++z)
    if (row[z] == 3 && ctx.b_mask(z) == want) members.push_back(z);
  return VertexSubset(std::move(members));
}

inline VertexSubset build_C_set(const Graph& g, const DRGCertificate&, Vertex x, Vertex y) {
  BaseVertexContext ctx(g, x);
  return build_C_set(ctx, y);
}

struct DeltaResult {
  ClosedSubgraphCertificate cert;
  Vertex x = 0, y = 0;
  VertexSubset c_set;
  std::vector<Vertex> b_xy;  // B(x,y), which must avoid Delta entirely
};

struct DeltaOptions {
  // Up to this size, closedness is re-verified from every member;
  // beyond it, closed-wrt-x plus regularity invokes the subgraph
  // equivalence theorem and the certificate records the shortcut.
  Vertex full_check_limit = 2000;
};

/// Delta = [x, C] for a distance-3 pair, certified as a regular
/// weak-geodetically closed subgraph of diameter 3 with valency
/// a_3 + c_3. Any failed check aborts with the witness, since the gate
/// hypotheses make failure impossible.
inline DeltaResult construct_delta(const Graph& g, const DRGCertificate& cert,
                                   const ClosureGate& gate, Vertex x, Vertex y,
                                   const DeltaOptions& opts = {},
                                   DistanceCache* cache = nullptr) {
  if (!gate.admissible())
    fail(errc::hypothesis_violated, "construct_delta needs D>=3, a1=0, a2!=0, no parallelograms");

  BaseVertexContext ctx(g, x);
  if (ctx.row_x()[y] != 3)
    fail(errc::hypothesis_violated, "construct_delta needs a pair at distance 3, got " +
                                        std::to_string(ctx.row_x()[y]));

  DeltaResult out;
  out.x = x;
  out.y = y;
  out.c_set = build_C_set(ctx, y);
  out.b_xy = ctx.b_set(y);
  out.cert.members = interval_set(g, x, out.c_set, cache);
  out.cert.construction = static_cast<Vertex>(out.cert.members.size()) == g.n()
                              ? Construction::whole_graph
                              : Construction::delta_construction;

  auto refuse = [&](const std::string& why) {
    fail(errc::certification_failed, "Delta(" + std::to_string(x) + "," + std::to_string(y) +
                                         "): " + why);
  };

  if (!out.cert.members.contains(x) || !out.cert.members.contains(y))
    refuse("does not contain the defining pair");

  InducedSubgraph sub = induced_subgraph(g, out.cert.members);
  DiameterReport rep = diameter_and_regularity(sub.graph);
  out.cert.diameter = rep.diameter;
  out.cert.valency = rep.valency;
  const std::int64_t expected = cert.array.a(3) + cert.array.c(3);
  if (!rep.valency) refuse("induced subgraph is not regular");
  if (*rep.valency != expected)
    refuse("valency " + std::to_string(*rep.valency) + ", expected a_3+c_3 = " +
           std::to_string(expected));
  if (rep.diameter != 3) refuse("diameter " + std::to_string(rep.diameter));

  if (static_cast<Vertex>(out.cert.members.size()) == g.n()) {
    out.cert.closed = true;  // the whole vertex set is closed by definition
  } else if (static_cast<Vertex>(out.cert.members.size()) <= opts.full_check_limit) {
    auto in = detail::membership_mask(g, out.cert.members);
    for (Vertex member : out.cert.members) {
      DistanceRow row = bfs_distances(g, member);
      ClosedWrtReport r = detail::closed_wrt_masked(g, out.cert.members, in, row);
      if (!r.closed)
        refuse("not closed w.r.t. " + std::to_string(member) + ": member " + std::to_string(r.z) +
               " leaks neighbor " + std::to_string(r.offender));
      out.cert.closed_wrt.push_back(member);
    }
    out.cert.closed = true;
  } else {
    ClosedWrtReport r = is_closed_wrt(g, out.cert.members, x);
    if (!r.closed)
      refuse("not closed w.r.t. " + std::to_string(x) + ": member " + std::to_string(r.z) +
             " leaks neighbor " + std::to_string(r.offender));
    out.cert.closed_wrt.push_back(x);
    // Closed w.r.t. one vertex plus regularity is equivalent to full
    // closedness for regular subgraphs (subgraph equivalence theorem).
    out.cert.closed = true;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Subgraph equivalence checker

struct SubgraphEquivalenceReport {
  Vertex gamma = 0;
  int d = 0;  // min { i : gamma <= c_i + a_i }
  bool closed_wrt_some = false;
  bool closed_all = false;
  Vertex induced_diameter = 0;
  bool equivalence_holds = false;
  bool valency_identity_holds = false;  // gamma == c_d + a_d when closed
};

/// Checks the equivalence "closed w.r.t. one member <=> closed with
/// diameter d" for a regular connected subgraph, plus the valency
/// identity gamma = c_d + a_d in the closed case.
inline SubgraphEquivalenceReport verify_subgraph_equivalence(const Graph& g, const DRGCertificate& cert,
                                        const VertexSubset& omega) {
  if (omega.empty()) fail(errc::empty_subset, "verify_subgraph_equivalence");
  InducedSubgraph sub = induced_subgraph(g, omega);
  if (!is_connected(sub.graph)) fail(errc::disconnected, "subgraph must be connected");
  DiameterReport rep = diameter_and_regularity(sub.graph);
  if (!rep.valency) fail(errc::not_regular, "subgraph must be regular");

  SubgraphEquivalenceReport out;
  out.gamma = *rep.valency;
  out.induced_diameter = rep.diameter;
  out.d = 0;
  while (out.d <= cert.array.D() &&
         static_cast<std::int64_t>(out.gamma) > cert.array.c(out.d) + cert.array.a(out.d))
    ++out.d;

  auto in = detail::membership_mask(g, omega);
  bool some = false, all = true;
  for (Vertex x : omega) {
    DistanceRow row = bfs_distances(g, x);
    bool ok = detail::closed_wrt_masked(g, omega, in, row).closed;
    some = some || ok;
    all = all && ok;
  }
  out.closed_wrt_some = some;
  out.closed_all = all;
  out.equivalence_holds = (some == (all && out.induced_diameter == out.d));
  out.valency_identity_holds =
      !all || (static_cast<std::int64_t>(out.gamma) == cert.array.c(out.d) + cert.array.a(out.d));
  return out;
}

// ---------------------------------------------------------------------------
// i-bounded checker

struct Sampling {
  enum class Mode { exhaustive, random } mode = Mode::exhaustive;
  int count = 0;
  std::uint64_t seed = 0;

  static Sampling exhaustive() { return {}; }
  static Sampling random(int count, std::uint64_t seed) {
    return {Mode::random, count, seed};
  }
};

struct SubgraphShape {
  Vertex size = 0;
  Vertex valency = 0;
  Vertex diameter = 0;
  Construction construction = Construction::closure_fixed_point;

  auto operator<=>(const SubgraphShape&) const = default;
};

struct DistanceLevelReport {
  int distance = 0;
  std::int64_t pairs_checked = 0;
  std::int64_t passes = 0;
  std::int64_t unique_subgraphs = 0;
  std::map<SubgraphShape, std::int64_t> shapes;
};

struct BoundednessReport {
  int max_distance = 0;
  Sampling sampling;
  std::vector<DistanceLevelReport> levels;
  bool all_passed = true;

  std::int64_t pairs_checked() const {
    std::int64_t total = 0;
    for (const auto& l : levels) total += l.pairs_checked;
    return total;
  }
};

/// For every selected pair at distance d <= i, produce and certify a
/// regular weak-geodetically closed subgraph of diameter d: the edge for
/// d=1 (valid since a_1 = 0), Omega(z,s) for d=2, Delta = [x,C] for d=3.
/// Certification failures abort loudly with the failing pair.
inline BoundednessReport check_i_bounded(const Graph& g, const DRGCertificate& cert,
                                         const ClosureGate& gate, int max_distance,
                                         const Sampling& sampling,
                                         DistanceCache* cache = nullptr) {
  if (max_distance < 1 || max_distance > cert.array.D())
    fail(errc::unsupported_parameters, "max_distance must lie in 1..D");
  if (max_distance > 3)
    fail(errc::unsupported_parameters, "subgraph constructions are available up to distance 3");
  if (!gate.a1_zero)
    fail(errc::hypothesis_violated, "check_i_bounded needs a1 = 0");
  if (max_distance >= 2 && !gate.admissible())
    fail(errc::hypothesis_violated,
         "distances >= 2 need D>=3, a2 != 0, and parallelogram-freeness");

  DistanceCache local(g);
  DistanceCache& rows = cache ? *cache : local;
  const Vertex n = g.n();
  // On large graphs the per-pair constructions use their own transient
  // rows; feeding them the shared cache would pin one row per C-set
  // member indefinitely.
  DistanceCache* shared = n <= 4096 ? &rows : nullptr;

  BoundednessReport report;
  report.max_distance = max_distance;
  report.sampling = sampling;

  // The edge subgraph {x,y} for an adjacent pair: closed iff the pair
  // has no common neighbors and no member leaks a same-distance
  // neighbor, which a_1 = 0 guarantees.
  auto check_edge = [&](Vertex x, Vertex y) {
    auto nx = g.neighbors(x);
    auto ny = g.neighbors(y);
    std::size_t i = 0, j = 0;
    while (i < nx.size() && j < ny.size()) {
      if (nx[i] == ny[j])
        fail(errc::certification_failed, "edge " + std::to_string(x) + "-" + std::to_string(y) +
                                             " has common neighbor " + std::to_string(nx[i]));
      if (nx[i] < ny[j]) ++i;
      else ++j;
    }
    return SubgraphShape{2, 1, 1, Construction::closure_fixed_point};
  };

  auto record = [&](DistanceLevelReport& level, const SubgraphShape& shape, bool fresh) {
    ++level.pairs_checked;
    ++level.passes;
    ++level.shapes[shape];
    if (fresh) ++level.unique_subgraphs;
  };

  for (int d = 1; d <= max_distance; ++d) {
    DistanceLevelReport level;
    level.distance = d;

    if (sampling.mode == Sampling::Mode::exhaustive) {
      for (Vertex x = 0; x < n; ++x) {
        const DistanceRow& row = rows.row(x);
        // Delta is determined by (x, B-class of y); construct it once
        // per class and reuse across the matching pairs.
        std::map<std::vector<std::uint64_t>, std::pair<SubgraphShape, VertexSubset>> delta_memo;
        std::optional<BaseVertexContext> ctx;
        for (Vertex y = x + 1; y < n; ++y) {
          if (row[y] != d) continue;
          if (d == 1) {
            record(level, check_edge(x, y), true);
          } else if (d == 2) {
            ClosedSubgraphCertificate omega = omega_2(g, cert, gate, x, y, shared);
            record(level,
                   SubgraphShape{static_cast<Vertex>(omega.members.size()),
                                 omega.valency.value_or(-1), omega.diameter,
                                 omega.construction},
                   true);
          } else {
            if (!ctx) ctx.emplace(g, x);
            auto key = ctx->b_mask(y);
            auto it = delta_memo.find(key);
            bool fresh = it == delta_memo.end();
            if (fresh) {
              DeltaResult delta = construct_delta(g, cert, gate, x, y, {}, shared);
              SubgraphShape shape{static_cast<Vertex>(delta.cert.members.size()),
                                  delta.cert.valency.value_or(-1), delta.cert.diameter,
                                  delta.cert.construction};
              it = delta_memo.emplace(key, std::make_pair(shape, delta.cert.members)).first;
            } else if (!it->second.second.contains(y)) {
              fail(errc::certification_failed,
                   "pair (" + std::to_string(x) + "," + std::to_string(y) +
                       ") missing from the Delta of its own B-class");
            }
            record(level, it->second.first, fresh);
          }
        }
      }
    } else {
      std::mt19937_64 rng(sampling.seed + static_cast<std::uint64_t>(d));
      std::uniform_int_distribution<Vertex> pick(0, n - 1);
      int produced = 0, attempts = 0;
      while (produced < sampling.count && attempts < sampling.count * 200) {
        ++attempts;
        Vertex x = pick(rng);
        const DistanceRow& row = rows.row(x);
        std::vector<Vertex> layer;
        for (Vertex v = 0; v < n; ++v)
          if (row[v] == d) layer.push_back(v);
        if (layer.empty()) continue;
        std::uniform_int_distribution<std::size_t> pick_layer(0, layer.size() - 1);
        Vertex y = layer[pick_layer(rng)];
        if (d == 1) {
          record(level, check_edge(x, y), true);
        } else if (d == 2) {
          ClosedSubgraphCertificate omega = omega_2(g, cert, gate, x, y, shared);
          record(level,
                 SubgraphShape{static_cast<Vertex>(omega.members.size()),
                               omega.valency.value_or(-1), omega.diameter,
                               omega.construction},
                 true);
        } else {
          DeltaResult delta = construct_delta(g, cert, gate, x, y, {}, shared);
          record(level,
                 SubgraphShape{static_cast<Vertex>(delta.cert.members.size()),
                               delta.cert.valency.value_or(-1), delta.cert.diameter,
                               delta.cert.construction},
                 true);
        }
        ++produced;
      }
      if (produced < sampling.count)
        fail(errc::unsupported_parameters,
             "could not sample enough pairs at distance " + std::to_string(d));
    }
    report.levels.push_back(std::move(level));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Local property suite

struct LocalPropertyReport {
  std::int64_t shared_bset_checked = 0;       // adjacent same-layer pairs share B-sets
  std::int64_t pentagon_distance_checked = 0; // pentagons: d(v,s) != 2 for v in B(x,u)
  std::int64_t pentagon_bset_checked = 0;     // pentagons: B(x,s) = B(x,u)
  std::int64_t layer_rigidity_checked = 0;    // Omega members obey d(x,t) = i-1 + d(u,t)
  std::int64_t pentagons_found = 0;

  std::int64_t total() const {
    return shared_bset_checked + pentagon_distance_checked + pentagon_bset_checked +
           layer_rigidity_checked;
  }
};

/// Samples local configurations around a base vertex and verifies the
/// structural properties the main construction leans on. Any violation
/// is a hard failure.
inline LocalPropertyReport local_property_suite(const Graph& g, const DRGCertificate& cert,
                                             const ClosureGate& gate, Vertex x, int samples,
                                             std::uint64_t seed) {
  if (!gate.admissible())
    fail(errc::hypothesis_violated, "local_property_suite needs the full hypothesis gate");
  std::mt19937_64 rng(seed);
  const Vertex n = g.n();
  BaseVertexContext ctx(g, x);
  const DistanceRow& row_x = ctx.row_x();

  std::vector<std::vector<Vertex>> layers(static_cast<std::size_t>(row_x.eccentricity()) + 1);
  for (Vertex v = 0; v < n; ++v) layers[static_cast<std::size_t>(row_x[v])].push_back(v);

  auto pick_from = [&](const std::vector<Vertex>& pool) {
    std::uniform_int_distribution<std::size_t> d(0, pool.size() - 1);
    return pool[d(rng)];
  };

  LocalPropertyReport report;
  const int want42 = samples * 2 / 5;
  const int want_pentagon = samples * 2 / 5;  // each pentagon feeds 4.3 and 4.5
  const int want25 = samples - want42 - want_pentagon;

  // Adjacent vertices of one layer must share their B-set.
  {
    int done = 0, attempts = 0;
    while (done < want42 && attempts < want42 * 400) {
      ++attempts;
      std::uniform_int_distribution<Vertex> pick(0, n - 1);
      Vertex z = pick(rng);
      auto nb = g.neighbors(z);
      std::uniform_int_distribution<std::size_t> picknb(0, nb.size() - 1);
      Vertex zp = nb[picknb(rng)];
      if (row_x[z] != row_x[zp]) continue;
      if (ctx.b_mask(z) != ctx.b_mask(zp))
        fail(errc::certification_failed,
             "adjacent same-layer vertices " + std::to_string(z) + "," + std::to_string(zp) +
                 " have different B(x,·) sets");
      ++done;
    }
    report.shared_bset_checked = done;
  }

  // Pentagons s,t,u,z,w with s,u in Gamma_3(x), z in Gamma_2(x):
  // every v in B(x,u) must avoid distance 2 from s, and the two
  // top-layer corners must share their B-set.
  if (layers.size() > 3) {
    int done = 0, attempts = 0;
    while (done < want_pentagon && attempts < want_pentagon * 400) {
      ++attempts;
      Vertex z = pick_from(layers[2]);
      std::vector<Vertex> u_cands;
      for (Vertex u : g.neighbors(z))
        if (row_x[u] == 3) u_cands.push_back(u);
      if (u_cands.empty()) continue;
      Vertex u = pick_from(u_cands);
      std::vector<Vertex> w_cands;
      for (Vertex w : g.neighbors(z))
        if (w != u) w_cands.push_back(w);
      if (w_cands.empty()) continue;
      Vertex w = pick_from(w_cands);
      std::vector<Vertex> s_cands;
      for (Vertex s : g.neighbors(w))
        if (row_x[s] == 3 && s != u && s != z && !g.has_edge(s, u)) s_cands.push_back(s);
      if (s_cands.empty()) continue;
      Vertex s = pick_from(s_cands);
      // complete the pentagon with a common neighbor t of s and u
      Vertex t = -1;
      for (Vertex cand : g.neighbors(s))
        if (cand != z && cand != w && g.has_edge(cand, u)) {
          t = cand;
          break;
        }
      if (t < 0) continue;
      ++report.pentagons_found;

      for (Vertex v : ctx.b_set(u)) {
        // v is a neighbor of x, so its row is already in the context.
        std::size_t pos = 0;
        while (ctx.neighbors()[pos] != v) ++pos;
        if (ctx.neighbor_row(pos)[s] == 2)
          fail(errc::certification_failed,
               "pentagon " + std::to_string(s) + "," + std::to_string(t) + "," +
                   std::to_string(u) + "," + std::to_string(z) + "," + std::to_string(w) +
                   ": v=" + std::to_string(v) + " in B(x,u) lies at distance 2 from s");
      }
      ++report.pentagon_distance_checked;

      if (ctx.b_mask(s) != ctx.b_mask(u))
        fail(errc::certification_failed,
             "pentagon with s,u in Gamma_3(x): B(x,s) != B(x,u) for s=" + std::to_string(s) +
                 ", u=" + std::to_string(u));
      ++report.pentagon_bset_checked;
      ++done;
    }
  }

  // Layer rigidity: a diameter-2 closed subgraph Omega spanning layers
  // i-1..i+1 of x must satisfy d(x,t) = i-1 + d(u,t) for every member t
  // and every bottom-layer member u.
  {
    int done = 0, attempts = 0;
    while (done < want25 && attempts < want25 * 400) {
      ++attempts;
      std::uniform_int_distribution<Vertex> pick(0, n - 1);
      Vertex z = pick(rng);
      DistanceCache scratch(g);
      const DistanceRow& row_z = scratch.row(z);
      std::vector<Vertex> far;
      for (Vertex v = 0; v < n; ++v)
        if (row_z[v] == 2) far.push_back(v);
      if (far.empty()) continue;
      Vertex s = pick_from(far);
      ClosedSubgraphCertificate omega = omega_2(g, cert, gate, z, s, &scratch);

      Vertex lo = row_x[*omega.members.begin()], hi = lo;
      for (Vertex t : omega.members) {
        lo = std::min(lo, row_x[t]);
        hi = std::max(hi, row_x[t]);
      }
      if (hi != lo + 2) continue;  // hypothesis needs both end layers hit
      for (Vertex u : omega.members) {
        if (row_x[u] != lo) continue;
        const DistanceRow& row_u = scratch.row(u);
        for (Vertex t : omega.members)
          if (row_x[t] != lo + row_u[t])
            fail(errc::certification_failed,
                 "Omega(" + std::to_string(z) + "," + std::to_string(s) + ") violates layer " +
                     "rigidity at u=" + std::to_string(u) + ", t=" + std::to_string(t));
        ++report.layer_rigidity_checked;
        ++done;
      }
    }
  }
  return report;
}

}  // namespace drg
