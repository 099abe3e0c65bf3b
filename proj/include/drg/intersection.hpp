#pragma once

// Distance-regularity certification: intersection arrays, the full
// tensor p^h_ij, local neighbor sets B/C/A, and constructive witnesses
// when a graph fails to be distance-regular.
//
// Counting conventions. For vertices x,y at distance h, p^h_ij counts
// z with d(x,z)=i and d(y,z)=j. The tridiagonal slots are
// c_i = p^i_{1,i-1}, a_i = p^i_{1,i}, b_i = p^i_{1,i+1}, with b_D = 0,
// c_0 = 0, k = b_0 and k = a_i + b_i + c_i for every i.

#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "drg/core.hpp"
#include "drg/graph.hpp"

namespace drg {

class IntersectionArray {
 public:
  IntersectionArray() = default;

  /// b_seq = b_0..b_{D-1}, c_seq = c_1..c_D. Validates positivity,
  /// c_1 = 1, nonnegative a_i, and integrality of the subconstituent
  /// sizes k_i.
  IntersectionArray(std::vector<std::int64_t> b_seq, std::vector<std::int64_t> c_seq) {
    if (b_seq.empty() || b_seq.size() != c_seq.size())
      fail(errc::non_positive_entry, "array needs D >= 1 with matching b,c lengths");
    D_ = static_cast<int>(b_seq.size());
    b_.assign(D_ + 1, 0);
    c_.assign(D_ + 1, 0);
    a_.assign(D_ + 1, 0);
    ki_.assign(D_ + 1, 0);
    for (int i = 0; i < D_; ++i) b_[i] = b_seq[i];
    for (int i = 1; i <= D_; ++i) c_[i] = c_seq[i - 1];
    for (int i = 0; i < D_; ++i)
      if (b_[i] < 1) fail(errc::non_positive_entry, "b_" + std::to_string(i));
    for (int i = 1; i <= D_; ++i)
      if (c_[i] < 1) fail(errc::non_positive_entry, "c_" + std::to_string(i));
    if (c_[1] != 1) fail(errc::non_positive_entry, "c_1 must be 1");
    const std::int64_t k = b_[0];
    for (int i = 0; i <= D_; ++i) {
      a_[i] = k - b_[i] - c_[i];
      if (a_[i] < 0) fail(errc::non_positive_entry, "a_" + std::to_string(i) + " negative");
    }
    ki_[0] = 1;
    for (int i = 0; i < D_; ++i) {
      std::int64_t num = ki_[i] * b_[i];
      if (num % c_[i + 1] != 0)
        fail(errc::non_integer_entry, "k_" + std::to_string(i + 1) + " not integral");
      ki_[i + 1] = num / c_[i + 1];
    }
  }

  int D() const noexcept { return D_; }
  std::int64_t k() const noexcept { return b_[0]; }
  std::int64_t b(int i) const { return b_[i]; }
  std::int64_t c(int i) const { return c_[i]; }
  std::int64_t a(int i) const { return a_[i]; }
  std::int64_t ki(int i) const { return ki_[i]; }

  std::int64_t vertex_count() const {
    std::int64_t n = 0;
    for (auto v : ki_) n += v;
    return n;
  }

  std::vector<std::int64_t> b_seq() const { return {b_.begin(), b_.end() - 1}; }
  std::vector<std::int64_t> c_seq() const { return {c_.begin() + 1, c_.end()}; }

  std::string to_string() const {
    std::string s = "{";
    for (int i = 0; i < D_; ++i) s += (i ? "," : "") + std::to_string(b_[i]);
    s += ";";
    for (int i = 1; i <= D_; ++i) s += (i > 1 ? "," : "") + std::to_string(c_[i]);
    return s + "}";
  }

  bool operator==(const IntersectionArray&) const = default;

 private:
  int D_ = 0;
  std::vector<std::int64_t> b_, c_, a_, ki_;
};

/// Full (D+1)^3 tensor p^h_ij derived from the array by the three-term
/// recurrence on the intersection matrices L_j: L_0 = I, L_1 is the
/// tridiagonal array matrix, and
///   L_{j+1} = (L_1 L_j - a_j L_j - b_{j-1} L_{j-1}) / c_{j+1}.
/// Entries are exact integers; non-divisibility means the array is
/// internally inconsistent.
inline std::vector<std::int64_t> tensor_from_recurrence(const IntersectionArray& arr) {
  const int m = arr.D() + 1;
  auto at = [m](std::vector<std::int64_t>& mat, int r, int c) -> std::int64_t& {
    return mat[static_cast<std::size_t>(r) * m + c];
  };
  std::vector<std::vector<std::int64_t>> L(m, std::vector<std::int64_t>(m * m, 0));
  for (int h = 0; h < m; ++h) at(L[0], h, h) = 1;
  if (arr.D() >= 1) {
    // (L_1)_{h,i} = p^h_{1,i}: row h carries (c_h, a_h, b_h).
    for (int h = 0; h < m; ++h) {
      if (h > 0) at(L[1], h, h - 1) = arr.c(h);
      at(L[1], h, h) = arr.a(h);
      if (h < arr.D()) at(L[1], h, h + 1) = arr.b(h);
    }
  }
  for (int j = 1; j < arr.D(); ++j) {
    std::vector<std::int64_t> next(m * m, 0);
    for (int r = 0; r < m; ++r)
      for (int t = 0; t < m; ++t) {
        std::int64_t dot = 0;
        for (int s = 0; s < m; ++s) dot += at(L[1], r, s) * at(L[j], s, t);
        dot -= arr.a(j) * at(L[j], r, t);
        if (j >= 1) dot -= arr.b(j - 1) * at(L[j - 1], r, t);
        if (dot % arr.c(j + 1) != 0)
          fail(errc::non_integer_entry, "tensor recurrence not integral at j=" + std::to_string(j));
        next[static_cast<std::size_t>(r) * m + t] = dot / arr.c(j + 1);
      }
    L[j + 1] = std::move(next);
  }
  // p^h_ij = (L_j)_{h,i}
  std::vector<std::int64_t> tensor(static_cast<std::size_t>(m) * m * m, 0);
  for (int h = 0; h < m; ++h)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        tensor[(static_cast<std::size_t>(h) * m + i) * m + j] = at(L[j], h, i);
  return tensor;
}

struct NonDRGWitness {
  enum class Kind { disconnected, not_regular, count_mismatch };
  Kind kind = Kind::count_mismatch;

  // disconnected: unreachable = a vertex not reached from component_root.
  Vertex component_root = 0;
  Vertex unreachable = 0;

  // not_regular: two vertices with differing degrees.
  Vertex deg_u = 0, deg_v = 0;
  std::int64_t degree_u = 0, degree_v = 0;

  // count_mismatch: two pairs at distance h whose (i,j) counts differ.
  int h = 0, i = 0, j = 0;
  std::pair<Vertex, Vertex> pair1{0, 0}, pair2{0, 0};
  std::int64_t count1 = 0, count2 = 0;

  std::string describe() const {
    switch (kind) {
      case Kind::disconnected:
        return "vertex " + std::to_string(unreachable) + " unreachable from " +
               std::to_string(component_root);
      case Kind::not_regular:
        return "deg(" + std::to_string(deg_u) + ")=" + std::to_string(degree_u) + " but deg(" +
               std::to_string(deg_v) + ")=" + std::to_string(degree_v);
      case Kind::count_mismatch:
        return "p^" + std::to_string(h) + "_{" + std::to_string(i) + "," + std::to_string(j) +
               "} is " + std::to_string(count1) + " at (" + std::to_string(pair1.first) + "," +
               std::to_string(pair1.second) + ") but " + std::to_string(count2) + " at (" +
               std::to_string(pair2.first) + "," + std::to_string(pair2.second) + ")";
    }
    return {};
  }
};

struct DRGCertificate {
  enum class Verification {
    full_tensor,       // every p^h_ij counted over all pairs
    array_all_pairs,   // b,c,a constancy over all pairs; tensor by recurrence
    array_sampled,     // b,c,a constancy over sampled sources; tensor by recurrence
  };

  IntersectionArray array;
  std::vector<std::int64_t> tensor;  // (D+1)^3, p(h,i,j)
  Verification mode = Verification::full_tensor;
  bool verified = false;
  int sampled_sources = 0;
  std::uint64_t sample_seed = 0;

  std::int64_t p(int h, int i, int j) const {
    const int m = array.D() + 1;
    if (h < 0 || i < 0 || j < 0 || h > array.D() || i > array.D() || j > array.D()) return 0;
    return tensor[(static_cast<std::size_t>(h) * m + i) * m + j];
  }
};

using CertifyOutcome = std::variant<DRGCertificate, NonDRGWitness>;

struct CertifyOptions {
  // Above this order the full tensor is not counted pairwise; the array
  // is verified over all pairs and the tensor comes from the recurrence.
  Vertex full_tensor_limit = 2000;
  // When set, only this many random sources are checked (spot mode).
  std::optional<int> sample_sources;
  std::uint64_t seed = 0;
};

namespace detail {

/// Per-source b/c/a constancy check. Updates the slot tables, records
/// exemplar pairs, and reports the first conflicting pair.
class ArrayAccumulator {
 public:
  explicit ArrayAccumulator(std::int64_t k) : k_(k) {}

  bool absorb(const Graph& g, const DistanceRow& row, Vertex x, NonDRGWitness& witness) {
    const Vertex n = g.n();
    for (Vertex y = 0; y < n; ++y) {
      Vertex d = row[y];
      if (d <= 0) continue;
      std::int64_t nb = 0, nc = 0, na = 0;
      for (Vertex w : g.neighbors(y)) {
        Vertex dw = row[w];
        if (dw == d - 1) ++nc;
        else if (dw == d) ++na;
        else ++nb;
      }
      if (!check_slot(c_, d, nc, x, y, -1, witness)) return false;
      if (!check_slot(a_, d, na, x, y, 0, witness)) return false;
      if (!check_slot(b_, d, nb, x, y, +1, witness)) return false;
    }
    return true;
  }

  int max_distance() const { return static_cast<int>(c_.size()) - 1; }

  IntersectionArray to_array() const {
    int D = max_distance();
    if (D == 0) fail(errc::unsupported_parameters, "diameter-0 graph");
    std::vector<std::int64_t> b_seq(D), c_seq(D);
    b_seq[0] = k_;
    for (int i = 1; i < D; ++i) b_seq[i] = b_[i].value;
    for (int i = 1; i <= D; ++i) c_seq[i - 1] = c_[i].value;
    return IntersectionArray(std::move(b_seq), std::move(c_seq));
  }

 private:
  struct Slot {
    std::int64_t value = -1;
    std::pair<Vertex, Vertex> exemplar{0, 0};
  };

  bool check_slot(std::vector<Slot>& table, Vertex d, std::int64_t count, Vertex x, Vertex y,
                  int offset, NonDRGWitness& witness) {
    if (static_cast<std::size_t>(d) >= table.size()) {
      c_.resize(d + 1);
      a_.resize(d + 1);
      b_.resize(d + 1);
    }
    Slot& slot = table[d];
    if (slot.value < 0) {
      slot.value = count;
      slot.exemplar = {x, y};
      return true;
    }
    if (slot.value != count) {
      witness.kind = NonDRGWitness::Kind::count_mismatch;
      witness.h = d;
      witness.i = 1;
      witness.j = d + offset;
      witness.pair1 = slot.exemplar;
      witness.count1 = slot.value;
      witness.pair2 = {x, y};
      witness.count2 = count;
      return false;
    }
    return true;
  }

  std::int64_t k_;
  std::vector<Slot> b_{1}, c_{1}, a_{1};
};

}  // namespace detail

/// Decides distance-regularity. Success yields the intersection array
/// plus the full tensor (counted pairwise up to full_tensor_limit
/// vertices, otherwise derived by the recurrence after an all-pairs or
/// sampled array check). Failure yields the first witness found under
/// deterministic vertex order.
inline CertifyOutcome certify_distance_regular(const Graph& g, const CertifyOptions& opts = {}) {
  const Vertex n = g.n();
  if (n == 0) fail(errc::empty_subset, "certify on empty graph");

  {
    DistanceRow row0 = bfs_distances(g, 0);
    for (Vertex v = 0; v < n; ++v)
      if (row0[v] == kUnreachable) {
        NonDRGWitness w;
        w.kind = NonDRGWitness::Kind::disconnected;
        w.component_root = 0;
        w.unreachable = v;
        return w;
      }
  }
  const std::int64_t k = g.degree(0);
  for (Vertex v = 1; v < n; ++v)
    if (g.degree(v) != k) {
      NonDRGWitness w;
      w.kind = NonDRGWitness::Kind::not_regular;
      w.deg_u = 0;
      w.degree_u = k;
      w.deg_v = v;
      w.degree_v = g.degree(v);
      return w;
    }

  if (opts.sample_sources) {
    // Spot mode: b/c/a constancy on rows from sampled sources only.
    std::mt19937_64 rng(opts.seed);
    int want = std::min<int>(*opts.sample_sources, n);
    std::vector<Vertex> sources(n);
    for (Vertex v = 0; v < n; ++v) sources[v] = v;
    for (int i = 0; i < want; ++i) {
      std::uniform_int_distribution<Vertex> pick(i, n - 1);
      std::swap(sources[i], sources[pick(rng)]);
    }
    detail::ArrayAccumulator acc(k);
    NonDRGWitness witness;
    for (int i = 0; i < want; ++i) {
      DistanceRow row = bfs_distances(g, sources[i]);
      if (!acc.absorb(g, row, sources[i], witness)) return witness;
    }
    DRGCertificate cert;
    cert.array = acc.to_array();
    cert.tensor = tensor_from_recurrence(cert.array);
    cert.mode = DRGCertificate::Verification::array_sampled;
    cert.verified = true;
    cert.sampled_sources = want;
    cert.sample_seed = opts.seed;
    return cert;
  }

  if (n > opts.full_tensor_limit) {
    detail::ArrayAccumulator acc(k);
    NonDRGWitness witness;
    for (Vertex x = 0; x < n; ++x) {
      DistanceRow row = bfs_distances(g, x);
      if (!acc.absorb(g, row, x, witness)) return witness;
    }
    DRGCertificate cert;
    cert.array = acc.to_array();
    cert.tensor = tensor_from_recurrence(cert.array);
    cert.mode = DRGCertificate::Verification::array_all_pairs;
    cert.verified = true;
    return cert;
  }

  // Full mode: count every p^h_ij over every unordered pair via
  // per-layer bitsets. The (y,x) direction carries the transposed count
  // matrix, so unordered pairs cover all ordered ones.
  std::vector<DistanceRow> rows;
  rows.reserve(n);
  int D = 0;
  for (Vertex x = 0; x < n; ++x) {
    rows.push_back(bfs_distances(g, x));
    D = std::max<int>(D, rows.back().eccentricity());
  }
  if (D == 0) fail(errc::unsupported_parameters, "diameter-0 graph");
  const int m = D + 1;
  const std::size_t words = (static_cast<std::size_t>(n) + 63) / 64;
  std::vector<std::uint64_t> layers(static_cast<std::size_t>(n) * m * words, 0);
  auto layer = [&](Vertex x, int i) {
    return layers.data() + (static_cast<std::size_t>(x) * m + i) * words;
  };
  for (Vertex x = 0; x < n; ++x)
    for (Vertex v = 0; v < n; ++v) {
      Vertex d = rows[x][v];
      layer(x, d)[static_cast<std::size_t>(v) / 64] |= 1ull << (v % 64);
    }

  std::vector<std::int64_t> tensor(static_cast<std::size_t>(m) * m * m, -1);
  std::vector<std::pair<Vertex, Vertex>> exemplar(m, {-1, -1});
  auto order = [&](int h, int i, int j) -> std::int64_t& {
    return tensor[(static_cast<std::size_t>(h) * m + i) * m + j];
  };

  std::vector<std::int64_t> counts(static_cast<std::size_t>(m) * m, 0);
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = x; y < n; ++y) {
      const int h = rows[x][y];
      for (int i = 0; i < m; ++i) {
        const std::uint64_t* li = layer(x, i);
        for (int j = 0; j < m; ++j) {
          const std::uint64_t* lj = layer(y, j);
          std::int64_t cnt = 0;
          for (std::size_t w = 0; w < words; ++w) cnt += std::popcount(li[w] & lj[w]);
          counts[static_cast<std::size_t>(i) * m + j] = cnt;
        }
      }
      if (exemplar[h].first < 0) {
        exemplar[h] = {x, y};
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j) order(h, i, j) = counts[static_cast<std::size_t>(i) * m + j];
      } else {
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j)
            if (order(h, i, j) != counts[static_cast<std::size_t>(i) * m + j]) {
              NonDRGWitness w;
              w.kind = NonDRGWitness::Kind::count_mismatch;
              w.h = h;
              w.i = i;
              w.j = j;
              w.pair1 = exemplar[h];
              w.count1 = order(h, i, j);
              w.pair2 = {x, y};
              w.count2 = counts[static_cast<std::size_t>(i) * m + j];
              return w;
            }
      }
    }
  }

  std::vector<std::int64_t> b_seq(D), c_seq(D);
  for (int i = 0; i < D; ++i) b_seq[i] = order(i, 1, i + 1);
  for (int i = 1; i <= D; ++i) c_seq[i - 1] = order(i, 1, i - 1);
  DRGCertificate cert;
  cert.array = IntersectionArray(std::move(b_seq), std::move(c_seq));
  cert.tensor = tensor;
  cert.mode = DRGCertificate::Verification::full_tensor;
  cert.verified = true;
  return cert;
}

/// The certified tensor, cross-checked against the array's three-term
/// slots before being handed out.
inline const std::vector<std::int64_t>& intersection_tensor(const DRGCertificate& cert) {
  if (!cert.verified) fail(errc::certification_failed, "certificate not verified");
  const auto& arr = cert.array;
  for (int h = 1; h <= arr.D(); ++h) {
    if (cert.p(h, 1, h - 1) != arr.c(h) || cert.p(h, 1, h) != arr.a(h) ||
        cert.p(h, 1, h + 1) != arr.b(h))
      fail(errc::oracle_mismatch, "tensor disagrees with array slots at h=" + std::to_string(h));
  }
  return cert.tensor;
}

struct LocalSets {
  VertexSubset B, C, A;
};

/// B(x,y), C(x,y), A(x,y) from a distance row rooted at y: the neighbors
/// of x one step further, one step closer, and at the same distance
/// from y. They partition Gamma_1(x).
inline LocalSets local_sets(const Graph& g, const DistanceRow& drow_y, Vertex x) {
  Vertex i = drow_y[x];
  std::vector<Vertex> b, c, a;
  for (Vertex w : g.neighbors(x)) {
    Vertex dw = drow_y[w];
    if (dw == i + 1) b.push_back(w);
    else if (dw == i - 1) c.push_back(w);
    else if (dw == i) a.push_back(w);
  }
  return {VertexSubset(std::move(b)), VertexSubset(std::move(c)), VertexSubset(std::move(a))};
}

struct GateReport {
  bool d_ge_3 = false;
  bool a1_zero = false;
  bool a2_nonzero = false;

  bool admissible() const { return d_ge_3 && a1_zero && a2_nonzero; }
};

/// The main construction's hypotheses: D >= 3, a_1 = 0, a_2 != 0.
inline GateReport hypothesis_gate(const DRGCertificate& cert) {
  if (!cert.verified) fail(errc::certification_failed, "certificate not verified");
  GateReport r;
  r.d_ge_3 = cert.array.D() >= 3;
  r.a1_zero = cert.array.D() >= 1 && cert.array.a(1) == 0;
  r.a2_nonzero = cert.array.D() >= 2 && cert.array.a(2) != 0;
  return r;
}

}  // namespace drg
