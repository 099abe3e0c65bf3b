#pragma once

// Deterministic generators for the test corpus: hypercubes, Hamming and
// Johnson graphs, cycles, Petersen, and the Hermitian forms graphs
// Her(d,r) on d x d Hermitian matrices over GF(r^2), adjacent when the
// difference has rank 1. Vertex order is lexicographic on labels, so
// repeated runs produce identical graphs.

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "drg/core.hpp"
#include "drg/gf.hpp"
#include "drg/graph.hpp"

namespace drg {

struct FamilyMetadata {
  std::string family;            // canonical spec, e.g. "hermitian:3,2"
  Vertex n = 0;
  // Expected intersection array where the family has a known one:
  // b[0..D-1] and c[1..D] (c stored from index 1).
  std::optional<std::vector<std::int64_t>> expected_b;
  std::optional<std::vector<std::int64_t>> expected_c;
  // Expected classical parameters (D, b, alpha, beta) where known.
  // Asserted through the independent fit pipeline, never trusted.
  std::optional<std::array<double, 4>> expected_classical;
};

struct GeneratedGraph {
  Graph graph;
  FamilyMetadata meta;
};

namespace detail {

inline void check_size(std::int64_t n) {
  if (n <= 0 || n > 100'000)
    fail(errc::unsupported_parameters, "family size " + std::to_string(n) + " out of range");
}

}  // namespace detail

/// Hamming graph H(D,q): words of length D over q symbols, adjacent at
/// Hamming distance 1. Intersection array b_i=(D-i)(q-1), c_i=i.
inline GeneratedGraph make_hamming(int D, int q) {
  if (D < 1 || q < 2) fail(errc::unsupported_parameters, "hamming needs D >= 1, q >= 2");
  std::int64_t n = 1;
  for (int i = 0; i < D; ++i) {
    n *= q;
    detail::check_size(n);
  }
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::int64_t v = 0; v < n; ++v) {
    std::int64_t place = 1;
    for (int pos = 0; pos < D; ++pos) {
      int digit = static_cast<int>((v / place) % q);
      for (int other = digit + 1; other < q; ++other) {
        std::int64_t w = v + static_cast<std::int64_t>(other - digit) * place;
        edges.emplace_back(static_cast<Vertex>(v), static_cast<Vertex>(w));
      }
      place *= q;
    }
  }
  GeneratedGraph out{Graph::from_edges(static_cast<Vertex>(n), std::move(edges)), {}};
  out.meta.family = "hamming:" + std::to_string(D) + "," + std::to_string(q);
  out.meta.n = static_cast<Vertex>(n);
  std::vector<std::int64_t> b(D + 1, 0), c(D + 1, 0);
  for (int i = 0; i < D; ++i) b[i] = static_cast<std::int64_t>(D - i) * (q - 1);
  for (int i = 1; i <= D; ++i) c[i] = i;
  out.meta.expected_b = b;
  out.meta.expected_c = c;
  return out;
}

inline GeneratedGraph make_hypercube(int D) {
  GeneratedGraph out = make_hamming(D, 2);
  out.meta.family = "hypercube:" + std::to_string(D);
  return out;
}

/// Johnson graph J(n,k): k-subsets of an n-set, adjacent when the
/// intersection has size k-1. Requires k <= n/2 (the other side is an
/// isomorphic relabeling). b_i=(k-i)(n-k-i), c_i=i^2.
inline GeneratedGraph make_johnson(int n, int k) {
  if (n < 2 || k < 1 || 2 * k > n || n > 62)
    fail(errc::unsupported_parameters, "johnson needs 1 <= k <= n/2, n <= 62");
  std::vector<std::uint64_t> masks;
  // k-subsets in lexicographic order of their sorted element lists.
  std::vector<int> pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    std::uint64_t m = 0;
    for (int e : pick) m |= (1ull << e);
    masks.push_back(m);
    int pos = k - 1;
    while (pos >= 0 && pick[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++pick[pos];
    for (int i = pos + 1; i < k; ++i) pick[i] = pick[i - 1] + 1;
  }
  detail::check_size(static_cast<std::int64_t>(masks.size()));
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t i = 0; i < masks.size(); ++i)
    for (std::size_t j = i + 1; j < masks.size(); ++j)
      if (std::popcount(masks[i] & masks[j]) == k - 1)
        edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
  GeneratedGraph out{Graph::from_edges(static_cast<Vertex>(masks.size()), std::move(edges)), {}};
  out.meta.family = "johnson:" + std::to_string(n) + "," + std::to_string(k);
  out.meta.n = static_cast<Vertex>(masks.size());
  int D = k;
  std::vector<std::int64_t> b(D + 1, 0), c(D + 1, 0);
  for (int i = 0; i < D; ++i) b[i] = static_cast<std::int64_t>(k - i) * (n - k - i);
  for (int i = 1; i <= D; ++i) c[i] = static_cast<std::int64_t>(i) * i;
  out.meta.expected_b = b;
  out.meta.expected_c = c;
  return out;
}

inline GeneratedGraph make_cycle(int n) {
  if (n < 3) fail(errc::unsupported_parameters, "cycle needs n >= 3");
  detail::check_size(n);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  GeneratedGraph out{Graph::from_edges(n, std::move(edges)), {}};
  out.meta.family = "cycle:" + std::to_string(n);
  out.meta.n = n;
  int D = n / 2;
  std::vector<std::int64_t> b(D + 1, 0), c(D + 1, 0);
  b[0] = 2;
  for (int i = 1; i < D; ++i) b[i] = 1;
  for (int i = 1; i < D; ++i) c[i] = 1;
  c[D] = (n % 2 == 0) ? 2 : 1;
  out.meta.expected_b = b;
  out.meta.expected_c = c;
  return out;
}

/// Petersen graph as Kneser(5,2): 2-subsets of a 5-set, adjacent when
/// disjoint.
inline GeneratedGraph make_petersen() {
  std::vector<std::uint64_t> masks;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) masks.push_back((1u << i) | (1u << j));
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t i = 0; i < masks.size(); ++i)
    for (std::size_t j = i + 1; j < masks.size(); ++j)
      if ((masks[i] & masks[j]) == 0) edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
  GeneratedGraph out{Graph::from_edges(10, std::move(edges)), {}};
  out.meta.family = "petersen";
  out.meta.n = 10;
  out.meta.expected_b = std::vector<std::int64_t>{3, 2, 0};
  out.meta.expected_c = std::vector<std::int64_t>{0, 1, 1};
  return out;
}

namespace detail {

/// Vertex labeling for Her(d,r): mixed-radix index with the d diagonal
/// digits (subfield elements, base r) most significant, then the
/// d(d-1)/2 upper-triangle entries (base r^2) in row-major order.
class HermitianCoder {
 public:
  HermitianCoder(const gf::FieldTable& f, int d) : f_(&f), d_(d) {}

  std::int64_t count() const {
    std::int64_t n = 1;
    for (int i = 0; i < d_; ++i) n *= f_->r();
    for (int i = 0; i < d_ * (d_ - 1) / 2; ++i) n *= f_->q();
    return n;
  }

  gf::Matrix decode(std::int64_t index) const {
    gf::Matrix m(d_, d_);
    // Peel digits from the least significant end: upper entries first
    // (reverse row-major), then diagonal entries (reverse order).
    for (int i = d_ - 1; i >= 0; --i)
      for (int j = d_ - 1; j > i; --j) {
        m.at(i, j) = static_cast<gf::Elem>(index % f_->q());
        index /= f_->q();
      }
    for (int i = d_ - 1; i >= 0; --i) {
      m.at(i, i) = static_cast<gf::Elem>(index % f_->r());
      index /= f_->r();
    }
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < i; ++j) m.at(i, j) = f_->conj(m.at(j, i));
    return m;
  }

  std::int64_t encode(const gf::Matrix& m) const {
    std::int64_t index = 0;
    for (int i = 0; i < d_; ++i) index = index * f_->r() + m.at(i, i);
    for (int i = 0; i < d_; ++i)
      for (int j = i + 1; j < d_; ++j) index = index * f_->q() + m.at(i, j);
    return index;
  }

 private:
  const gf::FieldTable* f_;
  int d_;
};

/// All rank-1 Hermitian d x d matrices: alpha * v * conj(v)^t with v
/// normalized projectively (first nonzero coordinate 1) and alpha
/// ranging over the nonzero subfield elements.
inline std::vector<gf::Matrix> rank_one_hermitian(const gf::FieldTable& f, int d) {
  std::vector<gf::Matrix> out;
  std::vector<gf::Elem> v(d, 0);
  // Enumerate projective representatives: leading coordinate index p
  // with v[p] = 1 and free coordinates after it.
  for (int p = 0; p < d; ++p) {
    std::vector<gf::Elem> tail(d - p - 1, 0);
    while (true) {
      std::fill(v.begin(), v.end(), 0);
      v[p] = 1;
      for (int i = 0; i < d - p - 1; ++i) v[p + 1 + i] = tail[i];
      for (gf::Elem alpha = 1; alpha < f.r(); ++alpha) {
        gf::Matrix m(d, d);
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j)
            m.at(i, j) = f.mul(alpha, f.mul(v[i], f.conj(v[j])));
        out.push_back(std::move(m));
      }
      int pos = d - p - 2;
      while (pos >= 0 && tail[pos] == f.q() - 1) {
        tail[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++tail[pos];
    }
  }
  return out;
}

}  // namespace detail

/// Hermitian forms graph Her(d,r) over GF(r^2). Adjacency is computed by
/// translating each vertex by the rank-1 Hermitian matrices, which is
/// equivalent to the pairwise test rank(A - B) = 1.
inline GeneratedGraph make_hermitian(int d, int r) {
  if ((r != 2 && r != 3) || d < 2 || d > 4)
    fail(errc::unsupported_parameters, "hermitian supports d in {2,3,4}, r in {2,3}");
  gf::FieldTable f(r);
  detail::HermitianCoder coder(f, d);
  std::int64_t n = coder.count();
  detail::check_size(n);
  std::vector<gf::Matrix> steps = detail::rank_one_hermitian(f, d);

  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(static_cast<std::size_t>(n) * steps.size() / 2);
  gf::Matrix sum(d, d);
  for (std::int64_t v = 0; v < n; ++v) {
    gf::Matrix a = coder.decode(v);
    for (const gf::Matrix& step : steps) {
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) sum.at(i, j) = f.add(a.at(i, j), step.at(i, j));
      std::int64_t w = coder.encode(sum);
      if (v < w) edges.emplace_back(static_cast<Vertex>(v), static_cast<Vertex>(w));
    }
  }
  GeneratedGraph out{Graph::from_edges(static_cast<Vertex>(n), std::move(edges)), {}};
  out.meta.family = "hermitian:" + std::to_string(d) + "," + std::to_string(r);
  out.meta.n = static_cast<Vertex>(n);
  double bq = -static_cast<double>(r);
  double beta = -(std::pow(bq, d) + 1.0);
  out.meta.expected_classical = std::array<double, 4>{
      static_cast<double>(d), bq, -static_cast<double>(r) - 1.0, beta};
  return out;
}

/// Pairwise-rank adjacency for Her(d,r); the O(V^2 d^3) route used to
/// cross-check the translation construction.
inline bool hermitian_adjacent_by_rank(const gf::FieldTable& f, const gf::Matrix& a,
                                       const gf::Matrix& b) {
  gf::Matrix diff(a.rows, a.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) diff.at(i, j) = f.sub(a.at(i, j), b.at(i, j));
  return gf::matrix_rank(f, diff) == 1;
}

/// Parses a family spec "name" or "name:p1,p2" and generates the graph.
inline GeneratedGraph gen_family(const std::string& spec) {
  std::string name = spec;
  std::vector<std::int64_t> params;
  if (auto colon = spec.find(':'); colon != std::string::npos) {
    name = spec.substr(0, colon);
    std::string rest = spec.substr(colon + 1);
    std::istringstream iss(rest);
    std::string tok;
    while (std::getline(iss, tok, ',')) {
      try {
        std::size_t used = 0;
        params.push_back(std::stoll(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::logic_error&) {
        fail(errc::unsupported_parameters, "bad family parameter '" + tok + "'");
      }
    }
  }
  auto want = [&](std::size_t count) {
    if (params.size() != count)
      fail(errc::unsupported_parameters,
           "family '" + name + "' expects " + std::to_string(count) + " parameter(s)");
  };
  if (name == "petersen") {
    want(0);
    return make_petersen();
  }
  if (name == "hypercube") {
    want(1);
    return make_hypercube(static_cast<int>(params[0]));
  }
  if (name == "hamming") {
    want(2);
    return make_hamming(static_cast<int>(params[0]), static_cast<int>(params[1]));
  }
  if (name == "johnson") {
    want(2);
    return make_johnson(static_cast<int>(params[0]), static_cast<int>(params[1]));
  }
  if (name == "cycle") {
    want(1);
    return make_cycle(static_cast<int>(params[0]));
  }
  if (name == "hermitian") {
    want(2);
    return make_hermitian(static_cast<int>(params[0]), static_cast<int>(params[1]));
  }
  fail(errc::unsupported_parameters, "unknown family '" + name + "'");
}

}  // namespace drg
