#pragma once

// Bose-Mesner spectral data. Two routes are kept deliberately separate:
// a fast path that works entirely from the intersection array (tridiagonal
// eigenvalues, standard-sequence multiplicities, eigenmatrix algebra for
// the Krein parameters), and a dense oracle that realizes the defining
// identities verbatim on the adjacency matrix for graphs small enough to
// hold as matrices. Consumers cross-check one against the other.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "drg/core.hpp"
#include "drg/graph.hpp"
#include "drg/intersection.hpp"

namespace drg {

struct Tolerances {
  double residual_abs = 1e-9;   // absolute, matrix residuals
  double zero_rel = 1e-6;       // relative, "is this Krein parameter zero"
  double eigen_gap_rel = 1e-7;  // relative, eigenvalue separation
  double mult_int_rel = 1e-6;   // relative, multiplicity near-integer check
};

/// Eigenvalues theta_0 > ... > theta_D of the graph, their
/// multiplicities, and the eigenmatrices. Row l of P holds the
/// eigenvalues of A_0..A_D on eigenspace l; P Q = n I.
struct SpectralData {
  std::int64_t n = 0;
  std::vector<double> theta;
  std::vector<std::int64_t> mult;
  Eigen::MatrixXd P, Q;

  int D() const { return static_cast<int>(theta.size()) - 1; }
};

/// Spectral data from the intersection array alone. Eigenvalues come
/// from the symmetrized tridiagonal intersection matrix; multiplicities
/// from the standard sequences u_j(theta):
///   m = n / sum_j k_j u_j(theta)^2,  u_0 = 1, u_1 = theta/k,
///   theta u_j = c_j u_{j-1} + a_j u_j + b_j u_{j+1}.
inline SpectralData eigen_from_array(const IntersectionArray& arr, std::int64_t n,
                                     const Tolerances& tol = {}) {
  const int D = arr.D();
  const int m = D + 1;
  if (n != arr.vertex_count())
    fail(errc::unsupported_parameters,
         "n=" + std::to_string(n) + " but array implies " + std::to_string(arr.vertex_count()));

  // Similarity scaling d_{i+1}/d_i = sqrt(b_i / c_{i+1}) turns the
  // tridiagonal intersection matrix into a symmetric one with the same
  // spectrum: off-diagonals sqrt(b_i c_{i+1}).
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    T(i, i) = static_cast<double>(arr.a(i));
    if (i < D) {
      double off = std::sqrt(static_cast<double>(arr.b(i)) * static_cast<double>(arr.c(i + 1)));
      T(i, i + 1) = off;
      T(i + 1, i) = off;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(T);
  if (solver.info() != Eigen::Success) fail(errc::eigen_failure, "tridiagonal eigensolve failed");

  SpectralData out;
  out.n = n;
  out.theta.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + m);
  std::sort(out.theta.begin(), out.theta.end(), std::greater<>());

  const double scale = std::max(1.0, std::abs(out.theta.front()));
  for (int l = 0; l + 1 < m; ++l)
    if (out.theta[l] - out.theta[l + 1] <= tol.eigen_gap_rel * scale)
      fail(errc::eigen_failure, "repeated eigenvalue near " + std::to_string(out.theta[l]));

  out.P.resize(m, m);
  out.mult.resize(m);
  const double k = static_cast<double>(arr.k());
  for (int l = 0; l < m; ++l) {
    const double th = out.theta[l];
    std::vector<double> u(m, 0.0);
    u[0] = 1.0;
    if (D >= 1) u[1] = th / k;
    for (int j = 1; j < D; ++j)
      u[j + 1] = ((th - arr.a(j)) * u[j] - arr.c(j) * u[j - 1]) / static_cast<double>(arr.b(j));
    double denom = 0.0;
    for (int j = 0; j < m; ++j) {
      out.P(l, j) = static_cast<double>(arr.ki(j)) * u[j];
      denom += static_cast<double>(arr.ki(j)) * u[j] * u[j];
    }
    double mult = static_cast<double>(n) / denom;
    double rounded = std::round(mult);
    if (std::abs(mult - rounded) > tol.mult_int_rel * std::max(1.0, std::abs(mult)) ||
        rounded < 1.0)
      fail(errc::non_integer_multiplicity,
           "m(theta=" + std::to_string(th) + ") = " + std::to_string(mult));
    out.mult[l] = static_cast<std::int64_t>(rounded);
  }
  if (std::accumulate(out.mult.begin(), out.mult.end(), std::int64_t{0}) != n)
    fail(errc::non_integer_multiplicity, "multiplicities do not sum to n");

  // Q_{j,l} = m_l P_{l,j} / k_j; P Q = n I within tolerance.
  out.Q.resize(m, m);
  for (int j = 0; j < m; ++j)
    for (int l = 0; l < m; ++l)
      out.Q(j, l) = static_cast<double>(out.mult[l]) * out.P(l, j) / static_cast<double>(arr.ki(j));
  double pq_scale = std::max(1.0, out.P.cwiseAbs().maxCoeff() * out.Q.cwiseAbs().maxCoeff() * m /
                                      static_cast<double>(n));
  Eigen::MatrixXd resid =
      out.P * out.Q / static_cast<double>(n) - Eigen::MatrixXd::Identity(m, m);
  if (resid.cwiseAbs().maxCoeff() > 100 * tol.residual_abs * pq_scale)
    fail(errc::eigen_failure, "P*Q != n*I");
  return out;
}

/// Dense primitive idempotents E_0..E_D by spectral projection: the
/// adjacency matrix is eigendecomposed and eigenvectors are grouped by
/// nearest theta. Independent of the array route on purpose.
inline std::vector<Eigen::MatrixXd> primitive_idempotents_dense(const Graph& g,
                                                                const SpectralData& spec,
                                                                Vertex dense_limit = 2048) {
  const Vertex n = g.n();
  if (n > dense_limit)
    fail(errc::dense_limit_exceeded,
         "n=" + std::to_string(n) + " over dense limit " + std::to_string(dense_limit));
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w : g.neighbors(v)) A(v, w) = 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(A);
  if (solver.info() != Eigen::Success) fail(errc::eigen_failure, "adjacency eigensolve failed");

  const int m = spec.D() + 1;
  std::vector<Eigen::MatrixXd> E(m, Eigen::MatrixXd::Zero(n, n));
  std::vector<std::int64_t> found(m, 0);
  for (Vertex col = 0; col < n; ++col) {
    double lambda = solver.eigenvalues()(col);
    int best = 0;
    for (int l = 1; l < m; ++l)
      if (std::abs(spec.theta[l] - lambda) < std::abs(spec.theta[best] - lambda)) best = l;
    Eigen::VectorXd v = solver.eigenvectors().col(col);
    E[best].noalias() += v * v.transpose();
    ++found[best];
  }
  for (int l = 0; l < m; ++l)
    if (found[l] != spec.mult[l])
      fail(errc::oracle_mismatch, "eigenspace " + std::to_string(l) + " has dimension " +
                                      std::to_string(found[l]) + ", expected " +
                                      std::to_string(spec.mult[l]));
  return E;
}

/// Max-norm residuals of the defining idempotent identities:
/// E_i^2 = E_i, E_i E_j = 0, sum E_i = I, E_i symmetric, E_0 = J/n.
struct IdempotentResiduals {
  double idempotency = 0;
  double orthogonality = 0;
  double completeness = 0;
  double symmetry = 0;
  double trivial = 0;

  double worst() const {
    return std::max({idempotency, orthogonality, completeness, symmetry, trivial});
  }
};

inline IdempotentResiduals idempotent_identity_residuals(const std::vector<Eigen::MatrixXd>& E) {
  IdempotentResiduals r;
  const Eigen::Index n = E.front().rows();
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < E.size(); ++i) {
    sum += E[i];
    r.idempotency = std::max(r.idempotency, (E[i] * E[i] - E[i]).cwiseAbs().maxCoeff());
    r.symmetry = std::max(r.symmetry, (E[i] - E[i].transpose()).cwiseAbs().maxCoeff());
    for (std::size_t j = i + 1; j < E.size(); ++j)
      r.orthogonality = std::max(r.orthogonality, (E[i] * E[j]).cwiseAbs().maxCoeff());
  }
  r.completeness = (sum - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  r.trivial = (E[0].array() - 1.0 / static_cast<double>(n)).abs().maxCoeff();
  return r;
}

/// Coefficients of one idempotent in the distance-matrix basis:
/// E = n^{-1} sum_i theta*_i A_i, read from column e_index of Q.
struct DualEigenvalues {
  int e_index = 1;
  std::vector<double> theta_star;  // indexed by distance 0..D
};

inline DualEigenvalues dual_eigenvalues(const SpectralData& spec, int e_index) {
  if (e_index < 0 || e_index > spec.D())
    fail(errc::unsupported_parameters, "idempotent index out of range");
  DualEigenvalues out;
  out.e_index = e_index;
  out.theta_star.resize(spec.D() + 1);
  for (int j = 0; j <= spec.D(); ++j) out.theta_star[j] = spec.Q(j, e_index);
  return out;
}

/// Krein tensor q^h_ij under a fixed idempotent ordering. order[p] is
/// the spectral index placed at position p; order[0] must be 0.
struct KreinTensor {
  int D = 0;
  std::vector<int> order;
  std::vector<double> q;

  double at(int h, int i, int j) const {
    const int m = D + 1;
    return q[(static_cast<std::size_t>(h) * m + i) * m + j];
  }
  double& at(int h, int i, int j) {
    const int m = D + 1;
    return q[(static_cast<std::size_t>(h) * m + i) * m + j];
  }
  double max_abs() const {
    double v = 0;
    for (double x : q) v = std::max(v, std::abs(x));
    return v;
  }
  double min_value() const {
    double v = q.empty() ? 0 : q.front();
    for (double x : q) v = std::min(v, x);
    return v;
  }
};

inline std::vector<int> natural_order(int D) {
  std::vector<int> order(D + 1);
  std::iota(order.begin(), order.end(), 0);
  return order;
}

/// Fast path: q^h_ij = n^{-1} sum_l Q_{l,i} Q_{l,j} P_{h,l}, permuted
/// into the requested ordering.
inline KreinTensor krein_parameters(const SpectralData& spec, const std::vector<int>& order) {
  const int m = spec.D() + 1;
  if (static_cast<int>(order.size()) != m || order[0] != 0)
    fail(errc::unsupported_parameters, "ordering must fix E_0 and list all idempotents");
  KreinTensor kt;
  kt.D = spec.D();
  kt.order = order;
  kt.q.assign(static_cast<std::size_t>(m) * m * m, 0.0);
  for (int h = 0; h < m; ++h)
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        double sum = 0;
        for (int l = 0; l < m; ++l) sum += spec.Q(l, order[i]) * spec.Q(l, order[j]) * spec.P(order[h], l);
        sum /= static_cast<double>(spec.n);
        kt.at(h, i, j) = sum;
        kt.at(h, j, i) = sum;
      }
  return kt;
}

/// Dense oracle: expand E_i o E_j (entrywise product) in the idempotent
/// basis via q^h_ij = n tr((E_i o E_j) E_h) / m_h.
inline KreinTensor krein_dense_oracle(const std::vector<Eigen::MatrixXd>& E,
                                      const std::vector<std::int64_t>& mult,
                                      const std::vector<int>& order) {
  const int m = static_cast<int>(E.size());
  const double n = static_cast<double>(E.front().rows());
  KreinTensor kt;
  kt.D = m - 1;
  kt.order = order;
  kt.q.assign(static_cast<std::size_t>(m) * m * m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      Eigen::MatrixXd had = E[order[i]].cwiseProduct(E[order[j]]);
      for (int h = 0; h < m; ++h) {
        // E_h symmetric, so tr(had * E_h) is the entrywise dot product.
        double value = n * had.cwiseProduct(E[order[h]]).sum() / static_cast<double>(mult[order[h]]);
        kt.at(h, i, j) = value;
        kt.at(h, j, i) = value;
      }
    }
  return kt;
}

inline double krein_max_difference(const KreinTensor& a, const KreinTensor& b) {
  double worst = 0;
  for (std::size_t idx = 0; idx < a.q.size(); ++idx)
    worst = std::max(worst, std::abs(a.q[idx] - b.q[idx]));
  return worst;
}

/// Fast-path Krein tensor cross-checked entrywise against the dense
/// oracle when the graph fits under the dense limit.
inline KreinTensor krein_parameters_checked(const Graph& g, const SpectralData& spec,
                                            const std::vector<int>& order,
                                            Vertex dense_limit = 2048,
                                            double crosscheck_tol = 1e-7) {
  KreinTensor fast = krein_parameters(spec, order);
  if (g.n() <= dense_limit) {
    auto E = primitive_idempotents_dense(g, spec, dense_limit);
    KreinTensor dense = krein_dense_oracle(E, spec.mult, order);
    double diff = krein_max_difference(fast, dense);
    if (diff > crosscheck_tol)
      fail(errc::oracle_mismatch, "krein fast path vs dense oracle differ by " + std::to_string(diff));
  }
  return fast;
}

struct QPolyOrdering {
  std::vector<int> order;       // order[p] = spectral index at position p
  DualEigenvalues dual;         // dual eigenvalues of E_1 = order[1]
  bool duals_distinct = false;
};

/// The Q-polynomial support pattern: q^h_ij must vanish when one of
/// h,i,j exceeds the sum of the other two and must not vanish when one
/// equals the sum of the other two.
inline bool is_qpoly_pattern(const KreinTensor& kt, double zero_threshold) {
  const int m = kt.D + 1;
  for (int h = 0; h < m; ++h)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        const double v = std::abs(kt.at(h, i, j));
        if (h > i + j || i > h + j || j > h + i) {
          if (v > zero_threshold) return false;
        } else if (h == i + j || i == h + j || j == h + i) {
          if (v <= zero_threshold) return false;
        }
      }
  return true;
}

/// All idempotent orderings with respect to which the scheme is
/// Q-polynomial. Each eigenspace is tried as E_1; the chain grows by the
/// q^*_{1,prev} support and the completed ordering is re-verified over
/// every (h,i,j). Zero-vs-nonzero uses a relative threshold against the
/// largest |q|.
inline std::vector<QPolyOrdering> find_qpoly_orderings(const SpectralData& spec,
                                                       const Tolerances& tol = {}) {
  const int m = spec.D() + 1;
  std::vector<QPolyOrdering> found;
  KreinTensor base = krein_parameters(spec, natural_order(spec.D()));
  const double zero_threshold = tol.zero_rel * std::max(1.0, base.max_abs());

  for (int e1 = 1; e1 < m; ++e1) {
    std::vector<int> order{0, e1};
    std::vector<char> used(m, 0);
    used[0] = used[e1] = 1;
    bool ok = true;
    while (static_cast<int>(order.size()) < m && ok) {
      int prev = order.back();
      int next = -1;
      for (int cand = 0; cand < m; ++cand) {
        if (used[cand]) continue;
        if (std::abs(base.at(cand, e1, prev)) > zero_threshold) {
          if (next >= 0) {
            ok = false;  // branching support: not a Q-polynomial chain
            break;
          }
          next = cand;
        }
      }
      if (next < 0) ok = false;
      if (!ok) break;
      order.push_back(next);
      used[next] = 1;
    }
    if (!ok) continue;
    KreinTensor ordered = krein_parameters(spec, order);
    if (!is_qpoly_pattern(ordered, zero_threshold)) continue;

    QPolyOrdering qp;
    qp.order = order;
    qp.dual = dual_eigenvalues(spec, e1);
    qp.duals_distinct = true;
    double dual_scale = 1.0;
    for (double t : qp.dual.theta_star) dual_scale = std::max(dual_scale, std::abs(t));
    for (std::size_t u = 0; u < qp.dual.theta_star.size() && qp.duals_distinct; ++u)
      for (std::size_t v = u + 1; v < qp.dual.theta_star.size(); ++v)
        if (std::abs(qp.dual.theta_star[u] - qp.dual.theta_star[v]) <=
            tol.zero_rel * dual_scale) {
          qp.duals_distinct = false;
          break;
        }
    found.push_back(std::move(qp));
  }
  return found;
}

/// Both sides of the balanced-set identity for one pair x,y at distance
/// h: the signed sums of E z-hat over the two (i,j)-intersection cells
/// against p^h_ij (theta*_i - theta*_j)/(theta*_0 - theta*_h) (Ex - Ey).
/// Returns the max-norm residual.
inline double verify_representation_identity(const Graph& g, const Eigen::MatrixXd& E,
                                             const std::vector<double>& theta_star, int h, int i,
                                             int j, Vertex x, Vertex y,
                                             const Tolerances& tol = {}) {
  DistanceRow dx = bfs_distances(g, x);
  DistanceRow dy = bfs_distances(g, y);
  if (dx[y] != h || h < 1)
    fail(errc::unsupported_parameters, "pair is at distance " + std::to_string(dx[y]) +
                                           ", not h=" + std::to_string(h));
  double scale = 1.0;
  for (double t : theta_star) scale = std::max(scale, std::abs(t));
  const double denom = theta_star[0] - theta_star[static_cast<std::size_t>(h)];
  if (std::abs(denom) <= tol.zero_rel * scale)
    fail(errc::degenerate_denominator, "theta*_0 == theta*_h; ordering is not Q-polynomial");

  const Vertex n = g.n();
  Eigen::VectorXd lhs = Eigen::VectorXd::Zero(n);
  std::int64_t count_ij = 0;
  for (Vertex z = 0; z < n; ++z) {
    if (dx[z] == i && dy[z] == j) {
      lhs += E.col(z);
      ++count_ij;
    }
    if (dx[z] == j && dy[z] == i) lhs -= E.col(z);
  }
  const double ratio =
      (theta_star[static_cast<std::size_t>(i)] - theta_star[static_cast<std::size_t>(j)]) / denom;
  Eigen::VectorXd rhs = static_cast<double>(count_ij) * ratio * (E.col(x) - E.col(y));
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

/// n <Ex, Ey> - theta*_{d(x,y)}, which must vanish for every pair.
inline double inner_product_identity_residual(const Eigen::MatrixXd& E,
                                              const std::vector<double>& theta_star,
                                              const DistanceRow& dx, Vertex x, Vertex y) {
  const double n = static_cast<double>(E.rows());
  double ip = E.col(x).dot(E.col(y));
  return std::abs(n * ip - theta_star[static_cast<std::size_t>(dx[y])]);
}

}  // namespace drg
