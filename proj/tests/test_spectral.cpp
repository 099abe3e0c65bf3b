#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <variant>

#include "drg/families.hpp"
#include "drg/intersection.hpp"
#include "drg/spectral.hpp"
#include "oracles.hpp"

using Catch::Matchers::WithinAbs;
using drg::Vertex;

namespace {

drg::DRGCertificate cert_of(const drg::Graph& g) {
  auto outcome = drg::certify_distance_regular(g);
  REQUIRE(std::holds_alternative<drg::DRGCertificate>(outcome));
  return std::get<drg::DRGCertificate>(outcome);
}

struct Pipeline {
  drg::Graph graph;
  drg::DRGCertificate cert;
  drg::SpectralData spec;
};

Pipeline pipeline(const std::string& family) {
  auto gen = drg::gen_family(family);
  auto cert = cert_of(gen.graph);
  auto spec = drg::eigen_from_array(cert.array, gen.graph.n());
  return {std::move(gen.graph), std::move(cert), std::move(spec)};
}

const std::vector<std::string>& corpus() {
  static const std::vector<std::string> c{"petersen",   "hypercube:3", "hypercube:4",
                                          "cycle:6",    "hamming:2,3", "johnson:5,2",
                                          "hermitian:2,2", "hermitian:3,2"};
  return c;
}

}  // namespace

TEST_CASE("eigenvalues and multiplicities of petersen and hypercube") {
  auto p = pipeline("petersen");
  REQUIRE(p.spec.theta.size() == 3);
  CHECK_THAT(p.spec.theta[0], WithinAbs(3.0, 1e-9));
  CHECK_THAT(p.spec.theta[1], WithinAbs(1.0, 1e-9));
  CHECK_THAT(p.spec.theta[2], WithinAbs(-2.0, 1e-9));
  CHECK(p.spec.mult == std::vector<std::int64_t>{1, 5, 4});

  auto q = pipeline("hypercube:3");
  REQUIRE(q.spec.theta.size() == 4);
  CHECK_THAT(q.spec.theta[0], WithinAbs(3.0, 1e-9));
  CHECK_THAT(q.spec.theta[1], WithinAbs(1.0, 1e-9));
  CHECK_THAT(q.spec.theta[2], WithinAbs(-1.0, 1e-9));
  CHECK_THAT(q.spec.theta[3], WithinAbs(-3.0, 1e-9));
  CHECK(q.spec.mult == std::vector<std::int64_t>{1, 3, 3, 1});
}

TEST_CASE("theta_0 = k with multiplicity 1 across the corpus") {
  for (const auto& family : corpus()) {
    auto p = pipeline(family);
    CHECK_THAT(p.spec.theta[0], WithinAbs(static_cast<double>(p.cert.array.k()), 1e-8));
    CHECK(p.spec.mult[0] == 1);
    // eigenvalues agree with a dense adjacency eigensolve
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(p.graph.n(), p.graph.n());
    for (Vertex v = 0; v < p.graph.n(); ++v)
      for (Vertex w : p.graph.neighbors(v)) A(v, w) = 1.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(A);
    std::vector<double> distinct;
    for (Eigen::Index idx = 0; idx < solver.eigenvalues().size(); ++idx) {
      double lambda = solver.eigenvalues()(idx);
      if (distinct.empty() || lambda - distinct.back() > 1e-6) distinct.push_back(lambda);
    }
    std::sort(distinct.begin(), distinct.end(), std::greater<>());
    REQUIRE(distinct.size() == p.spec.theta.size());
    for (std::size_t l = 0; l < distinct.size(); ++l)
      CHECK_THAT(p.spec.theta[l], WithinAbs(distinct[l], 1e-7));
  }
}

TEST_CASE("P Q = n I and the P rows are distance-matrix eigenvalues") {
  for (const auto& family : {"petersen", "hermitian:3,2"}) {
    auto p = pipeline(family);
    const int m = p.spec.D() + 1;
    Eigen::MatrixXd resid =
        p.spec.P * p.spec.Q / static_cast<double>(p.spec.n) - Eigen::MatrixXd::Identity(m, m);
    CHECK(resid.cwiseAbs().maxCoeff() < 1e-8);
    // column orthogonality against the trivial eigenspace
    for (int i = 1; i < m; ++i) {
      double sum = 0;
      for (int l = 0; l < m; ++l) sum += static_cast<double>(p.spec.mult[l]) * p.spec.P(l, i);
      CHECK_THAT(sum, WithinAbs(0.0, 1e-6));
    }
    CHECK_THAT(p.spec.P(0, 1), WithinAbs(static_cast<double>(p.cert.array.k()), 1e-8));
  }
}

TEST_CASE("dense idempotents satisfy the defining identities") {
  for (const auto& family : {"petersen", "hypercube:3", "cycle:6", "hermitian:3,2"}) {
    auto p = pipeline(family);
    auto E = drg::primitive_idempotents_dense(p.graph, p.spec);
    auto resid = drg::idempotent_identity_residuals(E);
    CHECK(resid.idempotency < 1e-9);
    CHECK(resid.orthogonality < 1e-9);
    CHECK(resid.completeness < 1e-9);
    CHECK(resid.symmetry < 1e-9);
    CHECK(resid.trivial < 1e-9);
    // trace E_i = m_i
    for (std::size_t l = 0; l < E.size(); ++l)
      CHECK_THAT(E[l].trace(), WithinAbs(static_cast<double>(p.spec.mult[l]), 1e-8));
  }
}

TEST_CASE("dense limit is enforced") {
  auto p = pipeline("petersen");
  CHECK_THROWS_AS(drg::primitive_idempotents_dense(p.graph, p.spec, 5), drg::Error);
  try {
    drg::primitive_idempotents_dense(p.graph, p.spec, 5);
  } catch (const drg::Error& e) {
    CHECK(e.code() == drg::errc::dense_limit_exceeded);
  }
}

TEST_CASE("dual eigenvalues of the petersen theta=1 idempotent") {
  auto p = pipeline("petersen");
  auto dual = drg::dual_eigenvalues(p.spec, 1);
  REQUIRE(dual.theta_star.size() == 3);
  // frozen from the dense-idempotent expansion E = (3I + A - A_2)/6,
  // i.e. theta* = (5, 5/3, -5/3)
  CHECK_THAT(dual.theta_star[0], WithinAbs(5.0, 1e-9));
  CHECK_THAT(dual.theta_star[1], WithinAbs(5.0 / 3.0, 1e-9));
  CHECK_THAT(dual.theta_star[2], WithinAbs(-5.0 / 3.0, 1e-9));

  // theta*_0 equals the multiplicity of the chosen eigenspace
  for (int e = 0; e <= p.spec.D(); ++e)
    CHECK_THAT(drg::dual_eigenvalues(p.spec, e).theta_star[0],
               WithinAbs(static_cast<double>(p.spec.mult[e]), 1e-9));

  // cross-check against the dense idempotent: n E_{xy} = theta*_{d(x,y)}
  auto E = drg::primitive_idempotents_dense(p.graph, p.spec);
  drg::DistanceRow row = drg::bfs_distances(p.graph, 0);
  for (Vertex y = 0; y < p.graph.n(); ++y)
    CHECK_THAT(10.0 * E[1](0, y), WithinAbs(dual.theta_star[row[y]], 1e-9));
}

TEST_CASE("inner product identity holds for every idempotent on random pairs") {
  std::mt19937_64 rng(2025);
  for (const auto& family : {"petersen", "hypercube:3", "hermitian:2,2"}) {
    auto p = pipeline(family);
    auto E = drg::primitive_idempotents_dense(p.graph, p.spec);
    std::uniform_int_distribution<Vertex> pick(0, p.graph.n() - 1);
    for (int e = 0; e <= p.spec.D(); ++e) {
      auto dual = drg::dual_eigenvalues(p.spec, e);
      for (int trial = 0; trial < 50; ++trial) {
        Vertex x = pick(rng), y = pick(rng);
        drg::DistanceRow dx = drg::bfs_distances(p.graph, x);
        CHECK(drg::inner_product_identity_residual(E[e], dual.theta_star, dx, x, y) < 1e-8);
      }
    }
  }
}

TEST_CASE("krein parameters: structure, nonnegativity, dense agreement") {
  for (const auto& family : corpus()) {
    auto p = pipeline(family);
    auto natural = drg::natural_order(p.spec.D());
    drg::KreinTensor fast = drg::krein_parameters(p.spec, natural);

    // q^0_ij = delta_ij m_i
    for (int i = 0; i <= p.spec.D(); ++i)
      for (int j = 0; j <= p.spec.D(); ++j)
        CHECK_THAT(fast.at(0, i, j),
                   WithinAbs(i == j ? static_cast<double>(p.spec.mult[i]) : 0.0, 1e-7));
    // symmetry and the rank identity sum_k q^k_ij m_k = m_i m_j
    for (int h = 0; h <= p.spec.D(); ++h)
      for (int i = 0; i <= p.spec.D(); ++i)
        for (int j = 0; j <= p.spec.D(); ++j)
          CHECK_THAT(fast.at(h, i, j), WithinAbs(fast.at(h, j, i), 1e-9));
    for (int i = 0; i <= p.spec.D(); ++i)
      for (int j = 0; j <= p.spec.D(); ++j) {
        double sum = 0;
        for (int h = 0; h <= p.spec.D(); ++h)
          sum += fast.at(h, i, j) * static_cast<double>(p.spec.mult[h]);
        CHECK_THAT(sum, WithinAbs(static_cast<double>(p.spec.mult[i] * p.spec.mult[j]), 1e-5));
      }

    CHECK(fast.min_value() > -1e-8);

    auto E = drg::primitive_idempotents_dense(p.graph, p.spec);
    drg::KreinTensor dense = drg::krein_dense_oracle(E, p.spec.mult, natural);
    CHECK(drg::krein_max_difference(fast, dense) < 1e-7);
    CHECK_NOTHROW(drg::krein_parameters_checked(p.graph, p.spec, natural));
  }
}

TEST_CASE("q-polynomial orderings: known cases") {
  auto q3 = pipeline("hypercube:3");
  auto orderings = drg::find_qpoly_orderings(q3.spec);
  bool has_natural = false;
  for (const auto& qp : orderings) {
    CHECK(qp.duals_distinct);
    if (qp.order == std::vector<int>{0, 1, 2, 3}) has_natural = true;
  }
  CHECK(has_natural);  // descending-theta ordering is Q-polynomial

  CHECK_FALSE(drg::find_qpoly_orderings(pipeline("petersen").spec).empty());
  CHECK_FALSE(drg::find_qpoly_orderings(pipeline("hermitian:3,2").spec).empty());
}

TEST_CASE("greedy ordering search agrees with exhaustive permutation search") {
  for (const auto& family : corpus()) {
    auto p = pipeline(family);
    const int D = p.spec.D();
    if (D > 4) continue;
    drg::KreinTensor base = drg::krein_parameters(p.spec, drg::natural_order(D));
    const double zero_threshold = 1e-6 * std::max(1.0, base.max_abs());

    std::vector<std::vector<int>> brute;
    std::vector<int> perm(D);
    for (int i = 0; i < D; ++i) perm[i] = i + 1;
    std::sort(perm.begin(), perm.end());
    do {
      std::vector<int> order{0};
      order.insert(order.end(), perm.begin(), perm.end());
      if (drg::is_qpoly_pattern(drg::krein_parameters(p.spec, order), zero_threshold))
        brute.push_back(order);
    } while (std::next_permutation(perm.begin(), perm.end()));

    auto greedy = drg::find_qpoly_orderings(p.spec);
    std::vector<std::vector<int>> got;
    for (const auto& qp : greedy) got.push_back(qp.order);
    std::sort(got.begin(), got.end());
    std::sort(brute.begin(), brute.end());
    REQUIRE(got == brute);
  }
}

TEST_CASE("representation identity: trivial and nontrivial cases") {
  auto p = pipeline("petersen");
  auto orderings = drg::find_qpoly_orderings(p.spec);
  REQUIRE_FALSE(orderings.empty());
  const auto& qp = orderings.front();
  auto E = drg::primitive_idempotents_dense(p.graph, p.spec);
  const auto& E1 = E[static_cast<std::size_t>(qp.order[1])];

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<Vertex> pick(0, 9);
  int nontrivial = 0;
  while (nontrivial < 20) {
    Vertex x = pick(rng), y = pick(rng);
    if (x == y) continue;
    drg::DistanceRow dx = drg::bfs_distances(p.graph, x);
    int h = dx[y];
    // i = j: both sides vanish identically
    CHECK(drg::verify_representation_identity(p.graph, E1, qp.dual.theta_star, h, 1, 1, x, y) <
          1e-12);
    if (h == 2) {
      CHECK(drg::verify_representation_identity(p.graph, E1, qp.dual.theta_star, h, 1, 2, x, y) <
            1e-9);
      ++nontrivial;
    }
  }

  // p^h_ij = 0 with i != j: the left side must vanish within tolerance.
  // In petersen p^1_{1,2}... is 2; use (h,i,j)=(1,2,0): no z is at
  // distance 2 from x and 0 from y when d(x,y)=1.
  Vertex x = 0;
  drg::DistanceRow dx = drg::bfs_distances(p.graph, x);
  Vertex y = p.graph.neighbors(x)[0];
  CHECK(drg::verify_representation_identity(p.graph, E1, qp.dual.theta_star, 1, 2, 0, x, y) <
        1e-9);

  // mismatched h is rejected
  CHECK_THROWS_AS(
      drg::verify_representation_identity(p.graph, E1, qp.dual.theta_star, 2, 1, 1, x, y),
      drg::Error);
}

TEST_CASE("eigen_from_array failure modes") {
  // {3,2;1,2} would need n=7 with irrational multiplicities
  drg::IntersectionArray bogus({3, 2}, {1, 2});
  CHECK_THROWS_AS(drg::eigen_from_array(bogus, bogus.vertex_count()), drg::Error);
  try {
    drg::eigen_from_array(bogus, bogus.vertex_count());
  } catch (const drg::Error& e) {
    CHECK(e.code() == drg::errc::non_integer_multiplicity);
  }
  // wrong n is rejected up front
  drg::IntersectionArray petersen({3, 2}, {1, 1});
  CHECK_THROWS_AS(drg::eigen_from_array(petersen, 11), drg::Error);
}
