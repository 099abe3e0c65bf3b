#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "drg/families.hpp"
#include "drg/gf.hpp"
#include "drg/io.hpp"
#include "oracles.hpp"

using drg::Vertex;
using drg::gf::Elem;
using drg::gf::FieldTable;

TEST_CASE("field tables satisfy the field axioms exhaustively") {
  for (int r : {2, 3}) {
    FieldTable f(r);
    const int q = f.q();
    for (Elem x = 0; x < q; ++x) {
      CHECK(f.add(x, 0) == x);
      CHECK(f.mul(x, 1) == x);
      CHECK(f.mul(x, 0) == 0);
      CHECK(f.add(x, f.neg(x)) == 0);
      if (x != 0) CHECK(f.mul(x, f.inv(x)) == 1);
      for (Elem y = 0; y < q; ++y) {
        CHECK(f.add(x, y) == f.add(y, x));
        CHECK(f.mul(x, y) == f.mul(y, x));
        for (Elem z = 0; z < q; ++z) {
          CHECK(f.add(f.add(x, y), z) == f.add(x, f.add(y, z)));
          CHECK(f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z)));
          CHECK(f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z)));
        }
      }
    }
  }
}

TEST_CASE("conjugation is the involution fixing exactly the subfield") {
  for (int r : {2, 3}) {
    FieldTable f(r);
    int fixed = 0;
    for (Elem x = 0; x < f.q(); ++x) {
      CHECK(f.conj(f.conj(x)) == x);
      CHECK(f.conj(f.add(x, 1)) == f.add(f.conj(x), 1));
      if (f.conj(x) == x) {
        ++fixed;
        CHECK(f.in_subfield(x));
      }
    }
    CHECK(fixed == r);
  }
}

TEST_CASE("matrix rank over the field") {
  FieldTable f(2);
  drg::gf::Matrix zero(3, 3);
  CHECK(drg::gf::matrix_rank(f, zero) == 0);

  drg::gf::Matrix eye(4, 4);
  for (int i = 0; i < 4; ++i) eye.at(i, i) = 1;
  CHECK(drg::gf::matrix_rank(f, eye) == 4);

  // outer product v conj(v)^t for nonzero v has rank 1
  FieldTable f3(3);
  std::vector<Elem> v{2, 5, 1};
  drg::gf::Matrix outer(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) outer.at(i, j) = f3.mul(v[i], f3.conj(v[j]));
  CHECK(drg::gf::matrix_rank(f3, outer) == 1);
}

TEST_CASE("hypercube generator") {
  auto gen = drg::make_hypercube(3);
  CHECK(gen.graph.n() == 8);
  CHECK(gen.graph.edge_count() == 12);
  CHECK(*gen.meta.expected_b == std::vector<std::int64_t>{3, 2, 1, 0});
  CHECK(*gen.meta.expected_c == std::vector<std::int64_t>{0, 1, 2, 3});
}

TEST_CASE("petersen generator: Kneser(5,2), girth 5") {
  auto gen = drg::make_petersen();
  CHECK(gen.graph.n() == 10);
  CHECK(gen.graph.edge_count() == 15);
  auto rep = drg::diameter_and_regularity(gen.graph);
  CHECK(rep.diameter == 2);
  CHECK(rep.valency == 3);
  CHECK(oracle::girth(gen.graph) == 5);
}

TEST_CASE("hermitian generator: Her(3,2)") {
  auto gen = drg::make_hermitian(3, 2);
  CHECK(gen.graph.n() == 512);
  auto rep = drg::diameter_and_regularity(gen.graph);
  CHECK(rep.valency == 21);
  CHECK(rep.diameter == 3);
  REQUIRE(gen.meta.expected_classical.has_value());
  auto ecp = *gen.meta.expected_classical;
  CHECK(ecp[0] == 3.0);
  CHECK(ecp[1] == -2.0);
  CHECK(ecp[2] == -3.0);
  CHECK(ecp[3] == 7.0);
}

TEST_CASE("hermitian adjacency agrees with the pairwise rank test") {
  FieldTable f(2);
  auto gen = drg::make_hermitian(3, 2);
  drg::detail::HermitianCoder coder(f, 3);
  // full pairwise comparison on all 512*511/2 pairs
  std::vector<drg::gf::Matrix> mats;
  mats.reserve(512);
  for (std::int64_t v = 0; v < 512; ++v) mats.push_back(coder.decode(v));
  for (Vertex u = 0; u < 512; ++u) {
    // decode/encode are inverse
    REQUIRE(coder.encode(mats[u]) == u);
    for (Vertex v = u + 1; v < 512; ++v) {
      bool by_rank = drg::hermitian_adjacent_by_rank(f, mats[u], mats[v]);
      REQUIRE(by_rank == gen.graph.has_edge(u, v));
    }
  }
}

TEST_CASE("hermitian matrices have subfield diagonal") {
  for (int r : {2, 3}) {
    FieldTable f(r);
    drg::detail::HermitianCoder coder(f, 2);
    for (std::int64_t v = 0; v < coder.count(); ++v) {
      drg::gf::Matrix m = coder.decode(v);
      for (int i = 0; i < 2; ++i) {
        CHECK(f.in_subfield(m.at(i, i)));
        for (int j = 0; j < 2; ++j) CHECK(f.conj(m.at(i, j)) == m.at(j, i));
      }
    }
  }
}

TEST_CASE("generators are deterministic") {
  for (const char* spec : {"petersen", "hypercube:4", "hamming:2,3", "johnson:5,2", "cycle:7",
                           "hermitian:2,3"}) {
    auto a = drg::gen_family(spec);
    auto b = drg::gen_family(spec);
    CHECK(drg::write_graph6(a.graph) == drg::write_graph6(b.graph));
    CHECK(a.meta.family == b.meta.family);
  }
}

TEST_CASE("family spec parsing") {
  CHECK(drg::gen_family("cycle:6").graph.n() == 6);
  CHECK(drg::gen_family("hamming:2,3").graph.n() == 9);
  CHECK(drg::gen_family("johnson:5,2").graph.n() == 10);
  CHECK_THROWS_AS(drg::gen_family("lattice:3"), drg::Error);
  CHECK_THROWS_AS(drg::gen_family("hermitian:9,9"), drg::Error);
  CHECK_THROWS_AS(drg::gen_family("cycle:notanumber"), drg::Error);
  CHECK_THROWS_AS(drg::gen_family("petersen:1"), drg::Error);
}
