#include <doctest.h>

#include <random>

#include "orbitscale/basics.hpp"
#include "orbitscale/errors.hpp"
#include "orbitscale/euclid.hpp"
#include "orbitscale/hilbert.hpp"
#include "orbitscale/odometer.hpp"

using namespace orbitscale;

namespace {

BasisPtr golden_basis() {
  return MasterBasis::make({SymbolicConstant::rational(1), SymbolicConstant::sqrt(5)});
}

GroupElement golden_alpha(const BasisPtr& b) {
  return GroupElement(b, {mpq_class(-1, 2), mpq_class(1, 2)});
}

}  // namespace

TEST_CASE("basic_matrix direct substitutions") {
  BasicMatrix b1 = basic_matrix({1, 2}, {2, 3});
  CHECK(b1.entries == MatZ{{1, 1}, {1, 0}});

  BasicMatrix b2 = basic_matrix({2, 3, 5}, {3, 5, 6});
  CHECK(b2.entries == MatZ{{1, 0, 1}, {1, 0, 0}, {0, 1, 0}});

  CHECK_THROWS_AS(basic_matrix({1, 3}, {2, 3}), NotBasicPair);     // v+1 not in V
  CHECK_THROWS_AS(basic_matrix({1, 2, 4}, {2, 3}), NotBasicPair);  // V' misses 4
  CHECK_THROWS_AS(basic_matrix({1, 2}, {3, 4}), NotBasicPair);     // min V' != v+1
}

TEST_CASE("basic matrices are 0/1 with column sums at most 2") {
  BasicMatrix b = basic_matrix({2, 3, 5, 6}, {3, 5, 6, 7, 9});
  for (int j = 0; j < b.entries.cols(); ++j) {
    mpz_class sum = 0;
    for (int i = 0; i < b.entries.rows(); ++i) {
      CHECK((b.entries(i, j) == 0 || b.entries(i, j) == 1));
      sum += b.entries(i, j);
    }
    CHECK(sum <= 2);
  }
}

TEST_CASE("equal_up_to_reindexing") {
  IndexedMatrix a{{0, 1}, {1, 2}, MatZ{{5, 2}, {2, 1}}};
  IndexedMatrix b{{4, 5}, {6, 7}, MatZ{{5, 2}, {2, 1}}};
  CHECK(equal_up_to_reindexing(a, b));
  IndexedMatrix c{{4, 5}, {6, 7}, MatZ{{5, 2}, {2, 2}}};
  CHECK(!equal_up_to_reindexing(a, c));
  IndexedMatrix d{{4, 5, 6}, {6, 7}, MatZ{{5, 2}, {2, 1}, {1, 1}}};
  CHECK(!equal_up_to_reindexing(a, d));
}

TEST_CASE("decreasing_permutation") {
  auto t1 = decreasing_permutation(MatZ{{5, 2}, {2, 1}});
  REQUIRE(t1.has_value());
  CHECK(*t1 == std::vector<int>{0, 1});

  CHECK(!decreasing_permutation(MatZ{{2, 5}, {1, 2}}).has_value());
  CHECK(!decreasing_permutation(MatZ{{1, 1}, {1, 1}}).has_value());
  CHECK_THROWS_AS(decreasing_permutation(MatZ{{1, 0}, {1, 1}}), NonPositiveMatrix);

  // Needs a non-trivial permutation of the trailing columns: strictly
  // decreasing order is col0 = (12,7,3), col2 = (7,4,2), col1 = (3,2,1).
  MatZ shuffled{{12, 3, 7}, {7, 2, 4}, {3, 1, 2}};
  auto t2 = decreasing_permutation(shuffled);
  REQUIRE(t2.has_value());
  CHECK(*t2 == std::vector<int>{0, 2, 1});
}

TEST_CASE("factor_into_basics frozen example") {
  FactorChain c = factor_into_basics(MatZ{{5, 2}, {2, 1}});
  CHECK(c.k == 4);
  REQUIRE(c.w.size() == 5);
  CHECK(c.w[0] == VertexSet{0, 1});
  CHECK(c.w[1] == VertexSet{1, 2, 3});
  CHECK(c.w[2] == VertexSet{2, 3});
  CHECK(c.w[3] == VertexSet{3, 4, 5});
  CHECK(c.w[4] == VertexSet{4, 5});
  IndexedMatrix prod = chain_product(c.w);
  CHECK(equal_up_to_reindexing(prod, IndexedMatrix{prod.rows, prod.cols, MatZ{{5, 2}, {2, 1}}}));
  // top-row budget of the difference columns
  CHECK(c.a[1][0] + c.a[2][0] == 3);
}

TEST_CASE("factor_into_basics preconditions") {
  CHECK_THROWS_AS(factor_into_basics(MatZ{{4, 2}, {2, 1}}), PreconditionFailed);
  CHECK_THROWS_AS(factor_into_basics(MatZ{{5, 0}, {2, 1}}), PreconditionFailed);
  CHECK_THROWS_AS(factor_into_basics(MatZ{{5, 2}}), PreconditionFailed);
  // literal decreasing but a column difference with a zero entry
  CHECK_THROWS_AS(factor_into_basics(MatZ{{5, 3}, {2, 2}}), PreconditionFailed);
}

TEST_CASE("chain structure invariants") {
  std::mt19937 rng(20240607);
  for (int t = 0; t < 30; ++t) {
    int d = 2 + static_cast<int>(rng() % 4);
    int dp = 2 + static_cast<int>(rng() % 4);
    MatZ m = random_qualifying_matrix(rng, d, dp, 60);
    FactorChain c = factor_into_basics(m);
    CHECK(c.w.front() == interval_set(0, d - 1));
    CHECK(c.w.back() == interval_set(c.k, c.k + dp - 1));
    for (int j = 0; j <= c.k; ++j) {
      REQUIRE(!c.w[j].empty());
      CHECK(c.w[j].front() == j);
      if (j < c.k) {
        CHECK(std::binary_search(c.w[j].begin(), c.w[j].end(), j + 1));
        for (int x : c.w[j])
          if (x != j) CHECK(std::binary_search(c.w[j + 1].begin(), c.w[j + 1].end(), x));
      }
    }
    IndexedMatrix prod = chain_product(c.w);
    CHECK(equal_up_to_reindexing(prod, IndexedMatrix{prod.rows, prod.cols, m}));
  }
}

TEST_CASE("build_pipeline on the golden group") {
  auto b = golden_basis();
  GroupElement one = GroupElement::one(b);
  PipelinePresentation p = build_pipeline({one, golden_alpha(b)}, 4);
  CHECK(p.ranks == std::vector<int>{1, 2, 2, 2, 2});
  CHECK(p.m[0] == MatZ{{1, 1}});
  for (int l = 1; l < p.levels(); ++l) {
    CHECK(p.m[l](0, 0) >= 5);
    CHECK(strictly_positive(p.m[l]));
    CHECK(proj_diameter(p.m[l]).ratio <= mpq_class(5, 2));  // well under e
    auto lhs = apply_matrix(p.m[l], p.bases[l + 1]);
    for (size_t i = 0; i < lhs.size(); ++i) CHECK(lhs[i] == p.bases[l][i]);
  }
  // every level basis spans the same group
  for (int l = 1; l + 1 <= p.levels(); ++l) CHECK(same_lattice(p.bases[l], p.bases[l + 1]));
}

TEST_CASE("build_pipeline rejects rational groups and accepts dependent tails") {
  auto b = MasterBasis::make({SymbolicConstant::rational(1), SymbolicConstant::sqrt(2)});
  GroupElement one = GroupElement::one(b);
  CHECK_THROWS_AS(build_pipeline({one, GroupElement::from_rational(b, mpq_class(1, 2))}, 2),
                  InvalidInput);

  // gens {1, sqrt2 - 1, 3 - 2 sqrt2}: the third lies in the rank-2 group.
  GroupElement alpha(b, {mpq_class(-1), mpq_class(1)});
  GroupElement alpha2(b, {mpq_class(3), mpq_class(-2)});
  PipelinePresentation p = build_pipeline({one, alpha, alpha2}, 3);
  CHECK(p.ranks == std::vector<int>{1, 2, 2, 2});
}

TEST_CASE("assemble_vertex_sequence on the golden pipeline") {
  auto b = golden_basis();
  PipelinePresentation p = build_pipeline({GroupElement::one(b), golden_alpha(b)}, 4);
  VertexAssembly a = assemble_vertex_sequence(p);
  CHECK(a.t == std::vector<int>{1, 5, 9, 13});
  CHECK(a.q == std::vector<int>{1, 3, 5, 7, 9, 11, 13, 15});
  CHECK(a.v.front() == VertexSet{1, 2});
  for (size_t j = 0; j < a.v.size(); ++j)
    CHECK(a.v[j] == VertexSet{static_cast<int>(j) + 1, static_cast<int>(j) + 2});
  CHECK(vertex_block_property(a));

  // per-block products reproduce the level matrices exactly
  for (size_t l = 0; l + 1 < a.t.size(); ++l) {
    std::vector<VertexSet> w(a.v.begin() + (a.t[l] - 1), a.v.begin() + a.t[l + 1]);
    IndexedMatrix prod = chain_product(w);
    CHECK(equal_up_to_reindexing(prod, IndexedMatrix{prod.rows, prod.cols, p.m[l + 1]}));
  }

  // the pipeline kneading map is the fibonacci map
  std::vector<std::vector<int>> vsets(a.v.begin(), a.v.end());
  KneadingMap q = kneading_from_vertex_sets(vsets);
  for (int k = 0; k <= q.K(); ++k) CHECK(q(k) == std::max(k - 2, 0));
}

TEST_CASE("positive_decreasing_basis output contract") {
  auto b = golden_basis();
  GroupElement one = GroupElement::one(b);
  GroupElement a = golden_alpha(b);
  auto out = positive_decreasing_basis({-one + a, a.scaled(3)});
  REQUIRE(out.size() == 2);
  for (const auto& e : out) CHECK(sign_of(e) == 1);
  CHECK(sign_of(out[0] - out[1]) == 1);
  CHECK(same_lattice(out, {-one + a, a.scaled(3)}));
}
