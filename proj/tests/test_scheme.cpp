#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "assoc/catalog.hpp"
#include "assoc/scheme.hpp"
#include "test_util.hpp"

#include <vector>

using namespace assoc;

TEST_CASE("one-point scheme validates") {
  RelationMatrix m;
  m.n = 1;
  m.d = 0;
  m.entries = IntMatrix::Zero(1, 1);
  const AdjacencySet a = validate_scheme(m);
  CHECK(a.d == 0);
  CHECK(a.A[0](0, 0) == 1);
}

TEST_CASE("complete graph K4 validates with d = 1, k1 = 3") {
  const AdjacencySet a = validate_scheme(testutil::complete_graph_scheme(4));
  CHECK(a.d == 1);
  const IntersectionTensor t = intersection_numbers(a);
  CHECK(t.k[0] == 1);
  CHECK(t.k[1] == 3);
}

TEST_CASE("path distance partition is not coherent") {
  // distances 0..3 along the 4-path; A_1^2 has diagonal (1,2,2,1), so the
  // product leaves the span
  const RelationMatrix m =
      testutil::from_rows({{0, 1, 2, 3}, {1, 0, 1, 2}, {2, 1, 0, 1}, {3, 2, 1, 0}});
  CHECK_THROWS_WITH_AS(validate_scheme(m), doctest::Contains("NotCoherent"), SchemeError);
}

TEST_CASE("well-formedness violations are named") {
  SUBCASE("not symmetric") {
    RelationMatrix m = testutil::complete_graph_scheme(3);
    m.d = 2;
    m.entries(0, 1) = 2;
    try {
      validate_scheme(m);
      FAIL("expected throw");
    } catch (const SchemeError& e) {
      CHECK(e.code() == ErrorCode::NotSymmetric);
    }
  }
  SUBCASE("nonzero diagonal") {
    RelationMatrix m = testutil::complete_graph_scheme(3);
    m.entries(1, 1) = 1;
    try {
      validate_scheme(m);
      FAIL("expected throw");
    } catch (const SchemeError& e) {
      CHECK(e.code() == ErrorCode::IdentityRelationBroken);
    }
  }
  SUBCASE("zero off the diagonal") {
    RelationMatrix m = testutil::complete_graph_scheme(3);
    m.entries(0, 1) = 0;
    m.entries(1, 0) = 0;
    try {
      validate_scheme(m);
      FAIL("expected throw");
    } catch (const SchemeError& e) {
      CHECK(e.code() == ErrorCode::IdentityRelationBroken);
    }
  }
  SUBCASE("entry out of range") {
    RelationMatrix m = testutil::complete_graph_scheme(3);
    m.entries(0, 1) = 7;
    m.entries(1, 0) = 7;
    try {
      validate_scheme(m);
      FAIL("expected throw");
    } catch (const SchemeError& e) {
      CHECK(e.code() == ErrorCode::EntryOutOfRange);
    }
  }
  SUBCASE("declared but unused relation index") {
    RelationMatrix m = testutil::complete_graph_scheme(4);
    m.d = 9;  // entries stay <= 1; indices 2..9 never occur
    try {
      validate_scheme(m);
      FAIL("expected throw");
    } catch (const SchemeError& e) {
      CHECK(e.code() == ErrorCode::UnusedRelation);
    }
  }
}

TEST_CASE("K4 intersection numbers against a brute-force count") {
  const AdjacencySet a = validate_scheme(testutil::complete_graph_scheme(4));
  const IntersectionTensor t = intersection_numbers(a);

  // oracle: count two-step walks directly
  auto count_paths = [&](int i, int j, int x, int y) {
    int c = 0;
    for (int z = 0; z < 4; ++z)
      if (a.A[i](x, z) == 1 && a.A[j](z, y) == 1) ++c;
    return c;
  };
  CHECK(t.at(1, 1, 0) == count_paths(1, 1, 0, 0));
  CHECK(t.at(1, 1, 1) == count_paths(1, 1, 0, 1));
  CHECK(t.at(1, 1, 0) == 3);
  CHECK(t.at(1, 1, 1) == 2);
}

TEST_CASE("hexagon scheme has intersection array (2,1,1; 1,1,2)") {
  const AdjacencySet a = validate_scheme(testutil::cycle_distance_scheme(6));
  const IntersectionTensor t = intersection_numbers(a);
  // b_i = p(1, i+1, i), c_i = p(1, i-1, i)
  CHECK(t.at(1, 1, 0) == 2);  // b0
  CHECK(t.at(1, 2, 1) == 1);  // b1
  CHECK(t.at(1, 3, 2) == 1);  // b2
  CHECK(t.at(1, 0, 1) == 1);  // c1
  CHECK(t.at(1, 1, 2) == 1);  // c2
  CHECK(t.at(1, 2, 3) == 2);  // c3
}

TEST_CASE("pentagon scheme has a2 = 1 and c2 = 1") {
  const AdjacencySet a = validate_scheme(testutil::cycle_distance_scheme(5));
  const IntersectionTensor t = intersection_numbers(a);
  CHECK(t.at(1, 2, 2) == 1);  // a2
  CHECK(t.at(1, 1, 2) == 1);  // c2
}

TEST_CASE("algebra properties hold on a corpus sample") {
  std::vector<RelationMatrix> corpus = {
      testutil::complete_graph_scheme(4), testutil::cycle_distance_scheme(5),
      testutil::cycle_distance_scheme(6), testutil::cocktail_party_scheme(4),
      generate_negative("Petersen"),      generate_negative("GD(2,3)"),
  };
  for (const RelationMatrix& m : corpus) {
    const AdjacencySet a = validate_scheme(m);
    const IntersectionTensor t = intersection_numbers(a);
    const int d = a.d;

    IntMatrix sum = IntMatrix::Zero(a.n, a.n);
    for (const IntMatrix& ai : a.A) {
      CHECK(is_symmetric(ai));
      sum += ai;
    }
    CHECK((sum.array() == 1).all());

    for (int i = 0; i <= d; ++i)
      for (int j = 0; j <= d; ++j) {
        CHECK(a.A[i] * a.A[j] == a.A[j] * a.A[i]);
        // double count: sum_k p(i,j,k) k_k = k_i k_j
        std::int64_t lhs = 0;
        for (int k = 0; k <= d; ++k) lhs += t.at(i, j, k) * t.k[k];
        CHECK(lhs == t.k[i] * t.k[j]);
        for (int k = 0; k <= d; ++k) CHECK(t.at(i, j, k) == t.at(j, i, k));
      }
  }
}

TEST_CASE("generated polyhedral schemes re-validate") {
  for (Polyhedron label : {Polyhedron::Tetrahedron, Polyhedron::Cube, Polyhedron::Cuboctahedron}) {
    const GeneratedScheme gen = generate(label);
    const AdjacencySet a = validate_scheme(gen.scheme);
    RelationMatrix back;
    back.n = a.n;
    back.d = a.d;
    back.entries = a.relations;
    CHECK_NOTHROW(validate_scheme(back));
  }
}

TEST_CASE("relation relabeling round-trips") {
  const RelationMatrix m = testutil::cycle_distance_scheme(6);
  const std::vector<int> perm = {3, 1, 2};  // 1->3, 2->1, 3->2
  const std::vector<int> inverse = {2, 3, 1};
  const RelationMatrix once = relabel_relations(m, perm);
  CHECK(once.entries != m.entries);
  CHECK(relabel_relations(once, inverse).entries == m.entries);
  CHECK_NOTHROW(validate_scheme(once));
}
