#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "assoc/catalog.hpp"
#include "assoc/spectral.hpp"
#include "test_util.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <vector>

using namespace assoc;

namespace {

SpectralData spectral_of(const RelationMatrix& m) {
  const AdjacencySet a = validate_scheme(m);
  return compute_idempotents(a, intersection_numbers(a));
}

}  // namespace

TEST_CASE("K4: ranks {1,3} and P = [[1,3],[1,-1]]") {
  const SpectralData s = spectral_of(testutil::complete_graph_scheme(4));
  REQUIRE(s.m.size() == 2);
  CHECK(s.m[0] == 1);
  CHECK(s.m[1] == 3);

  // oracle: eigendecomposition of J - I done here, independent of the
  // projector construction
  RealMatrix adj = RealMatrix::Ones(4, 4) - RealMatrix::Identity(4, 4);
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(adj);
  CHECK(es.eigenvalues()(3) == doctest::Approx(3.0));   // multiplicity 1
  CHECK(es.eigenvalues()(0) == doctest::Approx(-1.0));  // multiplicity 3

  CHECK(std::abs(s.P(0, 0) - 1.0) < 1e-9);
  CHECK(std::abs(s.P(0, 1) - 3.0) < 1e-9);
  CHECK(std::abs(s.P(1, 0) - 1.0) < 1e-9);
  CHECK(std::abs(s.P(1, 1) + 1.0) < 1e-9);
}

TEST_CASE("one-point scheme: E0 = [1], P = Q = [1]") {
  RelationMatrix m;
  m.n = 1;
  m.d = 0;
  m.entries = IntMatrix::Zero(1, 1);
  const SpectralData s = spectral_of(m);
  CHECK(s.E[0](0, 0) == doctest::Approx(1.0));
  CHECK(s.P(0, 0) == doctest::Approx(1.0));
  CHECK(s.Q(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("octahedron scheme: rank order (1, 3, 2)") {
  const GeneratedScheme gen = generate(Polyhedron::Octahedron);
  const SpectralData s = spectral_of(gen.scheme);
  REQUIRE(s.m.size() == 3);
  CHECK(s.m[0] == 1);
  CHECK(s.m[1] == 3);
  CHECK(s.m[2] == 2);

  // oracle: the cocktail-party graph has eigenvalues 4, 0 (x3), -2 (x2)
  const AdjacencySet a = validate_scheme(gen.scheme);
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(a.A[1].cast<double>());
  CHECK(es.eigenvalues()(5) == doctest::Approx(4.0));
  CHECK(es.eigenvalues()(4) == doctest::Approx(0.0));
  CHECK(es.eigenvalues()(2) == doctest::Approx(0.0));
  CHECK(es.eigenvalues()(1) == doctest::Approx(-2.0));
}

TEST_CASE("pentagon: P(j,2) = 2cos(4 pi t / 5)") {
  const SpectralData s = spectral_of(testutil::cycle_distance_scheme(5));
  REQUIRE(s.d == 2);
  for (int j = 1; j <= 2; ++j) {
    const double theta = std::acos(s.P(j, 1) / 2.0);  // P(j,1) = 2cos(2 pi t / 5)
    CHECK(std::abs(s.P(j, 2) - 2.0 * std::cos(2.0 * theta)) < 1e-9);
  }
  // idempotent ordering puts t = 1 first
  CHECK(s.P(1, 1) == doctest::Approx(2.0 * std::cos(2.0 * M_PI / 5.0)));
  CHECK(s.P(2, 1) == doctest::Approx(2.0 * std::cos(4.0 * M_PI / 5.0)));
}

TEST_CASE("icosahedron: first rank-3 eigenspace has P row (1, sqrt5, -sqrt5, -1)") {
  const GeneratedScheme gen = generate(Polyhedron::Icosahedron);
  const SpectralData s = spectral_of(gen.scheme);
  REQUIRE(s.d == 3);
  CHECK(s.m[1] == 5);
  CHECK(s.m[2] == 3);
  CHECK(s.m[3] == 3);
  const double r5 = std::sqrt(5.0);
  CHECK(std::abs(s.P(2, 0) - 1.0) < 1e-8);
  CHECK(std::abs(s.P(2, 1) - r5) < 1e-8);
  CHECK(std::abs(s.P(2, 2) + r5) < 1e-8);
  CHECK(std::abs(s.P(2, 3) + 1.0) < 1e-8);
}

TEST_CASE("spectral identities on catalog and negative schemes") {
  std::vector<RelationMatrix> corpus;
  for (Polyhedron label :
       {Polyhedron::Tetrahedron, Polyhedron::Octahedron, Polyhedron::Cube, Polyhedron::Icosahedron})
    corpus.push_back(generate(label).scheme);
  for (const char* name : {"C7", "Petersen", "H(4,2)", "GD(2,3)"})
    corpus.push_back(generate_negative(name));

  for (const RelationMatrix& m : corpus) {
    const AdjacencySet a = validate_scheme(m);
    const IntersectionTensor t = intersection_numbers(a);
    const SpectralData s = compute_idempotents(a, t);
    const int n = a.n;

    RealMatrix sum = RealMatrix::Zero(n, n);
    int total_rank = 0;
    for (int j = 0; j <= s.d; ++j) {
      CHECK(max_abs_diff(s.E[j] * s.E[j], s.E[j]) < 1e-9);
      CHECK(s.m[j] == static_cast<int>(std::lround(s.E[j].trace())));
      total_rank += s.m[j];
      sum += s.E[j];
      for (int h = j + 1; h <= s.d; ++h)
        CHECK((s.E[j] * s.E[h]).lpNorm<Eigen::Infinity>() < 1e-9);
    }
    CHECK(total_rank == n);
    CHECK(max_abs_diff(sum, RealMatrix::Identity(n, n)) < 1e-9);

    CHECK(max_abs_diff(s.P * s.Q, static_cast<double>(n) * RealMatrix::Identity(s.d + 1, s.d + 1)) <
          1e-6);

    // P row 0 is the valencies, Q row 0 the multiplicities
    for (int i = 0; i <= s.d; ++i) CHECK(std::abs(s.P(0, i) - s.k[i]) < 1e-9);
    for (int j = 0; j <= s.d; ++j) CHECK(std::abs(s.Q(0, j) - s.m[j]) < 1e-9);

    // Q(i,j) k_i = m_j P(j,i)
    for (int i = 0; i <= s.d; ++i)
      for (int j = 0; j <= s.d; ++j)
        CHECK(std::abs(s.Q(i, j) * s.k[i] - s.m[j] * s.P(j, i)) < 1e-9);
  }
}

TEST_CASE("Q-column distinctness predicate") {
  SUBCASE("K4 column 1 is distinct") {
    const SpectralData s = spectral_of(testutil::complete_graph_scheme(4));
    CHECK(is_q_polynomial_for(s, 1));
  }
  SUBCASE("octahedron rank-3 column (3, 0, -3) is distinct") {
    const SpectralData s = spectral_of(generate(Polyhedron::Octahedron).scheme);
    CHECK(s.m[1] == 3);
    CHECK(is_q_polynomial_for(s, 1));
    CHECK(std::abs(s.Q(0, 1) - 3.0) < 1e-9);
    CHECK(std::abs(s.Q(1, 1) - 0.0) < 1e-9);
    CHECK(std::abs(s.Q(2, 1) + 3.0) < 1e-9);
  }
  SUBCASE("4-cycle rank-1 column repeats a value") {
    const SpectralData s = spectral_of(testutil::cycle_distance_scheme(4));
    REQUIRE(s.m[2] == 1);
    CHECK_FALSE(is_q_polynomial_for(s, 2));  // column (1, -1, 1)
    CHECK(is_q_polynomial_for(s, 1));
  }
}

TEST_CASE("eigenmatrices recomputes P and Q from the projectors") {
  const AdjacencySet a = validate_scheme(generate(Polyhedron::Icosahedron).scheme);
  const SpectralData s = compute_idempotents(a, intersection_numbers(a));
  const auto [p, q] = eigenmatrices(s, a);
  CHECK(max_abs_diff(p, s.P) < 1e-12);
  CHECK(max_abs_diff(q, s.Q) < 1e-12);

  SUBCASE("a rank-deficient projector set makes P singular") {
    SpectralData doctored = s;
    doctored.E[2] = doctored.E[1];  // duplicate row in P
    try {
      eigenmatrices(doctored, a);
      FAIL("expected throw");
    } catch (const SchemeError& e) {
      CHECK(e.code() == ErrorCode::SingularP);
    }
  }
}

TEST_CASE("idempotent computation is deterministic") {
  const RelationMatrix m = generate(Polyhedron::Cube).scheme;
  const SpectralData s1 = spectral_of(m);
  const SpectralData s2 = spectral_of(m);
  for (int j = 0; j <= s1.d; ++j) CHECK(max_abs_diff(s1.E[j], s2.E[j]) == 0.0);
  CHECK(max_abs_diff(s1.P, s2.P) == 0.0);
}

TEST_CASE("DegenerateSplit after five failed draws") {
  // duplicated relation matrices can never reach d+1 = 3 clusters
  AdjacencySet a;
  a.n = 4;
  a.d = 2;
  a.relations = IntMatrix::Zero(4, 4);
  a.A = {IntMatrix::Identity(4, 4), IntMatrix::Ones(4, 4) - IntMatrix::Identity(4, 4),
         IntMatrix::Ones(4, 4) - IntMatrix::Identity(4, 4)};
  IntersectionTensor t;
  t.d = 2;
  t.k = {1, 3, 3};
  try {
    compute_idempotents(a, t);
    FAIL("expected throw");
  } catch (const SchemeError& e) {
    CHECK(e.code() == ErrorCode::DegenerateSplit);
  }
}
