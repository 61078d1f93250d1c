// Generators for the seven target polyhedra and the negative-control
// schemes, plus the covering certificate used by the uniqueness step of the
// classification.
#pragma once

#include "assoc/scheme.hpp"
#include "assoc/types.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace assoc {

enum class Polyhedron {
  Tetrahedron,
  Octahedron,
  Cube,
  Icosahedron,
  Cuboctahedron,
  Dodecahedron,
  Icosidodecahedron,
};

constexpr int kPolyhedronCount = 7;

const char* to_string(Polyhedron label);
Polyhedron polyhedron_from_string(const std::string& name);  // throws UnknownName
std::vector<Polyhedron> all_polyhedra();

struct PolyhedronSpec {
  Polyhedron label;
  RealMatrix vertices;  // n x 3, unit rows
  int expected_n = 0;
  int expected_valency = 0;
  double expected_alpha = 0.0;
};

struct GeneratedScheme {
  PolyhedronSpec spec;
  RelationMatrix scheme;
};

/// Unit-sphere coordinates from the standard constructions. Always succeeds.
PolyhedronSpec polyhedron_spec(Polyhedron label);

/// Relation indices from clustering pairwise inner products (descending
/// value order, tolerance 1e-9). Purely combinatorial; not validated.
RelationMatrix clustered_relation_matrix(const PolyhedronSpec& spec, const Tolerances& tol = {});

/// Spec plus the clustered relation matrix, validated through the scheme
/// axioms. Throws CoherenceFailure when the inner-product classes do not
/// form an association scheme (this happens for the icosidodecahedron: its
/// 0-value class is provably incoherent, so no symmetric scheme embeds onto
/// those 30 points).
GeneratedScheme generate(Polyhedron label, const Tolerances& tol = {});

/// Distance schemes of the negative controls: C3..C12, Petersen, H(2,2),
/// H(4,2), J(5,2), K2, GD(2,3). Throws UnknownName otherwise.
RelationMatrix generate_negative(const std::string& name);
std::vector<std::string> negative_names();

struct MarginReport {
  Polyhedron label;
  double alpha = 0.0;          // max pairwise inner product of the vertices
  double covering_min = 0.0;   // min over mesh points of max_x <p, x>
  double mesh_step = 0.0;      // requested resolution; also the subtracted slack
  double covering_radius = 0.0;  // measured mesh covering radius (radians)
  double certified_margin = 0.0;  // covering_min - alpha - mesh_step, > 0
  std::size_t mesh_vertices = 0;
};

/// Certifies that every point of S^2 has inner product > alpha with some
/// vertex, i.e. adding any point strictly increases the maximum inner
/// product. Samples a subdivided-icosahedron geodesic mesh with edges at
/// most mesh_step apart and subtracts mesh_step as the worst-case
/// discretization error (the measured covering radius is checked to be below
/// it). Throws MarginNotCertified when the remaining margin is not positive.
MarginReport covering_increase_check(const PolyhedronSpec& spec, double mesh_step);

}  // namespace assoc
