// Symmetric association schemes: exact validation of the axioms and the
// intersection-number tensor. Everything in this module is integer
// arithmetic; there are no tolerances here.
#pragma once

#include "assoc/types.hpp"

#include <cstdint>
#include <vector>

namespace assoc {

/// A scheme given as the n x n matrix of relation indices. entries(x,y) = i
/// means (x,y) lies in relation R_i; index 0 is the identity relation.
struct RelationMatrix {
  int n = 0;
  int d = 0;
  IntMatrix entries;
};

/// Validated scheme: the relation matrix plus the 0/1 adjacency matrix of
/// each relation. A[0] is the identity and sum(A) is the all-ones matrix.
struct AdjacencySet {
  int n = 0;
  int d = 0;
  IntMatrix relations;
  std::vector<IntMatrix> A;
};

/// p(i,j,k) with A_i * A_j = sum_k p(i,j,k) * A_k, exactly. k holds the
/// valencies k_i = p(i,i,0).
struct IntersectionTensor {
  int d = 0;
  std::vector<std::int64_t> p;
  std::vector<std::int64_t> k;

  std::int64_t at(int i, int j, int kk) const {
    return p[static_cast<std::size_t>((i * (d + 1) + j)) * (d + 1) + kk];
  }
};

/// Checks the scheme axioms exactly: symmetry, identity relation on the
/// diagonal only, every index used, and closure of the adjacency span under
/// multiplication. Throws SchemeError naming the violating pair otherwise.
AdjacencySet validate_scheme(const RelationMatrix& m);

/// Exact intersection numbers of a validated scheme.
IntersectionTensor intersection_numbers(const AdjacencySet& a);

/// Relation matrix with indices 1..d renamed by perm (perm[i-1] is the new
/// name of relation i). Used for relabeling-invariance checks.
RelationMatrix relabel_relations(const RelationMatrix& m, const std::vector<int>& perm);

}  // namespace assoc
