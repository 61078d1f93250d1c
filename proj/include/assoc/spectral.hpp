// Primitive idempotents, eigenmatrices P and Q, multiplicities, and the
// Q-column all-distinct predicate. Binary64 throughout; exactness is
// recovered by integer rounding checks.
#pragma once

#include "assoc/scheme.hpp"
#include "assoc/types.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace assoc {

/// E[j] are the orthogonal projectors onto the common eigenspaces, E[0] =
/// J/n. P(j,i) is the eigenvalue of A_i on eigenspace j, so A_i =
/// sum_j P(j,i) E_j; Q(i,j) gives E_j = (1/n) sum_i Q(i,j) A_i and
/// P*Q = n*I. Ordering after E0: rank descending, ties by lexicographically
/// descending P row.
struct SpectralData {
  int n = 0;
  int d = 0;
  std::vector<RealMatrix> E;
  RealMatrix P;
  RealMatrix Q;
  std::vector<int> m;            // multiplicities m_j = rank(E_j)
  std::vector<std::int64_t> k;   // valencies, copied from the tensor
};

/// Finds the d+1 common eigenspaces by eigendecomposition of a seeded random
/// integer combination of the A_i, clustering eigenvalues at relative
/// tolerance tol.eig_cluster_rel. Redraws up to 5 times when the cluster
/// count is not d+1 or the clusters are too close to separate reliably, then
/// throws DegenerateSplit. Deterministic for a fixed input.
SpectralData compute_idempotents(const AdjacencySet& a, const IntersectionTensor& t,
                                 const Tolerances& tol = {});

/// P from projector traces, Q = n * P^-1. Throws SingularP when P is not
/// invertible (impossible for a valid scheme).
std::pair<RealMatrix, RealMatrix> eigenmatrices(const SpectralData& s, const AdjacencySet& a);

/// True iff the d+1 values Q(i,j), i = 0..d, are pairwise distinct. This is
/// the necessary Q-polynomial-style condition the classifier relies on.
bool is_q_polynomial_for(const SpectralData& s, int j, const Tolerances& tol = {});

}  // namespace assoc
