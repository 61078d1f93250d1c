// The spherical embedding with respect to a chosen idempotent and its
// geometric profile: Gram matrix, inner-product value set, alpha and the
// maximum inner product relation.
#pragma once

#include "assoc/scheme.hpp"
#include "assoc/spectral.hpp"
#include "assoc/types.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace assoc {

/// Rows of points are the embedded unit vectors; gram = points*points^T =
/// (n/m) E_j. values[i] is the inner product on relation R_i (values[0]=1);
/// alpha is the maximum over i >= 1 and gamma_alpha the relations attaining
/// it. Coordinates are a convenience fixed only up to orthogonal maps; the
/// Gram matrix is the canonical artifact.
struct EmbeddingData {
  int j = 0;
  int m = 0;
  RealMatrix points;
  RealMatrix gram;
  std::vector<double> values;
  double alpha = 0.0;
  std::vector<int> gamma_alpha;
  bool faithful = false;
};

struct MaxInnerRelation {
  double alpha = 0.0;
  std::vector<int> relations;
  std::int64_t valency = 0;
};

/// adj is the 0/1 edge matrix at inner product alpha; valency its (checked)
/// constant degree; components the vertex sets of the connected components.
struct Graph {
  int n = 0;
  IntMatrix adj;
  int valency = 0;
  std::vector<std::vector<int>> components;
};

/// Embeds via eigendecomposition of (n/m_j) E_j truncated to its m_j
/// positive eigenvalues. Throws DegenerateIdempotent for j = 0 and
/// RankMismatch when the positive-eigenvalue count is not m_j. Column signs
/// are fixed by making the first nonzero coordinate in each column positive.
EmbeddingData embed(const AdjacencySet& a, const SpectralData& s, int j,
                    const Tolerances& tol = {});

/// alpha, the relations attaining it, and their total valency.
MaxInnerRelation max_inner_relation(const EmbeddingData& emb,
                                    std::span<const std::int64_t> valencies);

/// The graph of pairs whose Gram entry is within tol.gram_abs of alpha.
/// Throws NonRegular if the edge set is not regular (it is a union of
/// relations for a valid scheme, hence always regular).
Graph nearest_neighbor_graph(const EmbeddingData& emb, const Tolerances& tol = {});

/// Connected components of a 0/1 adjacency matrix.
std::vector<std::vector<int>> connected_components(const IntMatrix& adj);

}  // namespace assoc
