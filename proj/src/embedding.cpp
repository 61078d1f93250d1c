#include "assoc/embedding.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace assoc {

EmbeddingData embed(const AdjacencySet& a, const SpectralData& s, int j, const Tolerances& tol) {
  const int n = a.n;
  if (j == 0)
    throw SchemeError(ErrorCode::DegenerateIdempotent,
                      "embedding with respect to E_0 is degenerate");
  if (j < 0 || j > s.d)
    throw SchemeError(ErrorCode::DegenerateIdempotent,
                      "idempotent index " + std::to_string(j) + " out of range");

  const int m = s.m[j];
  const double shell = static_cast<double>(n) / m;
  const RealMatrix g = shell * s.E[j];

  Eigen::SelfAdjointEigenSolver<RealMatrix> es(g);
  const RealVector& w = es.eigenvalues();  // ascending
  const double pos_tol = 1e-8 * std::max(1.0, shell);
  int positive = 0;
  for (int i = 0; i < n; ++i)
    if (w(i) > pos_tol) ++positive;
  if (positive != m)
    throw SchemeError(ErrorCode::RankMismatch,
                      std::to_string(positive) + " positive eigenvalues for rank-" +
                          std::to_string(m) + " idempotent " + std::to_string(j));

  // descending eigenvalue order; one column per embedding coordinate
  RealMatrix points(n, m);
  for (int c = 0; c < m; ++c) {
    const int src = n - 1 - c;
    points.col(c) = es.eigenvectors().col(src) * std::sqrt(w(src));
  }
  for (int c = 0; c < m; ++c) {
    for (int r = 0; r < n; ++r) {
      if (std::abs(points(r, c)) > tol.gram_abs) {
        if (points(r, c) < 0) points.col(c) = -points.col(c);
        break;
      }
    }
  }

  EmbeddingData emb;
  emb.j = j;
  emb.m = m;
  emb.points = std::move(points);
  emb.gram = emb.points * emb.points.transpose();
  emb.values.resize(s.d + 1);
  for (int i = 0; i <= s.d; ++i) emb.values[i] = s.Q(i, j) / m;

  emb.faithful = true;
  for (int i = 1; i <= s.d; ++i)
    if (emb.values[i] > 1.0 - tol.faithful_gap) emb.faithful = false;

  emb.alpha = emb.values[1];
  for (int i = 1; i <= s.d; ++i) emb.alpha = std::max(emb.alpha, emb.values[i]);
  for (int i = 1; i <= s.d; ++i)
    if (std::abs(emb.values[i] - emb.alpha) <= tol.gram_abs) emb.gamma_alpha.push_back(i);

  return emb;
}

MaxInnerRelation max_inner_relation(const EmbeddingData& emb,
                                    std::span<const std::int64_t> valencies) {
  MaxInnerRelation r;
  r.alpha = emb.alpha;
  r.relations = emb.gamma_alpha;
  for (int i : emb.gamma_alpha) r.valency += valencies[static_cast<std::size_t>(i)];
  return r;
}

std::vector<std::vector<int>> connected_components(const IntMatrix& adj) {
  const int n = static_cast<int>(adj.rows());
  std::vector<char> seen(n, 0);
  std::vector<std::vector<int>> comps;
  for (int start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<int> comp{start};
    std::vector<int> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (int y = 0; y < n; ++y) {
        if (adj(x, y) != 0 && !seen[y]) {
          seen[y] = 1;
          comp.push_back(y);
          stack.push_back(y);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

Graph nearest_neighbor_graph(const EmbeddingData& emb, const Tolerances& tol) {
  const int n = static_cast<int>(emb.gram.rows());
  Graph g;
  g.n = n;
  g.adj = IntMatrix::Zero(n, n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x != y && std::abs(emb.gram(x, y) - emb.alpha) <= tol.gram_abs) g.adj(x, y) = 1;

  const int degree0 = g.adj.row(0).sum();
  for (int x = 1; x < n; ++x)
    if (g.adj.row(x).sum() != degree0)
      throw SchemeError(ErrorCode::NonRegular,
                        "alpha edge set has degrees " + std::to_string(degree0) + " and " +
                            std::to_string(g.adj.row(x).sum()));
  g.valency = degree0;
  g.components = connected_components(g.adj);
  return g;
}

}  // namespace assoc
