#include "assoc/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace assoc {

namespace {

constexpr std::uint64_t kCombinationSeed = 0x5eedf00dULL;

double spectrum_scale(const RealVector& eigenvalues) {
  return std::max({1.0, std::abs(eigenvalues(0)), std::abs(eigenvalues(eigenvalues.size() - 1))});
}

// Consecutive runs of the sorted eigenvalues, split where the gap exceeds
// rel_tol * scale.
std::vector<std::pair<int, int>> cluster_eigenvalues(const RealVector& w, double rel_tol) {
  const double scale = spectrum_scale(w);
  std::vector<std::pair<int, int>> clusters;
  int begin = 0;
  for (int i = 1; i < w.size(); ++i) {
    if (w(i) - w(i - 1) > rel_tol * scale) {
      clusters.emplace_back(begin, i);
      begin = i;
    }
  }
  clusters.emplace_back(begin, static_cast<int>(w.size()));
  return clusters;
}

double min_cluster_gap(const RealVector& w, const std::vector<std::pair<int, int>>& clusters) {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t c = 1; c < clusters.size(); ++c)
    gap = std::min(gap, w(clusters[c].first) - w(clusters[c - 1].second - 1));
  return gap;
}

}  // namespace

SpectralData compute_idempotents(const AdjacencySet& a, const IntersectionTensor& t,
                                 const Tolerances& tol) {
  const int n = a.n;
  const int d = a.d;

  std::mt19937_64 rng(kCombinationSeed);
  std::uniform_int_distribution<long> coeff(1, 1000000);

  for (int attempt = 0; attempt < 5; ++attempt) {
    RealMatrix b = RealMatrix::Zero(n, n);
    for (int i = 0; i <= d; ++i) b += static_cast<double>(coeff(rng)) * a.A[i].cast<double>();

    Eigen::SelfAdjointEigenSolver<RealMatrix> es(b);
    if (es.info() != Eigen::Success) continue;
    const RealVector& w = es.eigenvalues();
    const RealMatrix& v = es.eigenvectors();

    const auto clusters = cluster_eigenvalues(w, tol.eig_cluster_rel);
    if (static_cast<int>(clusters.size()) != d + 1) continue;
    if (d >= 1 && min_cluster_gap(w, clusters) < tol.eig_gap_rel * spectrum_scale(w)) continue;

    std::vector<RealMatrix> projectors;
    std::vector<int> mult;
    projectors.reserve(d + 1);
    for (const auto& [begin, end] : clusters) {
      const auto block = v.middleCols(begin, end - begin);
      projectors.push_back(block * block.transpose());
      mult.push_back(end - begin);
    }

    // E0 is the cluster holding the all-ones eigenvector.
    const RealVector ones = RealVector::Ones(n);
    int trivial = 0;
    double best = -1.0;
    for (int j = 0; j <= d; ++j) {
      const double mass = ones.dot(projectors[j] * ones);
      if (mass > best) {
        best = mass;
        trivial = j;
      }
    }
    if (std::abs(best - n) > tol.integer_round * n || mult[trivial] != 1) continue;
    std::swap(projectors[0], projectors[trivial]);
    std::swap(mult[0], mult[trivial]);

    // rank by eigenvalue counting must agree with the rounded trace
    bool consistent = true;
    for (int j = 0; j <= d; ++j) {
      const double tr = projectors[j].trace();
      if (std::abs(tr - mult[j]) > tol.integer_round) consistent = false;
    }
    if (!consistent) continue;

    // provisional P rows drive the ordering convention
    RealMatrix p(d + 1, d + 1);
    for (int j = 0; j <= d; ++j)
      for (int i = 0; i <= d; ++i)
        p(j, i) = (a.A[i].cast<double>() * projectors[j]).trace() / mult[j];

    std::vector<int> order(d);
    std::iota(order.begin(), order.end(), 1);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      if (mult[x] != mult[y]) return mult[x] > mult[y];
      for (int i = 1; i <= d; ++i) {
        if (std::abs(p(x, i) - p(y, i)) > tol.gram_abs) return p(x, i) > p(y, i);
      }
      return false;
    });

    SpectralData s;
    s.n = n;
    s.d = d;
    s.E.push_back(std::move(projectors[0]));
    s.m.push_back(1);
    for (int j : order) {
      s.E.push_back(std::move(projectors[j]));
      s.m.push_back(mult[j]);
    }
    s.k = t.k;
    std::tie(s.P, s.Q) = eigenmatrices(s, a);
    return s;
  }

  throw SchemeError(ErrorCode::DegenerateSplit,
                    "common-eigenspace count never reached " + std::to_string(d + 1) +
                        " after 5 coefficient draws");
}

std::pair<RealMatrix, RealMatrix> eigenmatrices(const SpectralData& s, const AdjacencySet& a) {
  const int d = s.d;
  RealMatrix p(d + 1, d + 1);
  for (int j = 0; j <= d; ++j)
    for (int i = 0; i <= d; ++i)
      p(j, i) = (a.A[i].cast<double>() * s.E[j]).trace() / s.m[j];

  Eigen::FullPivLU<RealMatrix> lu(p);
  if (!lu.isInvertible())
    throw SchemeError(ErrorCode::SingularP, "eigenmatrix P is singular; upstream spectral failure");
  RealMatrix q = static_cast<double>(s.n) * lu.inverse();
  return {std::move(p), std::move(q)};
}

bool is_q_polynomial_for(const SpectralData& s, int j, const Tolerances& tol) {
  for (int i = 0; i <= s.d; ++i)
    for (int h = i + 1; h <= s.d; ++h)
      if (std::abs(s.Q(i, j) - s.Q(h, j)) <= tol.value_distinct_abs) return false;
  return true;
}

}  // namespace assoc
