#include "assoc/scheme.hpp"

#include <string>
#include <vector>

namespace assoc {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::IdentityRelationBroken: return "IdentityRelationBroken";
    case ErrorCode::NotCoherent: return "NotCoherent";
    case ErrorCode::UnusedRelation: return "UnusedRelation";
    case ErrorCode::EntryOutOfRange: return "EntryOutOfRange";
    case ErrorCode::DegenerateSplit: return "DegenerateSplit";
    case ErrorCode::SingularP: return "SingularP";
    case ErrorCode::DegenerateIdempotent: return "DegenerateIdempotent";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::NonRegular: return "NonRegular";
    case ErrorCode::FaithfulnessContradiction: return "FaithfulnessContradiction";
    case ErrorCode::UnequalCycleLengths: return "UnequalCycleLengths";
    case ErrorCode::DistanceRelationSplit: return "DistanceRelationSplit";
    case ErrorCode::NotCoprimeT: return "NotCoprimeT";
    case ErrorCode::TNotOne: return "TNotOne";
    case ErrorCode::ValueProfileMismatch: return "ValueProfileMismatch";
    case ErrorCode::CoplanarityViolation: return "CoplanarityViolation";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::CoherenceFailure: return "CoherenceFailure";
    case ErrorCode::MarginNotCertified: return "MarginNotCertified";
    case ErrorCode::BadHeader: return "BadHeader";
    case ErrorCode::RaggedRow: return "RaggedRow";
    case ErrorCode::SymmetryViolation: return "SymmetryViolation";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "UnknownError";
}

namespace {

std::string pair_str(int a, int b) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

// Shared by validate_scheme and intersection_numbers: reads off p(i,j,k) from
// A_i*A_j and verifies the product is constant on every relation class.
IntersectionTensor tensor_from_adjacency(const AdjacencySet& a) {
  const int n = a.n;
  const int d = a.d;
  IntersectionTensor t;
  t.d = d;
  t.p.assign(static_cast<std::size_t>(d + 1) * (d + 1) * (d + 1), 0);
  t.k.assign(d + 1, 0);

  for (int i = 0; i <= d; ++i) {
    const std::int64_t row0 = a.A[i].row(0).sum();
    for (int x = 1; x < n; ++x) {
      if (a.A[i].row(x).sum() != row0)
        throw SchemeError(ErrorCode::NotCoherent,
                          "relation " + std::to_string(i) + " has non-constant valency");
    }
    t.k[i] = row0;
  }

  // first representative of each class, for reading the coefficients off
  std::vector<std::pair<int, int>> rep(d + 1, {-1, -1});
  rep[0] = {0, 0};
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const int c = a.relations(x, y);
      if (x != y && rep[c].first < 0) rep[c] = {x, y};
    }
  for (int i = 1; i <= d; ++i)
    if (rep[i].first < 0)
      throw SchemeError(ErrorCode::UnusedRelation,
                        "relation index " + std::to_string(i) + " never occurs");

  for (int i = 0; i <= d; ++i) {
    for (int j = 0; j <= d; ++j) {
      const IntMatrix prod = a.A[i] * a.A[j];
      for (int kk = 0; kk <= d; ++kk) {
        const auto [rx, ry] = rep[kk];
        t.p[static_cast<std::size_t>((i * (d + 1) + j)) * (d + 1) + kk] = prod(rx, ry);
      }
      // the product must be constant on every class or the span is not closed
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          const int c = a.relations(x, y);
          if (prod(x, y) != t.at(i, j, c))
            throw SchemeError(ErrorCode::NotCoherent,
                              "A_i*A_j leaves the adjacency span for pair " + pair_str(i, j) +
                                  ", witnessed at entry " + pair_str(x, y));
        }
    }
  }
  return t;
}

}  // namespace

AdjacencySet validate_scheme(const RelationMatrix& m) {
  const int n = m.n;
  const int d = m.d;
  if (n < 1 || m.entries.rows() != n || m.entries.cols() != n)
    throw SchemeError(ErrorCode::BadHeader, "relation matrix shape does not match n");
  if (d < 0) throw SchemeError(ErrorCode::BadHeader, "negative relation count");

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const int v = m.entries(x, y);
      if (v < 0 || v > d)
        throw SchemeError(ErrorCode::EntryOutOfRange,
                          "entry " + std::to_string(v) + " at " + pair_str(x, y));
      if (m.entries(x, y) != m.entries(y, x))
        throw SchemeError(ErrorCode::NotSymmetric, "entries differ at " + pair_str(x, y));
      if (x == y && v != 0)
        throw SchemeError(ErrorCode::IdentityRelationBroken,
                          "diagonal entry at " + pair_str(x, x) + " is " + std::to_string(v));
      if (x != y && v == 0)
        throw SchemeError(ErrorCode::IdentityRelationBroken,
                          "relation 0 occurs off the diagonal at " + pair_str(x, y));
    }

  std::vector<char> used(d + 1, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) used[m.entries(x, y)] = 1;
  for (int i = 0; i <= d; ++i)
    if (!used[i])
      throw SchemeError(ErrorCode::UnusedRelation,
                        "relation index " + std::to_string(i) + " never occurs");

  AdjacencySet a;
  a.n = n;
  a.d = d;
  a.relations = m.entries;
  a.A.reserve(d + 1);
  for (int i = 0; i <= d; ++i) {
    IntMatrix ai = (m.entries.array() == i).cast<int>().matrix();
    a.A.push_back(std::move(ai));
  }

  tensor_from_adjacency(a);  // throws NotCoherent if the span is not closed
  return a;
}

IntersectionTensor intersection_numbers(const AdjacencySet& a) {
  return tensor_from_adjacency(a);
}

RelationMatrix relabel_relations(const RelationMatrix& m, const std::vector<int>& perm) {
  RelationMatrix out;
  out.n = m.n;
  out.d = m.d;
  out.entries = m.entries;
  for (int x = 0; x < m.n; ++x)
    for (int y = 0; y < m.n; ++y) {
      const int v = m.entries(x, y);
      if (v > 0) out.entries(x, y) = perm.at(static_cast<std::size_t>(v) - 1);
    }
  return out;
}

}  // namespace assoc
