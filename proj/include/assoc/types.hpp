// Common dense types, tolerance knobs and the error type shared by all
// modules. Eigen is the only math dependency.
#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace assoc {

using IntMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Numeric thresholds used across the pipeline. Defaults are the documented
/// contract values; the CLI can override the first two.
struct Tolerances {
  double eig_cluster_rel = 1e-8;  // eigenvalue clustering, relative to spectrum scale
  double eig_gap_rel = 1e-4;      // minimum accepted inter-cluster separation
  double gram_abs = 1e-9;         // inner-product / Gram comparisons
  double faithful_gap = 1e-6;     // v > 1 - faithful_gap counts as a collapsed pair
  double integer_round = 1e-6;    // float -> integer round trips
  double coplanar_abs = 1e-8;     // polygon coplanarity defect bound
  double value_distinct_abs = 1e-6;  // Q-column all-distinct predicate
};

enum class ErrorCode {
  // scheme validation
  NotSymmetric,
  IdentityRelationBroken,
  NotCoherent,
  UnusedRelation,
  EntryOutOfRange,
  // spectral
  DegenerateSplit,
  SingularP,
  // embedding
  DegenerateIdempotent,
  RankMismatch,
  NonRegular,
  // classifier
  FaithfulnessContradiction,
  UnequalCycleLengths,
  DistanceRelationSplit,
  NotCoprimeT,
  TNotOne,
  ValueProfileMismatch,
  CoplanarityViolation,
  // catalog
  UnknownName,
  CoherenceFailure,
  MarginNotCertified,
  // parsing
  BadHeader,
  RaggedRow,
  SymmetryViolation,
  IoFailure,
};

const char* to_string(ErrorCode code);

/// The one exception type of the library; carries a structured code plus a
/// human-readable detail naming the violating pair / line / value.
class SchemeError : public std::runtime_error {
 public:
  SchemeError(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Max-norm distance between two same-shaped dense expressions.
template <typename DerivedA, typename DerivedB>
double max_abs_diff(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return (a.derived() - b.derived()).template lpNorm<Eigen::Infinity>();
}

template <typename Derived>
bool is_symmetric(const Eigen::MatrixBase<Derived>& m) {
  return m.derived() == m.derived().transpose().eval();
}

}  // namespace assoc
