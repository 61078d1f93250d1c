// Scheme text format parsing/serialization, the run manifest, and the batch
// pipeline.
#pragma once

#include "assoc/classifier.hpp"
#include "assoc/scheme.hpp"
#include "assoc/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace assoc {

/// Parses the "n d" + matrix text format ('#' starts a comment). Checks only
/// local well-formedness: header, row shape, entry range, symmetry. Global
/// axioms (identity relation, index coverage, coherence) belong to
/// validate_scheme. Errors name the offending line/column.
RelationMatrix parse_scheme_file(const std::string& text);

std::string serialize_scheme(const RelationMatrix& m);

struct ManifestInput {
  std::string id;
  std::string path;
};

struct RunOptions {
  double tol_eig = Tolerances{}.eig_cluster_rel;
  double tol_gram = Tolerances{}.gram_abs;
  double mesh_step = 0.005;
  int workers = 1;
  std::string output_dir;

  Tolerances tolerances() const {
    Tolerances t;
    t.eig_cluster_rel = tol_eig;
    t.gram_abs = tol_gram;
    return t;
  }
};

struct RunResult {
  std::string id;
  std::optional<ClassificationResult> result;  // absent when error is set
  std::string error;                           // structured error text
  double millis = 0.0;
};

struct RunManifest {
  std::vector<ManifestInput> inputs;
  RunOptions options;
  std::vector<RunResult> results;
};

RunManifest parse_manifest(const std::string& json_text);
std::string serialize_manifest(const RunManifest& manifest);

/// Classifies every input independently; a failure on one input never aborts
/// the batch. Entries run on options.workers threads; results are sorted by
/// input id regardless of completion order.
void run_pipeline(RunManifest& manifest);

/// "<id> <verdict|REJECTED:reason|ERROR:code> n=<n> j=<idempotent> alpha=<value>"
std::string verdict_line(const std::string& id, const ClassificationResult& result);
std::string result_line(const RunResult& result);

std::string format_significant(double value);  // 12 significant digits

}  // namespace assoc
