// The m_1 = 3 classification pipeline: valency-1 and valency-2 exclusions,
// the valency bound on the maximum inner product relation, and catalog
// matching of the resulting graph, returning one of seven polyhedron labels
// or a structured rejection.
#pragma once

#include "assoc/catalog.hpp"
#include "assoc/embedding.hpp"
#include "assoc/scheme.hpp"
#include "assoc/spectral.hpp"
#include "assoc/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace assoc {

enum class RejectionReason {
  NoRank3Idempotent,
  Unfaithful,
  ValencyOneAntipodalPair,
  ValencyTwoExcluded,
  ValencyBoundExceeded,
  ComponentMismatch,
  Disconnected,
};

const char* to_string(RejectionReason reason);
RejectionReason rejection_from_string(const std::string& name);  // throws UnknownName

struct ClassificationWitness {
  int idempotent = -1;         // accepting (or furthest-progressing) index
  std::vector<int> relations;  // the relations of gamma_alpha examined
  double alpha = 0.0;
};

struct ClassificationResult {
  std::optional<Polyhedron> verdict;
  std::optional<RejectionReason> reason;
  ClassificationWitness witness;
  int n = 0;

  bool accepted() const { return verdict.has_value(); }
};

struct AntipodalFinding {
  int relation = -1;
  std::vector<int> pairing;      // pairing[x] is the antipode of x
  bool two_point_scheme = false; // scheme is {R_0, R_r} with r in gamma_alpha
};

/// For a valency-1 relation in a faithful embedding: asserts v_r = -1 and
/// returns the antipodal pairing. Throws FaithfulnessContradiction when
/// v_r = +1 is observed instead.
AntipodalFinding check_valency_one(const AdjacencySet& a, const SpectralData& s,
                                   const EmbeddingData& emb, int r, const Tolerances& tol = {});

struct PolygonReport {
  int ell = 0;         // common cycle length
  int t = 0;           // rotation parameter, v_r = cos(2 pi t / ell)
  int components = 0;  // number of cycles
  double coplanarity_defect = 0.0;
};

/// Decomposes a valency-2 relation into cycles, recovers (ell, t), checks
/// the distance-profile v_i = cos(2 pi i t / ell), that every distance class
/// is exactly one scheme relation, coprimality of t for faithful embeddings,
/// t = 1 when r lies in gamma_alpha (or assume_gamma_alpha is set), and
/// coplanarity of consecutive point triples with the origin.
PolygonReport analyze_valency_two(const AdjacencySet& a, const SpectralData& s,
                                  const EmbeddingData& emb, int r,
                                  bool assume_gamma_alpha = false, const Tolerances& tol = {});

struct RejectionOrPass {
  std::optional<RejectionReason> rejection;
  bool rejected() const { return rejection.has_value(); }
};

/// The Corollary-3 exclusion: in dimension 3 a valency-2 relation inside
/// gamma_alpha is always rejected. When the polygon decomposition has a
/// single component the contradiction is cross-checked concretely: the
/// ell-cycle scheme is built and verified to have no rank-3 idempotent.
RejectionOrPass exclude_valency_two_in_s2(const PolygonReport& report, int m,
                                          const Tolerances& tol = {});

/// Matches a connected graph on embedded points against the seven-solid
/// catalog by (vertex count, valency, Gram value multiset) fingerprint, then
/// confirms by exact adjacency isomorphism. nullopt = NoMatch.
std::optional<Polyhedron> component_fingerprint(const Graph& g, const EmbeddingData& emb,
                                                const Tolerances& tol = {});

/// Full pipeline: validate, spectral decomposition, then for every rank-3
/// idempotent embed and run the case analysis. Accepts when any idempotent
/// yields a catalog match; otherwise reports the rejection from the
/// candidate that progressed furthest.
ClassificationResult classify_m1_3(const RelationMatrix& m, const Tolerances& tol = {});

/// Vertex orders of the cycles of a 2-regular 0/1 adjacency matrix.
std::vector<std::vector<int>> cycle_decomposition(const IntMatrix& adj);

/// Backtracking isomorphism test for small regular graphs.
bool graphs_isomorphic(const IntMatrix& a, const IntMatrix& b);

}  // namespace assoc
