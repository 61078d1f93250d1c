#include "assoc/classifier.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <string>

namespace assoc {

const char* to_string(RejectionReason reason) {
  switch (reason) {
    case RejectionReason::NoRank3Idempotent: return "NoRank3Idempotent";
    case RejectionReason::Unfaithful: return "Unfaithful";
    case RejectionReason::ValencyOneAntipodalPair: return "ValencyOneAntipodalPair";
    case RejectionReason::ValencyTwoExcluded: return "ValencyTwoExcluded";
    case RejectionReason::ValencyBoundExceeded: return "ValencyBoundExceeded";
    case RejectionReason::ComponentMismatch: return "ComponentMismatch";
    case RejectionReason::Disconnected: return "Disconnected";
  }
  return "UnknownReason";
}

RejectionReason rejection_from_string(const std::string& name) {
  for (RejectionReason r :
       {RejectionReason::NoRank3Idempotent, RejectionReason::Unfaithful,
        RejectionReason::ValencyOneAntipodalPair, RejectionReason::ValencyTwoExcluded,
        RejectionReason::ValencyBoundExceeded, RejectionReason::ComponentMismatch,
        RejectionReason::Disconnected}) {
    if (name == to_string(r)) return r;
  }
  throw SchemeError(ErrorCode::UnknownName, "no rejection reason named '" + name + "'");
}

AntipodalFinding check_valency_one(const AdjacencySet& a, const SpectralData& s,
                                   const EmbeddingData& emb, int r, const Tolerances& tol) {
  if (s.k[static_cast<std::size_t>(r)] != 1)
    throw std::invalid_argument("check_valency_one requires a valency-1 relation");

  const double v = emb.values[static_cast<std::size_t>(r)];
  if (std::abs(v + 1.0) > tol.gram_abs) {
    // A_r^2 = A_0 forces v = +/-1; +1 contradicts the faithfulness flag
    throw SchemeError(ErrorCode::FaithfulnessContradiction,
                      "valency-1 relation " + std::to_string(r) + " has inner product " +
                          std::to_string(v) + " instead of -1");
  }

  AntipodalFinding finding;
  finding.relation = r;
  finding.pairing.assign(a.n, -1);
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y)
      if (a.A[static_cast<std::size_t>(r)](x, y) == 1) finding.pairing[x] = y;

  const bool in_gamma =
      std::find(emb.gamma_alpha.begin(), emb.gamma_alpha.end(), r) != emb.gamma_alpha.end();
  finding.two_point_scheme = (a.d == 1 && a.n == 2 && in_gamma);
  return finding;
}

std::vector<std::vector<int>> cycle_decomposition(const IntMatrix& adj) {
  const int n = static_cast<int>(adj.rows());
  std::vector<std::vector<int>> neighbors(n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y)
      if (adj(x, y) != 0) neighbors[x].push_back(y);
    if (neighbors[x].size() != 2)
      throw std::invalid_argument("cycle_decomposition requires a 2-regular graph");
  }

  std::vector<char> seen(n, 0);
  std::vector<std::vector<int>> cycles;
  for (int start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<int> cycle{start};
    seen[start] = 1;
    int prev = start;
    int cur = neighbors[start][0];
    while (cur != start) {
      seen[cur] = 1;
      cycle.push_back(cur);
      const auto& nb = neighbors[cur];
      const int next = (nb[0] == prev) ? nb[1] : nb[0];
      prev = cur;
      cur = next;
    }
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

PolygonReport analyze_valency_two(const AdjacencySet& a, const SpectralData& s,
                                  const EmbeddingData& emb, int r, bool assume_gamma_alpha,
                                  const Tolerances& tol) {
  if (s.k[static_cast<std::size_t>(r)] != 2)
    throw std::invalid_argument("analyze_valency_two requires a valency-2 relation");
  const int n = a.n;

  // (a) disjoint cycles of one common length
  const auto cycles = cycle_decomposition(a.A[static_cast<std::size_t>(r)]);
  const int ell = static_cast<int>(cycles[0].size());
  for (const auto& c : cycles)
    if (static_cast<int>(c.size()) != ell)
      throw SchemeError(ErrorCode::UnequalCycleLengths,
                        "cycle lengths " + std::to_string(ell) + " and " +
                            std::to_string(c.size()) + " in relation " + std::to_string(r));

  // (b) recover t from v_r = cos(2 pi t / ell)
  const double v_r = emb.values[static_cast<std::size_t>(r)];
  const double theta = std::acos(std::clamp(v_r, -1.0, 1.0));
  const int t = static_cast<int>(std::lround(theta * ell / (2.0 * std::numbers::pi)));
  if (std::abs(std::cos(2.0 * std::numbers::pi * t / ell) - v_r) > tol.gram_abs)
    throw SchemeError(ErrorCode::ValueProfileMismatch,
                      "v_r = " + std::to_string(v_r) + " is not a cosine of a multiple of 2pi/" +
                          std::to_string(ell));

  // distance classes along the cycles must be single scheme relations with
  // the cosine profile
  const int half = ell / 2;
  std::vector<std::int64_t> pairs_per_relation(a.d + 1, 0);
  for (int i = 1; i <= a.d; ++i)
    pairs_per_relation[i] = static_cast<std::int64_t>(n) * s.k[static_cast<std::size_t>(i)];

  for (int dist = 1; dist <= half; ++dist) {
    std::map<int, std::int64_t> hits;  // relation index -> ordered pair count
    for (const auto& cycle : cycles) {
      for (int idx = 0; idx < ell; ++idx) {
        const int x = cycle[static_cast<std::size_t>(idx)];
        const int y = cycle[static_cast<std::size_t>((idx + dist) % ell)];
        hits[a.relations(x, y)] += 2;  // both orders
      }
    }
    if (dist * 2 == ell)
      for (auto& [rel, count] : hits) count /= 2;  // antipodal pairs were walked twice

    if (hits.size() != 1)
      throw SchemeError(ErrorCode::DistanceRelationSplit,
                        "distance-" + std::to_string(dist) + " class meets " +
                            std::to_string(hits.size()) + " relations");
    const auto [rel, count] = *hits.begin();
    if (rel == 0)
      throw SchemeError(ErrorCode::DistanceRelationSplit,
                        "distance-" + std::to_string(dist) + " pairs collapse onto the identity");
    if (count != pairs_per_relation[rel])
      throw SchemeError(ErrorCode::DistanceRelationSplit,
                        "relation " + std::to_string(rel) + " extends beyond the distance-" +
                            std::to_string(dist) + " class");

    const double expected = std::cos(2.0 * std::numbers::pi * dist * t / ell);
    if (std::abs(emb.values[static_cast<std::size_t>(rel)] - expected) > tol.gram_abs)
      throw SchemeError(ErrorCode::ValueProfileMismatch,
                        "distance-" + std::to_string(dist) + " value " +
                            std::to_string(emb.values[static_cast<std::size_t>(rel)]) +
                            " differs from cos(2 pi i t / ell) = " + std::to_string(expected));
  }

  // (c) coprimality under faithfulness; t = 1 under the gamma_alpha hypothesis
  if (emb.faithful && std::gcd(t, ell) != 1)
    throw SchemeError(ErrorCode::NotCoprimeT, "gcd(" + std::to_string(t) + ", " +
                                                  std::to_string(ell) + ") > 1 for a faithful embedding");
  const bool in_gamma =
      std::find(emb.gamma_alpha.begin(), emb.gamma_alpha.end(), r) != emb.gamma_alpha.end();
  if ((in_gamma || assume_gamma_alpha) && t != 1)
    throw SchemeError(ErrorCode::TNotOne,
                      "t = " + std::to_string(t) +
                          " contradicts maximality of the inner product on relation " +
                          std::to_string(r));

  // (d) each consecutive triple spans a plane through the origin
  double defect = 0.0;
  for (const auto& cycle : cycles) {
    for (int idx = 0; idx < ell; ++idx) {
      RealMatrix triple(3, emb.m);
      for (int off = 0; off < 3; ++off)
        triple.row(off) = emb.points.row(cycle[static_cast<std::size_t>((idx + off) % ell)]);
      Eigen::JacobiSVD<RealMatrix> svd(triple);
      if (svd.singularValues().size() >= 3)
        defect = std::max(defect, svd.singularValues()(2));
    }
  }
  if (defect > tol.coplanar_abs)
    throw SchemeError(ErrorCode::CoplanarityViolation,
                      "coplanarity defect " + std::to_string(defect));

  PolygonReport report;
  report.ell = ell;
  report.t = t;
  report.components = static_cast<int>(cycles.size());
  report.coplanarity_defect = defect;
  return report;
}

RejectionOrPass exclude_valency_two_in_s2(const PolygonReport& report, int m,
                                          const Tolerances& tol) {
  if (m != 3) return {};

  if (report.components == 1) {
    // the scheme would be a single ell-gon; make the contradiction concrete
    RelationMatrix cycle;
    cycle.n = report.ell;
    cycle.d = report.ell / 2;
    cycle.entries = IntMatrix::Zero(report.ell, report.ell);
    for (int i = 0; i < report.ell; ++i)
      for (int j = 0; j < report.ell; ++j) {
        const int delta = std::abs(i - j);
        cycle.entries(i, j) = std::min(delta, report.ell - delta);
      }
    const AdjacencySet a = validate_scheme(cycle);
    const SpectralData s = compute_idempotents(a, intersection_numbers(a), tol);
    for (int mult : s.m)
      if (mult == 3)
        throw SchemeError(ErrorCode::ValueProfileMismatch,
                          "ell-cycle scheme unexpectedly has a rank-3 idempotent");
  }

  return {RejectionReason::ValencyTwoExcluded};
}

namespace {

// next vertex chosen adjacent to the mapped prefix; candidates pruned by
// adjacency agreement with every mapped vertex
bool extend_isomorphism(const IntMatrix& a, const IntMatrix& b, const std::vector<int>& order,
                        std::vector<int>& image, std::vector<char>& used, std::size_t depth) {
  if (depth == order.size()) return true;
  const int x = order[depth];
  const int n = static_cast<int>(a.rows());
  for (int y = 0; y < n; ++y) {
    if (used[y]) continue;
    bool ok = true;
    for (std::size_t i = 0; i < depth && ok; ++i)
      if (a(x, order[i]) != b(y, image[order[i]])) ok = false;
    if (!ok) continue;
    image[x] = y;
    used[y] = 1;
    if (extend_isomorphism(a, b, order, image, used, depth + 1)) return true;
    used[y] = 0;
    image[x] = -1;
  }
  return false;
}

}  // namespace

bool graphs_isomorphic(const IntMatrix& a, const IntMatrix& b) {
  const int n = static_cast<int>(a.rows());
  if (b.rows() != n) return false;

  std::vector<int> deg_a(n), deg_b(n);
  for (int x = 0; x < n; ++x) {
    deg_a[x] = a.row(x).sum();
    deg_b[x] = b.row(x).sum();
  }
  {
    auto sa = deg_a, sb = deg_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }

  // BFS order keeps each new vertex attached to the mapped prefix
  std::vector<int> order;
  std::vector<char> visited(n, 0);
  for (int start = 0; start < n; ++start) {
    if (visited[start]) continue;
    std::vector<int> queue{start};
    visited[start] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int x = queue[head];
      order.push_back(x);
      for (int y = 0; y < n; ++y)
        if (a(x, y) != 0 && !visited[y]) {
          visited[y] = 1;
          queue.push_back(y);
        }
    }
  }

  std::vector<int> image(n, -1);
  std::vector<char> used(n, 0);
  return extend_isomorphism(a, b, order, image, used, 0);
}

namespace {

using GramMultiset = std::vector<std::pair<double, std::int64_t>>;  // value -> pair count, desc

GramMultiset gram_multiset(const RealMatrix& gram, const std::vector<int>& vertices,
                           double value_tol) {
  GramMultiset out;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      const double v = gram(vertices[i], vertices[j]);
      bool found = false;
      for (auto& [val, count] : out)
        if (std::abs(val - v) <= value_tol) {
          ++count;
          found = true;
        }
      if (!found) out.emplace_back(v, 1);
    }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  return out;
}

struct CatalogEntry {
  Polyhedron label;
  int n;
  int valency;
  GramMultiset values;
  IntMatrix adj;
};

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> out;
    for (Polyhedron label : all_polyhedra()) {
      const PolyhedronSpec spec = polyhedron_spec(label);
      const int n = spec.expected_n;
      const RealMatrix gram = spec.vertices * spec.vertices.transpose();
      std::vector<int> all(n);
      std::iota(all.begin(), all.end(), 0);
      CatalogEntry e{label, n, spec.expected_valency, gram_multiset(gram, all, 1e-8),
                     IntMatrix::Zero(n, n)};
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (x != y && std::abs(gram(x, y) - spec.expected_alpha) <= 1e-9) e.adj(x, y) = 1;
      out.push_back(std::move(e));
    }
    return out;
  }();
  return entries;
}

IntMatrix induced_adjacency(const IntMatrix& adj, const std::vector<int>& vertices) {
  const int m = static_cast<int>(vertices.size());
  IntMatrix sub(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) sub(i, j) = adj(vertices[i], vertices[j]);
  return sub;
}

std::optional<Polyhedron> match_component(const IntMatrix& adj, const std::vector<int>& vertices,
                                          int valency, const RealMatrix& gram) {
  const GramMultiset values = gram_multiset(gram, vertices, 1e-8);
  for (const CatalogEntry& entry : catalog_entries()) {
    if (entry.n != static_cast<int>(vertices.size()) || entry.valency != valency) continue;
    if (entry.values.size() != values.size()) continue;
    bool same = true;
    for (std::size_t i = 0; i < values.size() && same; ++i) {
      if (std::abs(entry.values[i].first - values[i].first) > 1e-8 ||
          entry.values[i].second != values[i].second)
        same = false;
    }
    if (!same) continue;
    // fingerprints can in principle collide; confirm by isomorphism
    if (graphs_isomorphic(induced_adjacency(adj, vertices), entry.adj)) return entry.label;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Polyhedron> component_fingerprint(const Graph& g, const EmbeddingData& emb,
                                                const Tolerances&) {
  if (g.components.size() != 1)
    throw std::invalid_argument("component_fingerprint expects a connected graph");
  return match_component(g.adj, g.components[0], g.valency, emb.gram);
}

namespace {

struct CandidateOutcome {
  int stage = 0;  // how far this idempotent progressed; larger = further
  std::optional<Polyhedron> verdict;
  RejectionReason reason = RejectionReason::Unfaithful;
  ClassificationWitness witness;
};

CandidateOutcome run_candidate(const AdjacencySet& a, const SpectralData& s, int j,
                               const Tolerances& tol) {
  CandidateOutcome out;
  out.witness.idempotent = j;

  const EmbeddingData emb = embed(a, s, j, tol);
  out.witness.alpha = emb.alpha;
  out.witness.relations = emb.gamma_alpha;
  if (!emb.faithful) {
    out.stage = 0;
    out.reason = RejectionReason::Unfaithful;
    return out;
  }

  const MaxInnerRelation top = max_inner_relation(emb, s.k);

  for (int r : top.relations) {
    if (s.k[static_cast<std::size_t>(r)] == 1) {
      check_valency_one(a, s, emb, r, tol);
      out.stage = 1;
      out.reason = RejectionReason::ValencyOneAntipodalPair;
      return out;
    }
  }
  for (int r : top.relations) {
    if (s.k[static_cast<std::size_t>(r)] == 2) {
      const PolygonReport report = analyze_valency_two(a, s, emb, r, false, tol);
      const RejectionOrPass excl = exclude_valency_two_in_s2(report, emb.m, tol);
      out.stage = 2;
      out.reason = excl.rejected() ? *excl.rejection : RejectionReason::ComponentMismatch;
      return out;
    }
  }
  if (top.valency > 5) {
    out.stage = 3;
    out.reason = RejectionReason::ValencyBoundExceeded;
    return out;
  }
  if (top.relations.size() != 1) {
    out.stage = 4;
    out.reason = RejectionReason::ComponentMismatch;
    return out;
  }

  const int r = top.relations[0];
  const IntMatrix& adj = a.A[static_cast<std::size_t>(r)];
  const auto components = connected_components(adj);
  const int valency = static_cast<int>(s.k[static_cast<std::size_t>(r)]);

  std::optional<Polyhedron> label;
  for (const auto& comp : components) {
    const auto match = match_component(adj, comp, valency, emb.gram);
    if (!match || (label && *label != *match)) {
      out.stage = 5;
      out.reason = RejectionReason::ComponentMismatch;
      return out;
    }
    label = match;
  }
  if (components.size() > 1) {
    out.stage = 6;
    out.reason = RejectionReason::Disconnected;
    return out;
  }

  out.stage = 7;
  out.verdict = label;
  return out;
}

}  // namespace

ClassificationResult classify_m1_3(const RelationMatrix& m, const Tolerances& tol) {
  const AdjacencySet a = validate_scheme(m);
  const IntersectionTensor t = intersection_numbers(a);
  const SpectralData s = compute_idempotents(a, t, tol);

  ClassificationResult result;
  result.n = a.n;

  std::vector<int> rank3;
  for (int j = 1; j <= a.d; ++j)
    if (s.m[static_cast<std::size_t>(j)] == 3) rank3.push_back(j);
  if (rank3.empty()) {
    result.reason = RejectionReason::NoRank3Idempotent;
    return result;
  }

  std::optional<CandidateOutcome> best;
  for (int j : rank3) {
    CandidateOutcome out = run_candidate(a, s, j, tol);
    if (out.verdict) {
      result.verdict = out.verdict;
      result.witness = out.witness;
      if (polyhedron_spec(*out.verdict).expected_n != a.n)
        throw SchemeError(ErrorCode::ValueProfileMismatch,
                          "verdict vertex count does not match |X|");
      return result;
    }
    if (!best || out.stage > best->stage) best = out;
  }

  result.reason = best->reason;
  result.witness = best->witness;
  return result;
}

}  // namespace assoc
