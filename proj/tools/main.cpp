// sphembed: spherical embeddings of symmetric association schemes and the
// classification of faithful 3-dimensional embeddings.
//
// Exit codes: 0 success, 1 structured rejection (single-input mode),
// 2 parse/IO error.

#include "assoc/catalog.hpp"
#include "assoc/classifier.hpp"
#include "assoc/embedding.hpp"
#include "assoc/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace assoc;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitRejected = 1;
constexpr int kExitParse = 2;

bool is_parse_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadHeader:
    case ErrorCode::RaggedRow:
    case ErrorCode::EntryOutOfRange:
    case ErrorCode::SymmetryViolation:
    case ErrorCode::IoFailure:
    case ErrorCode::UnknownName:
      return true;
    default:
      return false;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw SchemeError(ErrorCode::IoFailure, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

RelationMatrix load_scheme(const std::string& path) {
  return parse_scheme_file(read_file(path));
}

void print_matrix(std::ostream& out, const RealMatrix& m) {
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      if (c) out << ' ';
      out << format_significant(m(r, c));
    }
    out << '\n';
  }
}

json matrix_to_json(const RealMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

int cmd_validate(const std::string& path, bool as_json) {
  const RelationMatrix m = load_scheme(path);
  const AdjacencySet a = validate_scheme(m);
  const IntersectionTensor t = intersection_numbers(a);
  if (as_json) {
    json j{{"ok", true}, {"n", a.n}, {"d", a.d}, {"valencies", t.k}};
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "OK n=" << a.n << " d=" << a.d << " valencies:";
    for (int i = 1; i <= a.d; ++i) std::cout << ' ' << t.k[i];
    std::cout << '\n';
  }
  return kExitOk;
}

int cmd_spectra(const std::string& path, bool as_json, const Tolerances& tol) {
  const RelationMatrix m = load_scheme(path);
  const AdjacencySet a = validate_scheme(m);
  const SpectralData s = compute_idempotents(a, intersection_numbers(a), tol);
  if (as_json) {
    json j{{"n", s.n},
           {"d", s.d},
           {"multiplicities", s.m},
           {"P", matrix_to_json(s.P)},
           {"Q", matrix_to_json(s.Q)}};
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "multiplicities:";
    for (int mj : s.m) std::cout << ' ' << mj;
    std::cout << "\nP:\n";
    print_matrix(std::cout, s.P);
    std::cout << "Q:\n";
    print_matrix(std::cout, s.Q);
  }
  return kExitOk;
}

int cmd_embed(const std::string& path, int idempotent, bool with_gram, bool as_json,
              const Tolerances& tol) {
  const RelationMatrix m = load_scheme(path);
  const AdjacencySet a = validate_scheme(m);
  const SpectralData s = compute_idempotents(a, intersection_numbers(a), tol);
  const EmbeddingData emb = embed(a, s, idempotent, tol);
  if (as_json) {
    json j{{"n", a.n},
           {"m", emb.m},
           {"alpha", emb.alpha},
           {"faithful", emb.faithful},
           {"values", emb.values},
           {"gamma_alpha", emb.gamma_alpha},
           {"points", matrix_to_json(emb.points)}};
    if (with_gram) j["gram"] = matrix_to_json(emb.gram);
    std::cout << j.dump() << '\n';
  } else {
    std::cout << a.n << ' ' << emb.m << ' ' << format_significant(emb.alpha) << '\n';
    print_matrix(std::cout, emb.points);
    if (with_gram) {
      std::cout << '\n';
      print_matrix(std::cout, emb.gram);
    }
  }
  return kExitOk;
}

int cmd_classify(const std::string& path, bool as_json, const Tolerances& tol) {
  const RelationMatrix m = load_scheme(path);
  const ClassificationResult result = classify_m1_3(m, tol);
  if (as_json) {
    RunResult r;
    r.id = path;
    r.result = result;
    json j = json::parse(serialize_manifest({{}, {}, {r}}))["results"][0];
    std::cout << j.dump() << '\n';
  } else {
    std::cout << verdict_line(path, result) << '\n';
  }
  return result.accepted() ? kExitOk : kExitRejected;
}

int cmd_catalog(const std::string& name, bool as_json) {
  // positives get a coordinates block as comments; negatives are plain
  bool positive = true;
  Polyhedron label{};
  try {
    label = polyhedron_from_string(name);
  } catch (const SchemeError&) {
    positive = false;
  }

  if (!positive) {
    const RelationMatrix m = generate_negative(name);
    if (as_json) {
      json j{{"name", name}, {"n", m.n}, {"d", m.d}, {"scheme", serialize_scheme(m)}};
      std::cout << j.dump() << '\n';
    } else {
      std::cout << "# " << name << '\n' << serialize_scheme(m);
    }
    return kExitOk;
  }

  const PolyhedronSpec spec = polyhedron_spec(label);
  const RelationMatrix m = clustered_relation_matrix(spec);
  std::string warning;
  try {
    validate_scheme(m);
  } catch (const SchemeError& e) {
    warning = e.what();
  }

  if (as_json) {
    json j{{"name", to_string(label)},
           {"n", m.n},
           {"d", m.d},
           {"alpha", spec.expected_alpha},
           {"scheme", serialize_scheme(m)},
           {"vertices", matrix_to_json(spec.vertices)}};
    if (!warning.empty()) j["warning"] = warning;
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "# " << to_string(label) << " alpha=" << format_significant(spec.expected_alpha)
              << '\n';
    if (!warning.empty()) std::cout << "# warning: " << warning << '\n';
    std::cout << serialize_scheme(m);
    std::cout << "# coordinates (" << spec.vertices.rows() << " x 3)\n";
    for (int r = 0; r < spec.vertices.rows(); ++r)
      std::cout << "# " << format_significant(spec.vertices(r, 0)) << ' '
                << format_significant(spec.vertices(r, 1)) << ' '
                << format_significant(spec.vertices(r, 2)) << '\n';
  }
  return warning.empty() ? kExitOk : kExitRejected;
}

int cmd_covering(const std::string& name, double step, bool as_json) {
  const PolyhedronSpec spec = polyhedron_spec(polyhedron_from_string(name));
  const MarginReport report = covering_increase_check(spec, step);
  if (as_json) {
    json j{{"label", to_string(report.label)},
           {"alpha", report.alpha},
           {"covering_min", report.covering_min},
           {"mesh_step", report.mesh_step},
           {"covering_radius", report.covering_radius},
           {"mesh_vertices", report.mesh_vertices},
           {"certified_margin", report.certified_margin}};
    std::cout << j.dump() << '\n';
  } else {
    std::cout << to_string(report.label) << " covering_min=" << format_significant(report.covering_min)
              << " alpha=" << format_significant(report.alpha)
              << " certified_margin=" << format_significant(report.certified_margin)
              << " mesh_vertices=" << report.mesh_vertices << '\n';
  }
  return kExitOk;
}

int cmd_batch(const std::string& manifest_path, const std::string& out_path, int workers,
              bool as_json, std::optional<double> tol_eig, std::optional<double> tol_gram) {
  RunManifest manifest = parse_manifest(read_file(manifest_path));
  if (workers > 0) manifest.options.workers = workers;
  // flags override the manifest; otherwise the manifest's options stand
  if (tol_eig) manifest.options.tol_eig = *tol_eig;
  if (tol_gram) manifest.options.tol_gram = *tol_gram;
  run_pipeline(manifest);

  if (as_json) {
    std::cout << serialize_manifest(manifest);
  } else {
    for (const RunResult& r : manifest.results) std::cout << result_line(r) << '\n';
  }
  std::string destination = out_path;
  if (destination.empty() && !manifest.options.output_dir.empty())
    destination = manifest.options.output_dir + "/results.json";
  if (!destination.empty()) {
    std::ofstream out(destination);
    if (!out) throw SchemeError(ErrorCode::IoFailure, "cannot write '" + destination + "'");
    out << serialize_manifest(manifest);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spherical embeddings of symmetric association schemes"};
  app.require_subcommand(1);

  bool as_json = false;
  double tol_eig = Tolerances{}.eig_cluster_rel;
  double tol_gram = Tolerances{}.gram_abs;
  app.add_flag("--json", as_json, "machine-readable output");
  app.add_option("--tol-eig", tol_eig, "eigenvalue clustering tolerance (relative)");
  app.add_option("--tol-gram", tol_gram, "inner-product comparison tolerance (absolute)");

  std::string path, name, manifest_path, out_path;
  int idempotent = 1;
  bool with_gram = false;
  double step = 0.005;
  int workers = 0;

  auto* validate = app.add_subcommand("validate", "check the scheme axioms");
  validate->add_option("file", path)->required();

  auto* spectra = app.add_subcommand("spectra", "idempotents, P and Q, multiplicities");
  spectra->add_option("file", path)->required();

  auto* embed = app.add_subcommand("embed", "spherical embedding for one idempotent");
  embed->add_option("file", path)->required();
  embed->add_option("--idempotent", idempotent, "idempotent index (default 1)");
  embed->add_flag("--gram", with_gram, "also print the Gram matrix");

  auto* classify = app.add_subcommand("classify", "run the m1=3 classification");
  classify->add_option("file", path)->required();

  auto* catalog = app.add_subcommand("catalog", "emit a generated scheme");
  catalog->add_option("name", name, "polyhedron or negative-control name")->required();

  auto* covering = app.add_subcommand("covering", "certify the covering margin of a solid");
  covering->add_option("name", name)->required();
  covering->add_option("--step", step, "geodesic mesh step in radians (default 0.005)");

  auto* batch = app.add_subcommand("batch", "classify every input of a JSON manifest");
  batch->add_option("manifest", manifest_path)->required();
  batch->add_option("--out", out_path, "write the completed manifest here");
  batch->add_option("--workers", workers, "worker thread count");

  CLI11_PARSE(app, argc, argv);

  Tolerances tol;
  tol.eig_cluster_rel = tol_eig;
  tol.gram_abs = tol_gram;
  const std::optional<double> eig_override =
      app.count("--tol-eig") ? std::optional<double>(tol_eig) : std::nullopt;
  const std::optional<double> gram_override =
      app.count("--tol-gram") ? std::optional<double>(tol_gram) : std::nullopt;

  try {
    if (validate->parsed()) return cmd_validate(path, as_json);
    if (spectra->parsed()) return cmd_spectra(path, as_json, tol);
    if (embed->parsed()) return cmd_embed(path, idempotent, with_gram, as_json, tol);
    if (classify->parsed()) return cmd_classify(path, as_json, tol);
    if (catalog->parsed()) return cmd_catalog(name, as_json);
    if (covering->parsed()) return cmd_covering(name, step, as_json);
    if (batch->parsed())
      return cmd_batch(manifest_path, out_path, workers, as_json, eig_override, gram_override);
  } catch (const assoc::SchemeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_parse_error(e.code()) ? kExitParse : kExitRejected;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  }
  return kExitOk;
}
