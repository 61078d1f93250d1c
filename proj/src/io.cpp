#include "assoc/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

namespace assoc {

namespace {

std::string at_line(int line, int column) {
  return " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")";
}

struct Token {
  int value;
  int column;
};

// tokens of one content line; comments already stripped
std::vector<Token> int_tokens(const std::string& line, int line_no) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t begin = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    int value = 0;
    const auto [ptr, ec] = std::from_chars(line.data() + begin, line.data() + i, value);
    if (ec != std::errc() || ptr != line.data() + i)
      throw SchemeError(ErrorCode::BadHeader, "'" + line.substr(begin, i - begin) +
                                                  "' is not an integer" +
                                                  at_line(line_no, static_cast<int>(begin) + 1));
    tokens.push_back({value, static_cast<int>(begin) + 1});
  }
  return tokens;
}

}  // namespace

RelationMatrix parse_scheme_file(const std::string& text) {
  std::istringstream stream(text);
  std::string raw;
  int line_no = 0;

  RelationMatrix m;
  bool have_header = false;
  int rows_read = 0;
  std::vector<int> row_lines;

  while (std::getline(stream, raw)) {
    ++line_no;
    const std::size_t hash = raw.find('#');
    std::string line = (hash == std::string::npos) ? raw : raw.substr(0, hash);
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;

    if (!have_header) {
      const auto tokens = int_tokens(line, line_no);
      if (tokens.size() != 2)
        throw SchemeError(ErrorCode::BadHeader,
                          "expected 'n d'" + at_line(line_no, 1));
      m.n = tokens[0].value;
      m.d = tokens[1].value;
      if (m.n < 1 || m.d < 0)
        throw SchemeError(ErrorCode::BadHeader,
                          "n must be positive and d non-negative" + at_line(line_no, 1));
      m.entries = IntMatrix::Zero(m.n, m.n);
      have_header = true;
      continue;
    }

    if (rows_read >= m.n)
      throw SchemeError(ErrorCode::RaggedRow,
                        "more than " + std::to_string(m.n) + " matrix rows" + at_line(line_no, 1));
    const auto tokens = int_tokens(line, line_no);
    if (static_cast<int>(tokens.size()) != m.n)
      throw SchemeError(ErrorCode::RaggedRow,
                        "row " + std::to_string(rows_read) + " has " +
                            std::to_string(tokens.size()) + " entries, expected " +
                            std::to_string(m.n) + at_line(line_no, 1));
    for (int c = 0; c < m.n; ++c) {
      if (tokens[c].value < 0 || tokens[c].value > m.d)
        throw SchemeError(ErrorCode::EntryOutOfRange,
                          "entry " + std::to_string(tokens[c].value) + " outside [0, " +
                              std::to_string(m.d) + "]" + at_line(line_no, tokens[c].column));
      m.entries(rows_read, c) = tokens[c].value;
    }
    row_lines.push_back(line_no);
    ++rows_read;
  }

  if (!have_header) throw SchemeError(ErrorCode::BadHeader, "empty input");
  if (rows_read != m.n)
    throw SchemeError(ErrorCode::RaggedRow, "read " + std::to_string(rows_read) +
                                                " rows, expected " + std::to_string(m.n));
  for (int x = 0; x < m.n; ++x)
    for (int y = x + 1; y < m.n; ++y)
      if (m.entries(x, y) != m.entries(y, x))
        throw SchemeError(ErrorCode::SymmetryViolation,
                          "entries (" + std::to_string(x) + "," + std::to_string(y) +
                              ") and (" + std::to_string(y) + "," + std::to_string(x) +
                              ") differ" + at_line(row_lines[y], x + 1));
  return m;
}

std::string serialize_scheme(const RelationMatrix& m) {
  std::string out = std::to_string(m.n) + " " + std::to_string(m.d) + "\n";
  for (int x = 0; x < m.n; ++x) {
    for (int y = 0; y < m.n; ++y) {
      if (y) out += ' ';
      out += std::to_string(m.entries(x, y));
    }
    out += '\n';
  }
  return out;
}

std::string format_significant(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of negative zero
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

namespace {

using nlohmann::json;

json result_to_json(const RunResult& r) {
  json j;
  j["id"] = r.id;
  j["millis"] = r.millis;
  if (!r.error.empty()) {
    j["error"] = r.error;
    return j;
  }
  const ClassificationResult& c = *r.result;
  j["n"] = c.n;
  if (c.accepted())
    j["verdict"] = to_string(*c.verdict);
  else
    j["rejected"] = to_string(*c.reason);
  if (c.witness.idempotent >= 0) {
    j["idempotent"] = c.witness.idempotent;
    j["alpha"] = c.witness.alpha;
    j["relations"] = c.witness.relations;
  }
  return j;
}

RunResult result_from_json(const json& j) {
  RunResult r;
  r.id = j.at("id").get<std::string>();
  r.millis = j.value("millis", 0.0);
  if (j.contains("error")) {
    r.error = j["error"].get<std::string>();
    return r;
  }
  ClassificationResult c;
  c.n = j.value("n", 0);
  if (j.contains("verdict")) c.verdict = polyhedron_from_string(j["verdict"].get<std::string>());
  if (j.contains("rejected")) c.reason = rejection_from_string(j["rejected"].get<std::string>());
  if (j.contains("idempotent")) {
    c.witness.idempotent = j["idempotent"].get<int>();
    c.witness.alpha = j.value("alpha", 0.0);
    c.witness.relations = j.value("relations", std::vector<int>{});
  }
  r.result = std::move(c);
  return r;
}

}  // namespace

RunManifest parse_manifest(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw SchemeError(ErrorCode::BadHeader, std::string("manifest is not valid JSON: ") + e.what());
  }

  RunManifest m;
  for (const auto& input : j.value("inputs", json::array())) {
    m.inputs.push_back({input.at("id").get<std::string>(), input.at("path").get<std::string>()});
  }
  if (j.contains("options")) {
    const auto& o = j["options"];
    m.options.tol_eig = o.value("tol_eig", m.options.tol_eig);
    m.options.tol_gram = o.value("tol_gram", m.options.tol_gram);
    m.options.mesh_step = o.value("mesh_step", m.options.mesh_step);
    m.options.workers = o.value("workers", m.options.workers);
    m.options.output_dir = o.value("output_dir", m.options.output_dir);
  }
  for (const auto& r : j.value("results", json::array())) m.results.push_back(result_from_json(r));
  return m;
}

std::string serialize_manifest(const RunManifest& manifest) {
  json j;
  j["inputs"] = json::array();
  for (const auto& input : manifest.inputs)
    j["inputs"].push_back({{"id", input.id}, {"path", input.path}});
  j["options"] = {{"tol_eig", manifest.options.tol_eig},
                  {"tol_gram", manifest.options.tol_gram},
                  {"mesh_step", manifest.options.mesh_step},
                  {"workers", manifest.options.workers},
                  {"output_dir", manifest.options.output_dir}};
  j["results"] = json::array();
  for (const auto& r : manifest.results) j["results"].push_back(result_to_json(r));
  return j.dump(2) + "\n";
}

void run_pipeline(RunManifest& manifest) {
  const Tolerances tol = manifest.options.tolerances();
  manifest.results.assign(manifest.inputs.size(), {});

  auto process = [&](std::size_t idx) {
    const ManifestInput& input = manifest.inputs[idx];
    RunResult r;
    r.id = input.id;
    const auto begin = std::chrono::steady_clock::now();
    try {
      std::ifstream file(input.path);
      if (!file) throw SchemeError(ErrorCode::IoFailure, "cannot open '" + input.path + "'");
      std::stringstream buffer;
      buffer << file.rdbuf();
      const RelationMatrix m = parse_scheme_file(buffer.str());
      r.result = classify_m1_3(m, tol);
    } catch (const SchemeError& e) {
      r.error = e.what();
    } catch (const std::exception& e) {
      r.error = e.what();
    }
    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - begin)
                   .count();
    manifest.results[idx] = std::move(r);
  };

  const int workers = std::max(1, manifest.options.workers);
  if (workers == 1 || manifest.inputs.size() <= 1) {
    for (std::size_t i = 0; i < manifest.inputs.size(); ++i) process(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int count = std::min<std::size_t>(workers, manifest.inputs.size());
    for (int w = 0; w < count; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < manifest.inputs.size(); i = next.fetch_add(1))
          process(i);
      });
    for (auto& t : pool) t.join();
  }

  std::sort(manifest.results.begin(), manifest.results.end(),
            [](const RunResult& x, const RunResult& y) { return x.id < y.id; });
}

std::string verdict_line(const std::string& id, const ClassificationResult& result) {
  std::string line = id + " ";
  line += result.accepted() ? to_string(*result.verdict)
                            : ("REJECTED:" + std::string(to_string(*result.reason)));
  line += " n=" + std::to_string(result.n);
  if (result.witness.idempotent >= 0) {
    line += " j=" + std::to_string(result.witness.idempotent);
    line += " alpha=" + format_significant(result.witness.alpha);
  } else {
    line += " j=- alpha=-";
  }
  return line;
}

std::string result_line(const RunResult& result) {
  if (!result.error.empty()) {
    std::string code = result.error;
    const std::size_t colon = code.find(':');
    if (colon != std::string::npos) code = code.substr(0, colon);
    return result.id + " ERROR:" + code + " n=- j=- alpha=-";
  }
  return verdict_line(result.id, *result.result);
}

}  // namespace assoc
