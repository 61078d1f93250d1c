#include "assoc/catalog.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <utility>

namespace assoc {

namespace {

const double kPhi = (1.0 + std::sqrt(5.0)) / 2.0;

RealMatrix normalize_rows(RealMatrix v) {
  for (int r = 0; r < v.rows(); ++r) v.row(r) /= v.row(r).norm();
  return v;
}

RealMatrix tetrahedron_vertices() {
  RealMatrix v(4, 3);
  v << 1, 1, 1, 1, -1, -1, -1, 1, -1, -1, -1, 1;
  return normalize_rows(std::move(v));
}

RealMatrix octahedron_vertices() {
  RealMatrix v(6, 3);
  v << 1, 0, 0, -1, 0, 0, 0, 1, 0, 0, -1, 0, 0, 0, 1, 0, 0, -1;
  return v;
}

RealMatrix cube_vertices() {
  RealMatrix v(8, 3);
  int r = 0;
  for (int sx : {1, -1})
    for (int sy : {1, -1})
      for (int sz : {1, -1}) v.row(r++) << sx, sy, sz;
  return normalize_rows(std::move(v));
}

RealMatrix icosahedron_vertices() {
  RealMatrix v(12, 3);
  int r = 0;
  for (int s1 : {1, -1})
    for (int s2 : {1, -1}) {
      v.row(r++) << 0, s1, s2 * kPhi;
      v.row(r++) << s1, s2 * kPhi, 0;
      v.row(r++) << s2 * kPhi, 0, s1;
    }
  return normalize_rows(std::move(v));
}

RealMatrix dodecahedron_vertices() {
  RealMatrix v(20, 3);
  int r = 0;
  for (int sx : {1, -1})
    for (int sy : {1, -1})
      for (int sz : {1, -1}) v.row(r++) << sx, sy, sz;
  for (int s1 : {1, -1})
    for (int s2 : {1, -1}) {
      v.row(r++) << 0, s1 / kPhi, s2 * kPhi;
      v.row(r++) << s1 / kPhi, s2 * kPhi, 0;
      v.row(r++) << s2 * kPhi, 0, s1 / kPhi;
    }
  return normalize_rows(std::move(v));
}

RealMatrix cuboctahedron_vertices() {
  RealMatrix v(12, 3);
  int r = 0;
  for (int s1 : {1, -1})
    for (int s2 : {1, -1}) {
      v.row(r++) << s1, s2, 0;
      v.row(r++) << s1, 0, s2;
      v.row(r++) << 0, s1, s2;
    }
  return normalize_rows(std::move(v));
}

// edge midpoints of the icosahedron, normalized
RealMatrix icosidodecahedron_vertices() {
  const RealMatrix ico = icosahedron_vertices();
  const RealMatrix g = ico * ico.transpose();
  double max_off = -2.0;
  for (int i = 0; i < 12; ++i)
    for (int j = i + 1; j < 12; ++j) max_off = std::max(max_off, g(i, j));
  RealMatrix v(30, 3);
  int r = 0;
  for (int i = 0; i < 12; ++i)
    for (int j = i + 1; j < 12; ++j)
      if (std::abs(g(i, j) - max_off) < 1e-9) v.row(r++) = ico.row(i) + ico.row(j);
  return normalize_rows(std::move(v));
}

struct LabelInfo {
  const char* name;
  int n;
  int valency;
  double alpha;
  RealMatrix (*vertices)();
};

const LabelInfo& label_info(Polyhedron label) {
  static const std::array<LabelInfo, kPolyhedronCount> table = {{
      {"Tetrahedron", 4, 3, -1.0 / 3.0, &tetrahedron_vertices},
      {"Octahedron", 6, 4, 0.0, &octahedron_vertices},
      {"Cube", 8, 3, 1.0 / 3.0, &cube_vertices},
      {"Icosahedron", 12, 5, 1.0 / std::sqrt(5.0), &icosahedron_vertices},
      {"Cuboctahedron-[3,4,3,4]", 12, 4, 0.5, &cuboctahedron_vertices},
      {"Dodecahedron", 20, 3, std::sqrt(5.0) / 3.0, &dodecahedron_vertices},
      {"Icosidodecahedron-[3,5,3,5]", 30, 4, (1.0 + std::sqrt(5.0)) / 4.0,
       &icosidodecahedron_vertices},
  }};
  return table[static_cast<std::size_t>(label)];
}

}  // namespace

const char* to_string(Polyhedron label) { return label_info(label).name; }

std::vector<Polyhedron> all_polyhedra() {
  std::vector<Polyhedron> all;
  for (int i = 0; i < kPolyhedronCount; ++i) all.push_back(static_cast<Polyhedron>(i));
  return all;
}

Polyhedron polyhedron_from_string(const std::string& name) {
  std::string lower;
  for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  for (Polyhedron p : all_polyhedra()) {
    std::string full = to_string(p);
    std::string base = full.substr(0, full.find('-'));
    std::string base_lower;
    for (char c : base) base_lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (lower == base_lower || name == full) return p;
  }
  if (name == "[3,4,3,4]") return Polyhedron::Cuboctahedron;
  if (name == "[3,5,3,5]") return Polyhedron::Icosidodecahedron;
  throw SchemeError(ErrorCode::UnknownName, "no polyhedron named '" + name + "'");
}

PolyhedronSpec polyhedron_spec(Polyhedron label) {
  const LabelInfo& info = label_info(label);
  PolyhedronSpec spec;
  spec.label = label;
  spec.vertices = info.vertices();
  spec.expected_n = info.n;
  spec.expected_valency = info.valency;
  spec.expected_alpha = info.alpha;
  return spec;
}

RelationMatrix clustered_relation_matrix(const PolyhedronSpec& spec, const Tolerances& tol) {
  const int n = static_cast<int>(spec.vertices.rows());
  const RealMatrix gram = spec.vertices * spec.vertices.transpose();

  std::vector<double> classes;  // distinct off-diagonal values, descending
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x == y) continue;
      bool known = false;
      for (double c : classes)
        if (std::abs(gram(x, y) - c) <= tol.gram_abs) known = true;
      if (!known) classes.push_back(gram(x, y));
    }
  std::sort(classes.begin(), classes.end(), std::greater<>());

  RelationMatrix m;
  m.n = n;
  m.d = static_cast<int>(classes.size());
  m.entries = IntMatrix::Zero(n, n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x == y) continue;
      for (std::size_t c = 0; c < classes.size(); ++c)
        if (std::abs(gram(x, y) - classes[c]) <= tol.gram_abs) {
          m.entries(x, y) = static_cast<int>(c) + 1;
          break;
        }
    }
  return m;
}

GeneratedScheme generate(Polyhedron label, const Tolerances& tol) {
  GeneratedScheme out;
  out.spec = polyhedron_spec(label);
  out.scheme = clustered_relation_matrix(out.spec, tol);
  try {
    validate_scheme(out.scheme);
  } catch (const SchemeError& e) {
    throw SchemeError(ErrorCode::CoherenceFailure,
                      std::string(to_string(label)) +
                          ": inner-product classes are not an association scheme (" + e.what() +
                          ")");
  }
  return out;
}

namespace {

RelationMatrix distance_scheme_from_entries(int n, const IntMatrix& dist) {
  RelationMatrix m;
  m.n = n;
  m.d = dist.maxCoeff();
  m.entries = dist;
  return m;
}

RelationMatrix cycle_scheme(int length) {
  IntMatrix dist(length, length);
  for (int i = 0; i < length; ++i)
    for (int j = 0; j < length; ++j) {
      const int delta = std::abs(i - j);
      dist(i, j) = std::min(delta, length - delta);
    }
  return distance_scheme_from_entries(length, dist);
}

RelationMatrix petersen_scheme() {
  std::vector<std::pair<int, int>> vs;
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b) vs.emplace_back(a, b);
  IntMatrix dist(10, 10);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      if (i == j) {
        dist(i, j) = 0;
        continue;
      }
      const bool disjoint = vs[i].first != vs[j].first && vs[i].first != vs[j].second &&
                            vs[i].second != vs[j].first && vs[i].second != vs[j].second;
      dist(i, j) = disjoint ? 1 : 2;  // Petersen adjacency = disjoint pairs
    }
  return distance_scheme_from_entries(10, dist);
}

RelationMatrix johnson_5_2_scheme() {
  RelationMatrix m = petersen_scheme();
  // J(5,2) distance = 2 - |intersection|, i.e. the Petersen classes swapped
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j)
      if (m.entries(i, j) != 0) m.entries(i, j) = 3 - m.entries(i, j);
  return m;
}

RelationMatrix hamming_scheme(int dim) {
  const int n = 1 << dim;
  IntMatrix dist(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) dist(i, j) = std::popcount(static_cast<unsigned>(i ^ j));
  return distance_scheme_from_entries(n, dist);
}

RelationMatrix two_point_scheme() {
  IntMatrix dist(2, 2);
  dist << 0, 1, 1, 0;
  return distance_scheme_from_entries(2, dist);
}

RelationMatrix group_divisible_2x3_scheme() {
  IntMatrix dist(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      if (i == j)
        dist(i, j) = 0;
      else
        dist(i, j) = (i / 3 == j / 3) ? 1 : 2;  // two groups of three
    }
  return distance_scheme_from_entries(6, dist);
}

}  // namespace

RelationMatrix generate_negative(const std::string& name) {
  if (name.size() >= 2 && (name[0] == 'C' || name[0] == 'c')) {
    bool digits = true;
    for (std::size_t i = 1; i < name.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) digits = false;
    if (digits) {
      const int length = std::stoi(name.substr(1));
      if (length >= 3) return cycle_scheme(length);
    }
  }
  if (name == "Petersen" || name == "petersen") return petersen_scheme();
  if (name == "H(2,2)") return hamming_scheme(2);
  if (name == "H(4,2)") return hamming_scheme(4);
  if (name == "J(5,2)") return johnson_5_2_scheme();
  if (name == "K2" || name == "k2") return two_point_scheme();
  if (name == "GD(2,3)") return group_divisible_2x3_scheme();
  throw SchemeError(ErrorCode::UnknownName, "no negative control named '" + name + "'");
}

std::vector<std::string> negative_names() {
  std::vector<std::string> names;
  for (int l = 3; l <= 12; ++l) names.push_back("C" + std::to_string(l));
  names.insert(names.end(), {"Petersen", "H(2,2)", "H(4,2)", "J(5,2)", "K2", "GD(2,3)"});
  return names;
}

namespace {

struct IcoMesh {
  std::vector<Eigen::Vector3d> verts;
  std::vector<std::array<int, 3>> faces;
};

IcoMesh base_icosphere() {
  IcoMesh mesh;
  const RealMatrix v = icosahedron_vertices();
  for (int i = 0; i < 12; ++i) mesh.verts.push_back(v.row(i).transpose());
  const RealMatrix g = v * v.transpose();
  const double edge_cos = 1.0 / std::sqrt(5.0);
  for (int a = 0; a < 12; ++a)
    for (int b = a + 1; b < 12; ++b) {
      if (std::abs(g(a, b) - edge_cos) > 1e-9) continue;
      for (int c = b + 1; c < 12; ++c)
        if (std::abs(g(a, c) - edge_cos) < 1e-9 && std::abs(g(b, c) - edge_cos) < 1e-9)
          mesh.faces.push_back({a, b, c});
    }
  return mesh;
}

void subdivide(IcoMesh& mesh) {
  std::unordered_map<std::uint64_t, int> midpoint;
  auto mid = [&](int a, int b) {
    const std::uint64_t key =
        (static_cast<std::uint64_t>(std::min(a, b)) << 32) | static_cast<std::uint64_t>(std::max(a, b));
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    Eigen::Vector3d p = (mesh.verts[a] + mesh.verts[b]).normalized();
    mesh.verts.push_back(p);
    const int idx = static_cast<int>(mesh.verts.size()) - 1;
    midpoint.emplace(key, idx);
    return idx;
  };
  std::vector<std::array<int, 3>> next;
  next.reserve(mesh.faces.size() * 4);
  for (const auto& [a, b, c] : mesh.faces) {
    const int ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
    next.push_back({a, ab, ca});
    next.push_back({b, bc, ab});
    next.push_back({c, ca, bc});
    next.push_back({ab, bc, ca});
  }
  mesh.faces = std::move(next);
}

double angle_between(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return std::acos(std::clamp(a.dot(b), -1.0, 1.0));
}

double max_edge_angle(const IcoMesh& mesh) {
  double worst = 0.0;
  for (const auto& [a, b, c] : mesh.faces) {
    worst = std::max(worst, angle_between(mesh.verts[a], mesh.verts[b]));
    worst = std::max(worst, angle_between(mesh.verts[b], mesh.verts[c]));
    worst = std::max(worst, angle_between(mesh.verts[c], mesh.verts[a]));
  }
  return worst;
}

// max over faces of the spherical min-enclosing radius: the circumradius
// when the circumcenter lies inside the face, otherwise half the longest
// edge.
double covering_radius(const IcoMesh& mesh) {
  double worst = 0.0;
  for (const auto& [ia, ib, ic] : mesh.faces) {
    const Eigen::Vector3d& a = mesh.verts[ia];
    const Eigen::Vector3d& b = mesh.verts[ib];
    const Eigen::Vector3d& c = mesh.verts[ic];
    Eigen::Vector3d axis = (b - a).cross(c - a);
    double r;
    if (axis.norm() < 1e-300) {
      r = std::max({angle_between(a, b), angle_between(b, c), angle_between(c, a)}) / 2.0;
    } else {
      axis.normalize();
      if (axis.dot(a + b + c) < 0) axis = -axis;
      // inside test via barycentric sign against each edge plane
      Eigen::Matrix3d basis;
      basis.col(0) = a;
      basis.col(1) = b;
      basis.col(2) = c;
      const Eigen::Vector3d bary = basis.fullPivLu().solve(axis);
      if (bary.minCoeff() >= -1e-12) {
        r = angle_between(axis, a);
      } else {
        r = std::max({angle_between(a, b), angle_between(b, c), angle_between(c, a)}) / 2.0;
      }
    }
    worst = std::max(worst, r);
  }
  return worst;
}

}  // namespace

MarginReport covering_increase_check(const PolyhedronSpec& spec, double mesh_step) {
  if (mesh_step <= 0.0)
    throw SchemeError(ErrorCode::MarginNotCertified, "mesh_step must be positive");

  IcoMesh mesh = base_icosphere();
  constexpr int kMaxSubdivisions = 10;
  int level = 0;
  while (max_edge_angle(mesh) > mesh_step && level < kMaxSubdivisions) {
    subdivide(mesh);
    ++level;
  }
  if (max_edge_angle(mesh) > mesh_step)
    throw SchemeError(ErrorCode::MarginNotCertified,
                      "cannot build a geodesic mesh at step " + std::to_string(mesh_step));

  const int n = static_cast<int>(spec.vertices.rows());
  const RealMatrix gram = spec.vertices * spec.vertices.transpose();
  double alpha = -2.0;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) alpha = std::max(alpha, gram(x, y));

  double covering_min = std::numeric_limits<double>::infinity();
  for (const Eigen::Vector3d& p : mesh.verts) {
    const double f = (spec.vertices * p).maxCoeff();
    covering_min = std::min(covering_min, f);
  }

  const double radius = covering_radius(mesh);
  if (radius > mesh_step)
    throw SchemeError(ErrorCode::MarginNotCertified,
                      "mesh covering radius " + std::to_string(radius) + " exceeds step");

  MarginReport report;
  report.label = spec.label;
  report.alpha = alpha;
  report.covering_min = covering_min;
  report.mesh_step = mesh_step;
  report.covering_radius = radius;
  report.mesh_vertices = mesh.verts.size();
  report.certified_margin = covering_min - alpha - mesh_step;
  if (report.certified_margin <= 0.0)
    throw SchemeError(ErrorCode::MarginNotCertified,
                      std::string(to_string(spec.label)) + ": margin " +
                          std::to_string(covering_min - alpha) +
                          " minus discretization error " + std::to_string(mesh_step) +
                          " is not positive; refine the mesh");
  return report;
}

}  // namespace assoc
