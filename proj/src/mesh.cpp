#include "meissner/mesh.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include <Eigen/Geometry>
#include <fmt/format.h>

#include "meissner/error.hpp"

namespace meissner {

namespace {

constexpr double kMergeTol = 1e-12;
constexpr double kCell = 1e-9;

/// Spherical linear interpolation between unit vectors.
Vec3 slerp(const Vec3& a, const Vec3& b, double t) {
  const double angle = std::atan2(a.cross(b).norm(), a.dot(b));
  if (angle < 1e-15) return a;
  const double s = std::sin(angle);
  return (std::sin((1.0 - t) * angle) / s) * a + (std::sin(t * angle) / s) * b;
}

class MeshBuilder {
public:
  explicit MeshBuilder(Vec3 interior) : interior_(std::move(interior)) {}

  int vertex(const Vec3& p) {
    const std::int64_t cx = static_cast<std::int64_t>(std::floor(p.x() / kCell));
    const std::int64_t cy = static_cast<std::int64_t>(std::floor(p.y() / kCell));
    const std::int64_t cz = static_cast<std::int64_t>(std::floor(p.z() / kCell));
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        for (std::int64_t dz = -1; dz <= 1; ++dz) {
          auto it = cells_.find(key(cx + dx, cy + dy, cz + dz));
          if (it == cells_.end()) continue;
          for (int idx : it->second) {
            if ((mesh_.vertices[idx] - p).norm() <= kMergeTol) return idx;
          }
        }
      }
    }
    const int idx = static_cast<int>(mesh_.vertices.size());
    mesh_.vertices.push_back(p);
    cells_[key(cx, cy, cz)].push_back(idx);
    return idx;
  }

  void triangle(const Vec3& a, const Vec3& b, const Vec3& c) {
    std::array<int, 3> f{vertex(a), vertex(b), vertex(c)};
    if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) return;
    const Vec3& pa = mesh_.vertices[f[0]];
    const Vec3& pb = mesh_.vertices[f[1]];
    const Vec3& pc = mesh_.vertices[f[2]];
    const Vec3 n = (pb - pa).cross(pc - pa);
    if (n.dot((pa + pb + pc) / 3.0 - interior_) < 0.0) std::swap(f[1], f[2]);
    mesh_.faces.push_back(f);
  }

  void begin_group(std::string name) {
    close_group();
    mesh_.groups.push_back({std::move(name), mesh_.faces.size(), 0});
  }

  TriangleMesh finish() {
    close_group();
    return std::move(mesh_);
  }

private:
  static std::uint64_t key(std::int64_t x, std::int64_t y, std::int64_t z) {
    std::uint64_t h = static_cast<std::uint64_t>(x) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(y) * 0xC2B2AE3D27D4EB4FULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::uint64_t>(z) * 0x165667B19E3779F9ULL + (h << 6) + (h >> 2);
    return h;
  }

  void close_group() {
    if (!mesh_.groups.empty()) {
      auto& g = mesh_.groups.back();
      g.face_count = mesh_.faces.size() - g.first_face;
    }
  }

  Vec3 interior_;
  TriangleMesh mesh_;
  std::unordered_map<std::uint64_t, std::vector<int>> cells_;
};

/// Geodesic triangle on the unit sphere about `center`, given unit directions.
void sphere_triangle(MeshBuilder& out, const Vec3& center, const Vec3& a, const Vec3& b,
                     const Vec3& c, int depth) {
  if (depth == 0) {
    out.triangle(center + a, center + b, center + c);
    return;
  }
  const Vec3 ab = (a + b).normalized();
  const Vec3 bc = (b + c).normalized();
  const Vec3 ca = (c + a).normalized();
  sphere_triangle(out, center, a, ab, ca, depth - 1);
  sphere_triangle(out, center, ab, b, bc, depth - 1);
  sphere_triangle(out, center, ca, bc, c, depth - 1);
  sphere_triangle(out, center, ab, bc, ca, depth - 1);
}

/// Quad grid over a parametrized patch; (s, t) in [0, 1]^2.
template <typename Surface>
void grid_patch(MeshBuilder& out, int segments, Surface&& surface) {
  const double inv = 1.0 / segments;
  std::vector<Vec3> prev, row;
  for (int i = 0; i <= segments; ++i) {
    row.clear();
    for (int j = 0; j <= segments; ++j) row.push_back(surface(i * inv, j * inv));
    if (i > 0) {
      for (int j = 0; j < segments; ++j) {
        out.triangle(prev[j], row[j], row[j + 1]);
        out.triangle(prev[j], row[j + 1], prev[j + 1]);
      }
    }
    std::swap(prev, row);
  }
}

void face_patch(MeshBuilder& out, const VertexSet& vs, const DiameterGraph& g, int x, int depth) {
  const auto cycle = face_cycle(vs, g, x);
  const Vec3& center = vs[x];
  Vec3 mid = Vec3::Zero();
  for (int v : cycle) mid += (vs[v] - center).normalized();
  mid.normalize();
  const std::size_t k = cycle.size();
  for (std::size_t i = 0; i < k; ++i) {
    const Vec3 a = (vs[cycle[i]] - center).normalized();
    const Vec3 b = (vs[cycle[(i + 1) % k]] - center).normalized();
    sphere_triangle(out, center, mid, a, b, depth);
  }
}

/// The part of the wedge at `edge` lying on the unit sphere about `pole`,
/// between the geodesic and the circular arc joining the edge endpoints.
void half_wedge(MeshBuilder& out, const VertexSet& vs, const Edge& edge, const Arc& arc,
                const Vec3& pole, int segments) {
  const Vec3 from = (vs[edge.a] - pole).normalized();
  const Vec3 to = (vs[edge.b] - pole).normalized();
  grid_patch(out, segments, [&](double s, double t) {
    const Vec3 geodesic = slerp(from, to, s);
    const Vec3 on_arc = (arc.point(s) - pole).normalized();
    return Vec3(pole + slerp(geodesic, on_arc, t));
  });
}

/// Points at unit distance from the retained arc, swept between the smoothed
/// edge endpoints.
void spindle(MeshBuilder& out, const VertexSet& vs, const Edge& smoothed, const Arc& centers,
             int segments) {
  grid_patch(out, segments, [&](double s, double t) {
    const Vec3 c = centers.point(s);
    const Vec3 a = (vs[smoothed.a] - c).normalized();
    const Vec3 b = (vs[smoothed.b] - c).normalized();
    return Vec3(c + slerp(a, b, t));
  });
}

Vec3 centroid(const VertexSet& vs) {
  Vec3 c = Vec3::Zero();
  for (const auto& p : vs.points()) c += p;
  return c / static_cast<double>(vs.size());
}

void check_refinement(int refinement) {
  if (refinement < 1 || refinement > 10) {
    throw Error(ErrorKind::InvalidArgument, "refinement must lie in [1, 10]");
  }
}

void all_faces(MeshBuilder& out, const VertexSet& vs, const DiameterGraph& g, int depth) {
  for (int x = 0; x < static_cast<int>(vs.size()); ++x) {
    out.begin_group(fmt::format("face_{}", x));
    face_patch(out, vs, g, x, depth);
  }
}

} // namespace

TriangleMesh tessellate(const MeissnerPolyhedron& m, int refinement) {
  check_refinement(refinement);
  const int segments = 1 << refinement;
  const auto& vs = m.vertices();
  MeshBuilder out(centroid(vs));
  all_faces(out, vs, m.graph(), refinement);
  for (std::size_t i = 0; i < m.pairs().size(); ++i) {
    const Edge& kept = m.retained_edge(i);
    const Edge& smooth = m.smoothed_edge(i);
    out.begin_group(fmt::format("wedge_{}", i));
    half_wedge(out, vs, kept, m.retained_arc(i), vs[smooth.a], segments);
    half_wedge(out, vs, kept, m.retained_arc(i), vs[smooth.b], segments);
    out.begin_group(fmt::format("spindle_{}", i));
    spindle(out, vs, smooth, m.retained_arc(i), segments);
  }
  return out.finish();
}

TriangleMesh tessellate_reuleaux(const VertexSet& vs, const DiameterGraph& g,
                                 std::span<const DualEdgePair> pairs, int refinement) {
  check_refinement(refinement);
  const int segments = 1 << refinement;
  MeshBuilder out(centroid(vs));
  all_faces(out, vs, g, refinement);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& p = pairs[i];
    out.begin_group(fmt::format("wedge_{}", i));
    half_wedge(out, vs, p.e, p.geometry.arc_e, vs[p.e_dual.a], segments);
    half_wedge(out, vs, p.e, p.geometry.arc_e, vs[p.e_dual.b], segments);
    half_wedge(out, vs, p.e_dual, p.geometry.arc_dual, vs[p.e.a], segments);
    half_wedge(out, vs, p.e_dual, p.geometry.arc_dual, vs[p.e.b], segments);
  }
  return out.finish();
}

TriangleMesh icosphere(int depth) {
  if (depth < 0 || depth > 8) throw Error(ErrorKind::InvalidArgument, "depth must lie in [0, 8]");
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::array<Vec3, 12> v = {Vec3(-1, t, 0), Vec3(1, t, 0),  Vec3(-1, -t, 0), Vec3(1, -t, 0),
                            Vec3(0, -1, t), Vec3(0, 1, t),  Vec3(0, -1, -t), Vec3(0, 1, -t),
                            Vec3(t, 0, -1), Vec3(t, 0, 1),  Vec3(-t, 0, -1), Vec3(-t, 0, 1)};
  for (auto& p : v) p.normalize();
  constexpr std::array<std::array<int, 3>, 20> faces = {{
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
      {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
      {3, 8, 9},  {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1},
  }};
  MeshBuilder out(Vec3::Zero());
  out.begin_group("sphere");
  for (const auto& f : faces) sphere_triangle(out, Vec3::Zero(), v[f[0]], v[f[1]], v[f[2]], depth);
  return out.finish();
}

double mesh_area(const TriangleMesh& mesh) {
  double area = 0.0;
  for (const auto& f : mesh.faces) {
    const Vec3& a = mesh.vertices[f[0]];
    area += 0.5 * (mesh.vertices[f[1]] - a).cross(mesh.vertices[f[2]] - a).norm();
  }
  return area;
}

MeshTopology analyze_topology(const TriangleMesh& mesh) {
  std::map<std::pair<int, int>, int> directed;
  std::map<std::pair<int, int>, int> undirected;
  for (const auto& f : mesh.faces) {
    for (int i = 0; i < 3; ++i) {
      const int a = f[i];
      const int b = f[(i + 1) % 3];
      ++directed[{a, b}];
      ++undirected[{std::min(a, b), std::max(a, b)}];
    }
  }
  MeshTopology topo;
  topo.euler_characteristic = static_cast<int>(mesh.vertices.size()) -
                              static_cast<int>(undirected.size()) +
                              static_cast<int>(mesh.faces.size());
  topo.closed = true;
  for (const auto& [edge, count] : undirected) topo.closed = topo.closed && count == 2;
  topo.oriented = true;
  for (const auto& [edge, count] : directed) topo.oriented = topo.oriented && count == 1;
  return topo;
}

void write_mesh(const TriangleMesh& mesh, const std::filesystem::path& path, MeshFormat format) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  if (format == MeshFormat::Obj) {
    for (const auto& p : mesh.vertices) {
      out << fmt::format("v {:.17g} {:.17g} {:.17g}\n", p.x(), p.y(), p.z());
    }
    auto write_faces = [&](std::size_t first, std::size_t count) {
      for (std::size_t i = first; i < first + count; ++i) {
        const auto& f = mesh.faces[i];
        out << fmt::format("f {} {} {}\n", f[0] + 1, f[1] + 1, f[2] + 1);
      }
    };
    if (mesh.groups.empty()) {
      write_faces(0, mesh.faces.size());
    } else {
      for (const auto& g : mesh.groups) {
        out << "g " << g.name << '\n';
        write_faces(g.first_face, g.face_count);
      }
    }
  } else {
    out << "ply\nformat ascii 1.0\n";
    out << "element vertex " << mesh.vertices.size() << "\n";
    out << "property double x\nproperty double y\nproperty double z\n";
    out << "element face " << mesh.faces.size() << "\n";
    out << "property list uchar int vertex_indices\nend_header\n";
    for (const auto& p : mesh.vertices) {
      out << fmt::format("{:.17g} {:.17g} {:.17g}\n", p.x(), p.y(), p.z());
    }
    for (const auto& f : mesh.faces) out << fmt::format("3 {} {} {}\n", f[0], f[1], f[2]);
  }
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

TriangleMesh read_obj(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  TriangleMesh mesh;
  std::string line;
  int line_no = 0;
  auto close_group = [&] {
    if (!mesh.groups.empty()) {
      mesh.groups.back().face_count = mesh.faces.size() - mesh.groups.back().first_face;
    }
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      double x, y, z;
      if (!(ss >> x >> y >> z)) {
        throw Error(ErrorKind::Parse, fmt::format("{}:{}: bad vertex", path.string(), line_no));
      }
      mesh.vertices.emplace_back(x, y, z);
    } else if (tag == "f") {
      std::array<int, 3> f{};
      for (int& idx : f) {
        std::string token;
        if (!(ss >> token)) {
          throw Error(ErrorKind::Parse, fmt::format("{}:{}: bad face", path.string(), line_no));
        }
        idx = std::stoi(token.substr(0, token.find('/'))) - 1;
      }
      mesh.faces.push_back(f);
    } else if (tag == "g") {
      close_group();
      std::string name;
      ss >> name;
      mesh.groups.push_back({name, mesh.faces.size(), 0});
    }
  }
  close_group();
  return mesh;
}

} // namespace meissner
