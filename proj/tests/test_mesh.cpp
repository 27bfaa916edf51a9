#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "meissner/error.hpp"
#include "meissner/generators.hpp"
#include "meissner/mc_oracle.hpp"
#include "meissner/mesh.hpp"
#include "support.hpp"

using namespace meissner;
using testref::pi;

namespace {

/// Largest constraint distance at p; equals one on the boundary of the body.
double gauge(const BallSystem& sys, const Vec3& p) {
  double d = 0.0;
  for (const auto& c : sys.point_centers) d = std::max(d, (p - c).norm());
  for (const auto& a : sys.arc_centers) d = std::max(d, a.max_distance(p));
  return d;
}

double group_area(const TriangleMesh& mesh, const std::string& prefix) {
  double area = 0.0;
  for (const auto& g : mesh.groups) {
    if (g.name.rfind(prefix, 0) != 0) continue;
    for (std::size_t i = g.first_face; i < g.first_face + g.face_count; ++i) {
      const auto& f = mesh.faces[i];
      const Vec3& a = mesh.vertices[f[0]];
      area += 0.5 * (mesh.vertices[f[1]] - a).cross(mesh.vertices[f[2]] - a).norm();
    }
  }
  return area;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("meissner_test_" + name);
}

} // namespace

TEST_CASE("icosphere") {
  const auto s = icosphere(5);
  CHECK(std::abs(mesh_area(s) - 4 * pi) / (4 * pi) < 1e-3);
  const auto topo = analyze_topology(s);
  CHECK(topo.euler_characteristic == 2);
  CHECK(topo.closed);
  CHECK(topo.oriented);
}

TEST_CASE("tessellate") {
  const auto m = make_meissner(regular_tetrahedron());
  const double exact = meissner_area(m);

  SUBCASE("area converges at second order") {
    double previous = 0.0;
    for (int r = 1; r <= 5; ++r) {
      const double err = std::abs(mesh_area(tessellate(m, r)) - exact);
      if (r == 4) CHECK(err / exact < 0.01);
      if (r >= 2) {
        CHECK(err < previous);
        CHECK(previous / err > 3.0);
        CHECK(previous / err < 5.0);
      }
      previous = err;
    }
  }
  SUBCASE("closed, oriented, sphere topology") {
    for (const auto& vs : {regular_tetrahedron(), regular_pyramid(2), regular_pyramid(3)}) {
      const auto topo = analyze_topology(tessellate(make_meissner(vs), 3));
      CHECK(topo.euler_characteristic == 2);
      CHECK(topo.closed);
      CHECK(topo.oriented);
    }
  }
  SUBCASE("vertices lie on the boundary") {
    for (const auto& vs : {regular_tetrahedron(), regular_pyramid(2)}) {
      const auto mm = make_meissner(vs);
      const auto sys = meissner_system(mm);
      const auto mesh = tessellate(mm, 3);
      double worst = 0.0;
      for (const auto& p : mesh.vertices) worst = std::max(worst, std::abs(gauge(sys, p) - 1.0));
      CHECK(worst < 1e-9);
    }
  }
  SUBCASE("patch groups match the patch areas") {
    const auto mesh = tessellate(m, 5);
    CHECK(group_area(mesh, "face_") == doctest::Approx(4 * testref::tetra_face).epsilon(5e-3));
    CHECK(group_area(mesh, "wedge_") == doctest::Approx(3 * testref::tetra_wedge).epsilon(5e-3));
    CHECK(group_area(mesh, "spindle_") == doctest::Approx(3 * testref::tetra_spindle).epsilon(5e-3));
    CHECK(mesh.groups.size() == 10);
  }
  SUBCASE("refinement range") {
    CHECK_THROWS_AS(tessellate(m, 0), Error);
  }
}

TEST_CASE("tessellate_reuleaux") {
  const auto vs = regular_tetrahedron();
  const auto g = build_diameter_graph(vs);
  const auto pairs = find_dual_pairs(g, vs);
  const auto mesh = tessellate_reuleaux(vs, g, pairs, 5);
  CHECK(std::abs(mesh_area(mesh) - testref::reuleaux_tetra_area) / testref::reuleaux_tetra_area < 0.01);
  const auto topo = analyze_topology(mesh);
  CHECK(topo.euler_characteristic == 2);
  CHECK(topo.closed);
  CHECK(topo.oriented);
  const auto sys = reuleaux_system(vs, pairs);
  double worst = 0.0;
  for (const auto& p : mesh.vertices) worst = std::max(worst, std::abs(gauge(sys, p) - 1.0));
  CHECK(worst < 1e-9);
}

TEST_CASE("write_mesh and read_obj") {
  const auto mesh = tessellate(make_meissner(regular_pyramid(2)), 2);
  const auto obj = temp_file("mesh.obj");
  write_mesh(mesh, obj, MeshFormat::Obj);
  const auto back = read_obj(obj);
  CHECK(back.vertices.size() == mesh.vertices.size());
  CHECK(back.faces.size() == mesh.faces.size());
  REQUIRE(back.groups.size() == mesh.groups.size());
  for (std::size_t i = 0; i < mesh.groups.size(); ++i) {
    CHECK(back.groups[i].name == mesh.groups[i].name);
    CHECK(back.groups[i].face_count == mesh.groups[i].face_count);
  }
  CHECK(mesh_area(back) == doctest::Approx(mesh_area(mesh)).epsilon(1e-14));
  std::filesystem::remove(obj);

  const auto ply = temp_file("mesh.ply");
  write_mesh(mesh, ply, MeshFormat::Ply);
  std::ifstream in(ply);
  std::string header((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(header.find("element vertex " + std::to_string(mesh.vertices.size())) != std::string::npos);
  CHECK(header.find("element face " + std::to_string(mesh.faces.size())) != std::string::npos);
  std::filesystem::remove(ply);

  CHECK_THROWS_AS(write_mesh(mesh, "/nonexistent/dir/m.obj"), Error);
}
