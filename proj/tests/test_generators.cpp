#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "meissner/error.hpp"
#include "meissner/generators.hpp"
#include "support.hpp"

using namespace meissner;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::Geometry;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("meissner_test_" + name);
}

} // namespace

TEST_CASE("regular_tetrahedron") {
  const auto t = regular_tetrahedron();
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) CHECK(std::abs((t[i] - t[j]).norm() - 1.0) < 1e-15);
  }
  const auto pairs = find_dual_pairs(build_diameter_graph(t), t);
  CHECK(pairs.size() == 3);
  CHECK(std::abs(meissner_area(make_meissner(t)) - testref::tetra_area) < 1e-12);
}

TEST_CASE("regular_pyramid") {
  for (int k = 1; k <= 6; ++k) {
    const auto vs = regular_pyramid(k);
    const int n = 2 * k + 1;
    CHECK(vs.size() == static_cast<std::size_t>(n + 1));
    CHECK(vs.diameter_count() == 2 * n);
    CHECK(find_dual_pairs(build_diameter_graph(vs), vs).size() == static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) CHECK(std::abs(vs[i].norm() - 1.0) < 1e-15);
    for (int i = 0; i < n; ++i) {
      const double diag = (vs[1 + i] - vs[1 + (i + k) % n]).norm();
      CHECK(std::abs(diag - 1.0) < 1e-12);
      if (k > 1) CHECK(spherical::chord_to_arc((vs[1 + i] - vs[1 + (i + 1) % n]).norm()) < testref::pi / 3);
    }
  }
  CHECK(kind_of([] { regular_pyramid(0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("vertex file round trip") {
  const auto path = temp_file("roundtrip.txt");
  for (const auto& vs : {regular_tetrahedron(), regular_pyramid(3)}) {
    save_vertex_file(vs, path);
    const auto back = load_vertex_file(path);
    REQUIRE(back.size() == vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i) CHECK(back[i] == vs[i]);
  }
  std::filesystem::remove(path);
}

TEST_CASE("parse_vertex_set") {
  SUBCASE("comments, blank lines and a consistent EDGES section") {
    std::istringstream in(
        "# tetra\n4\n\n0 0 0\n1 0 0\n0.5 0.8660254037844386 0\n"
        "0.5 0.28867513459481287 0.81649658092772603\nEDGES\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    CHECK(parse_vertex_set(in).diameter_count() == 6);
  }
  SUBCASE("too few points") {
    std::istringstream in("3\n0 0 0\n1 0 0\n0 1 0\n");
    CHECK(kind_of([&] { parse_vertex_set(in); }) == ErrorKind::Parse);
  }
  SUBCASE("bad coordinate line names its line") {
    std::istringstream in("4\n0 0 0\n1 0 x\n0 1 0\n0 0 1\n");
    try {
      parse_vertex_set(in, kDefaultTol, "f.txt");
      FAIL("expected a parse error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Parse);
      CHECK(std::string(e.what()).find("f.txt:3") != std::string::npos);
    }
  }
  SUBCASE("truncated file") {
    std::istringstream in("5\n0 0 0\n1 0 0\n");
    CHECK(kind_of([&] { parse_vertex_set(in); }) == ErrorKind::Parse);
  }
  SUBCASE("EDGES disagreeing with the distances") {
    std::ostringstream out;
    write_vertex_set(out, regular_pyramid(2));
    std::string text = out.str();
    const auto at = text.find("\n1 3\n");
    REQUIRE(at != std::string::npos);
    text.replace(at + 1, 3, "1 2");
    std::istringstream in(text);
    CHECK(kind_of([&] { parse_vertex_set(in); }) == ErrorKind::ValidationMismatch);
  }
  SUBCASE("validation errors propagate") {
    std::istringstream in("4\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n");
    CHECK(kind_of([&] { parse_vertex_set(in); }) == ErrorKind::DiameterViolation);
  }
  SUBCASE("missing file") {
    CHECK(kind_of([] { load_vertex_file("/nonexistent/meissner.txt"); }) == ErrorKind::Io);
  }
}

TEST_CASE("perturbed pyramids from the test helper are valid wheels") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto vs = validate_vertex_set(testref::perturbed_pyramid_points(2, seed, 0.03));
    CHECK(vs.diameter_count() == 10);
    const auto deg = build_diameter_graph(vs).degrees();
    CHECK(deg[0] == 5);
  }
}
