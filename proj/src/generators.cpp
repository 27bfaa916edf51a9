#include "meissner/generators.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "meissner/error.hpp"

namespace meissner {

VertexSet regular_tetrahedron() {
  const double s3 = std::sqrt(3.0);
  return validate_vertex_set({Vec3(0.0, 0.0, 0.0), Vec3(1.0, 0.0, 0.0), Vec3(0.5, s3 / 2.0, 0.0),
                              Vec3(0.5, s3 / 6.0, std::sqrt(2.0 / 3.0))});
}

VertexSet regular_pyramid(int k) {
  if (k < 1) {
    throw Error(ErrorKind::InvalidArgument, "pyramid parameter k must be >= 1");
  }
  const int n = 2 * k + 1;
  const double step = 2.0 * std::numbers::pi / n;
  // Spherical law of cosines: the k-step chord subtends π/3 at the apex.
  const double c = std::cos(step * k);
  const double cos_r = std::sqrt((0.5 - c) / (1.0 - c));
  const double sin_r = std::sqrt(1.0 - cos_r * cos_r);
  std::vector<Vec3> pts;
  pts.reserve(n + 1);
  pts.emplace_back(0.0, 0.0, 0.0);
  for (int j = 0; j < n; ++j) {
    pts.emplace_back(sin_r * std::cos(step * j), sin_r * std::sin(step * j), cos_r);
  }
  return validate_vertex_set(std::move(pts));
}

namespace {

[[noreturn]] void parse_fail(const std::string& source, int line, const std::string& what) {
  throw Error(ErrorKind::Parse, fmt::format("{}:{}: {}", source, line, what));
}

} // namespace

VertexSet parse_vertex_set(std::istream& in, double tol, const std::string& source) {
  std::string raw;
  int line_no = 0;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, raw)) {
      ++line_no;
      const auto first = raw.find_first_not_of(" \t\r");
      if (first == std::string::npos || raw[first] == '#') continue;
      out = raw.substr(first);
      while (!out.empty() && (out.back() == '\r' || out.back() == ' ' || out.back() == '\t')) {
        out.pop_back();
      }
      return true;
    }
    return false;
  };

  std::string line;
  if (!next_line(line)) parse_fail(source, line_no, "missing vertex count");
  long m = 0;
  {
    std::istringstream ss(line);
    std::string rest;
    if (!(ss >> m) || (ss >> rest)) parse_fail(source, line_no, "expected a vertex count");
  }
  if (m < 4) parse_fail(source, line_no, fmt::format("vertex count {} < 4", m));

  std::vector<Vec3> pts;
  pts.reserve(m);
  for (long i = 0; i < m; ++i) {
    if (!next_line(line)) parse_fail(source, line_no, fmt::format("expected {} vertices", m));
    std::istringstream ss(line);
    double x, y, z;
    std::string rest;
    if (!(ss >> x >> y >> z) || (ss >> rest)) {
      parse_fail(source, line_no, "expected three coordinates");
    }
    pts.emplace_back(x, y, z);
  }

  std::vector<Edge> declared;
  bool has_edges = false;
  if (next_line(line)) {
    if (line != "EDGES") parse_fail(source, line_no, "expected EDGES or end of file");
    has_edges = true;
    while (next_line(line)) {
      std::istringstream ss(line);
      long a, b;
      std::string rest;
      if (!(ss >> a >> b) || (ss >> rest)) parse_fail(source, line_no, "expected an index pair");
      if (a < 0 || b < 0 || a >= m || b >= m || a == b) {
        parse_fail(source, line_no, fmt::format("invalid edge {} {}", a, b));
      }
      declared.push_back(make_edge(static_cast<int>(a), static_cast<int>(b)));
    }
  }

  auto vs = validate_vertex_set(std::move(pts), tol);
  if (has_edges) {
    std::sort(declared.begin(), declared.end());
    declared.erase(std::unique(declared.begin(), declared.end()), declared.end());
    if (declared != build_diameter_graph(vs).edges) {
      throw Error(ErrorKind::ValidationMismatch,
                  source + ": EDGES section differs from the computed diameter graph");
    }
  }
  return vs;
}

VertexSet load_vertex_file(const std::filesystem::path& path, double tol) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return parse_vertex_set(in, tol, path.string());
}

void write_vertex_set(std::ostream& out, const VertexSet& vs) {
  out << vs.size() << '\n';
  for (const auto& p : vs.points()) {
    out << fmt::format("{:.17g} {:.17g} {:.17g}\n", p.x(), p.y(), p.z());
  }
  out << "EDGES\n";
  for (const auto& e : build_diameter_graph(vs).edges) out << e.a << ' ' << e.b << '\n';
}

void save_vertex_file(const VertexSet& vs, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  write_vertex_set(out, vs);
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

} // namespace meissner
