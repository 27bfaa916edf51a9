#pragma once

#include <filesystem>
#include <istream>
#include <string>

#include "meissner/ball_polytope.hpp"

namespace meissner {

/// Unit regular tetrahedron.
VertexSet regular_tetrahedron();

/// Apex at the origin (index 0) and n = 2k+1 base points (indices 1..n)
/// equally spaced on the unit sphere about the apex, at the polar radius that
/// makes every k-step base chord equal to one. The diameter graph is the wheel
/// W_n. k = 1 reproduces the regular tetrahedron.
VertexSet regular_pyramid(int k);

/// Line-oriented vertex file: the count m, then m lines of x y z, then an
/// optional "EDGES" line followed by one "i j" pair per line. Blank lines and
/// lines starting with '#' are ignored.
///
/// Throws ParseError (with line number), DiameterViolation or NotExtremal from
/// validation, and ValidationMismatch when the EDGES section disagrees with the
/// computed diameter graph.
VertexSet parse_vertex_set(std::istream& in, double tol = kDefaultTol,
                           const std::string& source = "<stream>");
VertexSet load_vertex_file(const std::filesystem::path& path, double tol = kDefaultTol);

/// Writes coordinates with 17 significant digits followed by the EDGES section.
void write_vertex_set(std::ostream& out, const VertexSet& vs);
void save_vertex_file(const VertexSet& vs, const std::filesystem::path& path);

} // namespace meissner
