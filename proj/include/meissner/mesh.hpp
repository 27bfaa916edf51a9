#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "meissner/ball_polytope.hpp"

namespace meissner {

struct TriangleMesh {
  struct Group {
    std::string name;
    std::size_t first_face = 0;
    std::size_t face_count = 0;
  };

  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;
  std::vector<Group> groups;
};

/// Triangulates the faces, wedges and spindles of m. Every patch boundary is
/// split into 2^refinement segments so neighbouring patches share vertices.
/// Faces are oriented outward; groups are face_<vertex>, wedge_<pair> and
/// spindle_<pair>.
TriangleMesh tessellate(const MeissnerPolyhedron& m, int refinement);

/// Same construction for the Reuleaux polyhedron B(X): both edges of every
/// dual pair carry wedges.
TriangleMesh tessellate_reuleaux(const VertexSet& vs, const DiameterGraph& g,
                                 std::span<const DualEdgePair> pairs, int refinement);

/// Recursively subdivided icosahedron on the unit sphere.
TriangleMesh icosphere(int depth);

double mesh_area(const TriangleMesh& mesh);

struct MeshTopology {
  int euler_characteristic = 0;
  bool closed = false;   ///< every edge has exactly two incident faces
  bool oriented = false; ///< every directed edge occurs once
};

MeshTopology analyze_topology(const TriangleMesh& mesh);

enum class MeshFormat { Obj, Ply };

/// ASCII OBJ (with groups) or PLY. Throws IoError.
void write_mesh(const TriangleMesh& mesh, const std::filesystem::path& path,
                MeshFormat format = MeshFormat::Obj);

/// Reads the v, f and g records of an OBJ file. Throws IoError or ParseError.
TriangleMesh read_obj(const std::filesystem::path& path);

} // namespace meissner
