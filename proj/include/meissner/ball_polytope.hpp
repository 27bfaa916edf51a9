#pragma once

// Combinatorics and closed-form metrics of Reuleaux and Meissner polyhedra
// built on an extremal diameter-one vertex set.

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "meissner/arc.hpp"
#include "meissner/spherical.hpp"

namespace meissner {

inline constexpr double kDefaultTol = 1e-9;

/// Unordered vertex pair, stored with a < b.
struct Edge {
  int a = 0;
  int b = 0;

  bool contains(int v) const noexcept { return a == v || b == v; }
  auto operator<=>(const Edge&) const = default;
};

Edge make_edge(int i, int j) noexcept;

/// A point set that passed validate_vertex_set: diameter at most one and the
/// maximal number 2m-2 of unit-distance pairs.
class VertexSet {
public:
  const std::vector<Vec3>& points() const noexcept { return points_; }
  const Vec3& operator[](std::size_t i) const { return points_[i]; }
  std::size_t size() const noexcept { return points_.size(); }
  double tol() const noexcept { return tol_; }
  int diameter_count() const noexcept { return diameter_count_; }
  double max_distance() const noexcept { return max_distance_; }

private:
  friend VertexSet validate_vertex_set(std::vector<Vec3> points, double tol);

  std::vector<Vec3> points_;
  double tol_ = kDefaultTol;
  int diameter_count_ = 0;
  double max_distance_ = 0.0;
};

/// Throws DiameterViolation if some distance exceeds 1 + tol, NotExtremal if
/// m < 4 or the number of pairs within tol of distance 1 is not 2m - 2.
VertexSet validate_vertex_set(std::vector<Vec3> points, double tol = kDefaultTol);

/// Graph of unit-distance pairs.
struct DiameterGraph {
  int vertex_count = 0;
  std::vector<Edge> edges; ///< sorted

  bool has_edge(int i, int j) const;
  std::vector<std::vector<int>> adjacency() const;
  std::vector<int> degrees() const;
};

DiameterGraph build_diameter_graph(const VertexSet& vs);

/// Everything the closed forms need about one dual pair, oriented as (e, e').
struct DualPairGeometry {
  double theta = 0.0;      ///< θ(e)
  double theta_dual = 0.0; ///< θ(e')
  double phi = 0.0;        ///< dihedral angle at e
  double phi_dual = 0.0;   ///< dihedral angle at e'
  double alpha = 0.0;      ///< wedge angle, shared by e and e'
  double d_mid = 0.0;      ///< distance between the edge midpoints
  Arc arc_e;               ///< edge e on ∂B(x') ∩ ∂B(y')
  Arc arc_dual;            ///< edge e' on ∂B(x) ∩ ∂B(y)
};

struct DualEdgePair {
  Edge e;
  Edge e_dual;
  DualPairGeometry geometry;
};

/// Dual pairs as the diagonals of the 4-cycles x-x'-y-y' of the diameter graph.
/// Throws WrongPairCount unless exactly m - 1 pairs are found.
std::vector<DualEdgePair> find_dual_pairs(const DiameterGraph& g, const VertexSet& vs);

/// One bit per dual pair; true smooths the second edge e' (balls are centered
/// on e), false smooths e.
struct SmoothingChoice {
  std::vector<bool> bits;

  bool operator==(const SmoothingChoice&) const = default;
};

/// Smooths the longer edge of every pair. Ties smooth the edge holding the
/// lowest vertex index of the pair.
SmoothingChoice optimal_smoothing(std::span<const DualEdgePair> pairs);

/// (θ(retained), θ(smoothed)) for one pair under one orientation bit.
spherical::PairLengths retained_lengths(const DualEdgePair& pair, bool second_smoothed);

class MeissnerPolyhedron {
public:
  /// Throws WrongPairCount if choice.bits.size() != pairs.size().
  MeissnerPolyhedron(VertexSet vertices, DiameterGraph graph, std::vector<DualEdgePair> pairs,
                     SmoothingChoice choice);

  const VertexSet& vertices() const noexcept { return vertices_; }
  const DiameterGraph& graph() const noexcept { return graph_; }
  const std::vector<DualEdgePair>& pairs() const noexcept { return pairs_; }
  const SmoothingChoice& choice() const noexcept { return choice_; }

  const Edge& retained_edge(std::size_t i) const;
  const Edge& smoothed_edge(std::size_t i) const;
  /// Circular arc of the retained edge; its points are ball centers.
  const Arc& retained_arc(std::size_t i) const;
  const Arc& smoothed_arc(std::size_t i) const;
  spherical::PairLengths lengths(std::size_t i) const;

private:
  VertexSet vertices_;
  DiameterGraph graph_;
  std::vector<DualEdgePair> pairs_;
  SmoothingChoice choice_;
};

/// Builds graph and dual pairs; uses optimal_smoothing when no choice is given.
MeissnerPolyhedron make_meissner(const VertexSet& vs,
                                 std::optional<SmoothingChoice> choice = std::nullopt);

/// 2π - Σ f(θ(retained_i), θ(smoothed_i)).
double area_from_lengths(std::span<const spherical::PairLengths> lengths);

double meissner_area(const MeissnerPolyhedron& m);

/// Blaschke's relation for bodies of constant width one.
double volume_from_area(double area);
double meissner_volume(const MeissnerPolyhedron& m);

/// Surface area of the Reuleaux polyhedron B(X); symmetric in each pair.
double reuleaux_area(std::span<const DualEdgePair> pairs);

struct SmoothingEntry {
  SmoothingChoice choice;
  double area = 0.0;
};

inline constexpr std::size_t kMaxEnumeratedPairs = 20;

/// All 2^(m-1) smoothing choices and their areas, in binary-counter order
/// (entry k sets bit i iff bit i of k is set). Throws TooManyPairs above 20 pairs.
std::vector<SmoothingEntry> enumerate_smoothings(std::span<const DualEdgePair> pairs);

enum class PatchKind { Face, Wedge, Spindle };

const char* to_string(PatchKind kind) noexcept;

struct SurfacePatch {
  PatchKind kind = PatchKind::Face;
  int index = 0; ///< vertex index for faces, pair index otherwise
  double area = 0.0;
  std::vector<int> face_cycle; ///< ordered vertices of a face patch
};

struct SurfaceDecomposition {
  std::vector<SurfacePatch> patches;

  double total_area() const;
  double area_of(PatchKind kind) const;
};

/// Graph neighbors of x ordered cyclically around the axis from x through
/// their centroid. Throws FaceCycle if no such ordering exists.
std::vector<int> face_cycle(const VertexSet& vs, const DiameterGraph& g, int x);

/// Interior angles of the geodesic polygon spanned by `cycle` on the unit
/// sphere centered at `center`.
std::vector<double> face_angles(const Vec3& center, std::span<const Vec3> cycle);

SurfaceDecomposition surface_decomposition(const MeissnerPolyhedron& m);

} // namespace meissner
