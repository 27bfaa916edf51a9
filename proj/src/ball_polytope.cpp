#include "meissner/ball_polytope.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <tuple>

#include <Eigen/Geometry>

#include "meissner/error.hpp"

namespace meissner {

namespace sph = spherical;

Edge make_edge(int i, int j) noexcept { return i < j ? Edge{i, j} : Edge{j, i}; }

VertexSet validate_vertex_set(std::vector<Vec3> points, double tol) {
  const auto m = static_cast<int>(points.size());
  if (m < 4) {
    throw Error(ErrorKind::NotExtremal, "an extremal set in space needs at least 4 points, got " +
                                            std::to_string(m));
  }
  int diameters = 0;
  double max_dist = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const double d = (points[i] - points[j]).norm();
      max_dist = std::max(max_dist, d);
      if (d > 1.0 + tol) {
        throw Error(ErrorKind::DiameterViolation, "|p" + std::to_string(i) + " - p" +
                                                      std::to_string(j) +
                                                      "| = " + std::to_string(d) + " > 1");
      }
      if (std::abs(d - 1.0) <= tol) ++diameters;
    }
  }
  if (diameters != 2 * m - 2) {
    throw Error(ErrorKind::NotExtremal, std::to_string(diameters) + " diametric pairs, expected " +
                                            std::to_string(2 * m - 2));
  }
  VertexSet vs;
  vs.points_ = std::move(points);
  vs.tol_ = tol;
  vs.diameter_count_ = diameters;
  vs.max_distance_ = max_dist;
  return vs;
}

bool DiameterGraph::has_edge(int i, int j) const {
  return std::binary_search(edges.begin(), edges.end(), make_edge(i, j));
}

std::vector<std::vector<int>> DiameterGraph::adjacency() const {
  std::vector<std::vector<int>> adj(vertex_count);
  for (const auto& e : edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

std::vector<int> DiameterGraph::degrees() const {
  std::vector<int> deg(vertex_count, 0);
  for (const auto& e : edges) {
    ++deg[e.a];
    ++deg[e.b];
  }
  return deg;
}

DiameterGraph build_diameter_graph(const VertexSet& vs) {
  DiameterGraph g;
  g.vertex_count = static_cast<int>(vs.size());
  for (int i = 0; i < g.vertex_count; ++i) {
    for (int j = i + 1; j < g.vertex_count; ++j) {
      if (std::abs((vs[i] - vs[j]).norm() - 1.0) <= vs.tol()) g.edges.push_back({i, j});
    }
  }
  if (static_cast<int>(g.edges.size()) != 2 * g.vertex_count - 2) {
    throw Error(ErrorKind::NotExtremal, "diameter graph has " + std::to_string(g.edges.size()) +
                                            " edges, expected " +
                                            std::to_string(2 * g.vertex_count - 2));
  }
  return g;
}

namespace {

DualPairGeometry pair_geometry(const VertexSet& vs, const Edge& e, const Edge& ed) {
  const Vec3& x = vs[e.a];
  const Vec3& y = vs[e.b];
  const Vec3& xd = vs[ed.a];
  const Vec3& yd = vs[ed.b];
  DualPairGeometry geo;
  geo.theta = sph::chord_to_arc((x - y).norm(), vs.tol());
  geo.theta_dual = sph::chord_to_arc((xd - yd).norm(), vs.tol());
  const sph::PairLengths l(geo.theta, geo.theta_dual);
  geo.phi = sph::dihedral_angle(l);
  geo.phi_dual = sph::dihedral_angle(l.swapped());
  geo.alpha = sph::wedge_angle(l);
  geo.d_mid = sph::midpoint_distance(l);
  geo.arc_e = edge_arc(x, y, xd, yd);
  geo.arc_dual = edge_arc(xd, yd, x, y);
  return geo;
}

} // namespace

std::vector<DualEdgePair> find_dual_pairs(const DiameterGraph& g, const VertexSet& vs) {
  const auto adj = g.adjacency();
  std::map<std::pair<Edge, Edge>, bool> seen;
  std::vector<DualEdgePair> pairs;
  for (int x = 0; x < g.vertex_count; ++x) {
    for (int y = x + 1; y < g.vertex_count; ++y) {
      std::vector<int> common;
      std::set_intersection(adj[x].begin(), adj[x].end(), adj[y].begin(), adj[y].end(),
                            std::back_inserter(common));
      for (std::size_t i = 0; i < common.size(); ++i) {
        for (std::size_t j = i + 1; j < common.size(); ++j) {
          const Edge e{x, y};
          const Edge ed = make_edge(common[i], common[j]);
          const auto key = std::minmax(e, ed);
          if (!seen.emplace(std::pair{key.first, key.second}, true).second) continue;
          pairs.push_back({key.first, key.second, pair_geometry(vs, key.first, key.second)});
        }
      }
    }
  }
  if (static_cast<int>(pairs.size()) != g.vertex_count - 1) {
    throw Error(ErrorKind::WrongPairCount, "found " + std::to_string(pairs.size()) +
                                               " dual pairs, expected " +
                                               std::to_string(g.vertex_count - 1));
  }
  std::sort(pairs.begin(), pairs.end(), [](const DualEdgePair& p, const DualEdgePair& q) {
    return std::tie(p.e, p.e_dual) < std::tie(q.e, q.e_dual);
  });
  return pairs;
}

SmoothingChoice optimal_smoothing(std::span<const DualEdgePair> pairs) {
  constexpr double tie_tol = 1e-12;
  SmoothingChoice choice;
  choice.bits.reserve(pairs.size());
  for (const auto& p : pairs) {
    const double t = p.geometry.theta;
    const double td = p.geometry.theta_dual;
    if (std::abs(t - td) <= tie_tol) {
      const int lowest = std::min({p.e.a, p.e.b, p.e_dual.a, p.e_dual.b});
      choice.bits.push_back(p.e_dual.contains(lowest));
    } else {
      choice.bits.push_back(td > t);
    }
  }
  return choice;
}

sph::PairLengths retained_lengths(const DualEdgePair& pair, bool second_smoothed) {
  const sph::PairLengths l(pair.geometry.theta, pair.geometry.theta_dual);
  return second_smoothed ? l : l.swapped();
}

MeissnerPolyhedron::MeissnerPolyhedron(VertexSet vertices, DiameterGraph graph,
                                       std::vector<DualEdgePair> pairs, SmoothingChoice choice)
    : vertices_(std::move(vertices)), graph_(std::move(graph)), pairs_(std::move(pairs)),
      choice_(std::move(choice)) {
  if (pairs_.size() + 1 != vertices_.size()) {
    throw Error(ErrorKind::WrongPairCount, "a Meissner polyhedron on " +
                                               std::to_string(vertices_.size()) + " points needs " +
                                               std::to_string(vertices_.size() - 1) + " pairs");
  }
  if (choice_.bits.size() != pairs_.size()) {
    throw Error(ErrorKind::WrongPairCount, "smoothing choice has " +
                                               std::to_string(choice_.bits.size()) +
                                               " bits for " + std::to_string(pairs_.size()) +
                                               " pairs");
  }
}

const Edge& MeissnerPolyhedron::retained_edge(std::size_t i) const {
  return choice_.bits.at(i) ? pairs_[i].e : pairs_[i].e_dual;
}

const Edge& MeissnerPolyhedron::smoothed_edge(std::size_t i) const {
  return choice_.bits.at(i) ? pairs_[i].e_dual : pairs_[i].e;
}

const Arc& MeissnerPolyhedron::retained_arc(std::size_t i) const {
  return choice_.bits.at(i) ? pairs_[i].geometry.arc_e : pairs_[i].geometry.arc_dual;
}

const Arc& MeissnerPolyhedron::smoothed_arc(std::size_t i) const {
  return choice_.bits.at(i) ? pairs_[i].geometry.arc_dual : pairs_[i].geometry.arc_e;
}

sph::PairLengths MeissnerPolyhedron::lengths(std::size_t i) const {
  return retained_lengths(pairs_.at(i), choice_.bits.at(i));
}

MeissnerPolyhedron make_meissner(const VertexSet& vs, std::optional<SmoothingChoice> choice) {
  auto graph = build_diameter_graph(vs);
  auto pairs = find_dual_pairs(graph, vs);
  auto bits = choice ? std::move(*choice) : optimal_smoothing(pairs);
  return MeissnerPolyhedron(vs, std::move(graph), std::move(pairs), std::move(bits));
}

double area_from_lengths(std::span<const sph::PairLengths> lengths) {
  double area = 2.0 * sph::kPi;
  for (const auto& l : lengths) area -= sph::f_pair(l);
  return area;
}

double meissner_area(const MeissnerPolyhedron& m) {
  std::vector<sph::PairLengths> lengths;
  lengths.reserve(m.pairs().size());
  for (std::size_t i = 0; i < m.pairs().size(); ++i) lengths.push_back(m.lengths(i));
  return area_from_lengths(lengths);
}

double volume_from_area(double area) { return area / 2.0 - sph::kPi / 3.0; }

double meissner_volume(const MeissnerPolyhedron& m) { return volume_from_area(meissner_area(m)); }

double reuleaux_area(std::span<const DualEdgePair> pairs) {
  double area = 2.0 * sph::kPi;
  for (const auto& p : pairs) {
    const auto& g = p.geometry;
    area += 4.0 * g.alpha - 2.0 * std::sin(g.theta / 2.0) * g.phi -
            2.0 * std::sin(g.theta_dual / 2.0) * g.phi_dual;
  }
  return area;
}

std::vector<SmoothingEntry> enumerate_smoothings(std::span<const DualEdgePair> pairs) {
  const std::size_t n = pairs.size();
  if (n > kMaxEnumeratedPairs) {
    throw Error(ErrorKind::TooManyPairs, std::to_string(n) + " pairs exceed the limit of " +
                                             std::to_string(kMaxEnumeratedPairs));
  }
  // f for both orientations of every pair, then sum per choice.
  std::vector<double> f_second(n), f_first(n);
  for (std::size_t i = 0; i < n; ++i) {
    f_second[i] = sph::f_pair(retained_lengths(pairs[i], true));
    f_first[i] = sph::f_pair(retained_lengths(pairs[i], false));
  }
  const std::size_t count = std::size_t{1} << n;
  std::vector<SmoothingEntry> table(count);
  for (std::size_t k = 0; k < count; ++k) {
    auto& entry = table[k];
    entry.choice.bits.resize(n);
    double area = 2.0 * sph::kPi;
    for (std::size_t i = 0; i < n; ++i) {
      const bool bit = (k >> i) & 1U;
      entry.choice.bits[i] = bit;
      area -= bit ? f_second[i] : f_first[i];
    }
    entry.area = area;
  }
  return table;
}

const char* to_string(PatchKind kind) noexcept {
  switch (kind) {
  case PatchKind::Face: return "face";
  case PatchKind::Wedge: return "wedge";
  case PatchKind::Spindle: return "spindle";
  }
  return "patch";
}

double SurfaceDecomposition::total_area() const {
  return std::accumulate(patches.begin(), patches.end(), 0.0,
                         [](double s, const SurfacePatch& p) { return s + p.area; });
}

double SurfaceDecomposition::area_of(PatchKind kind) const {
  double s = 0.0;
  for (const auto& p : patches) {
    if (p.kind == kind) s += p.area;
  }
  return s;
}

std::vector<int> face_cycle(const VertexSet& vs, const DiameterGraph& g, int x) {
  const auto adj = g.adjacency();
  const auto& nbrs = adj.at(x);
  if (nbrs.size() < 3) {
    throw Error(ErrorKind::FaceCycle, "vertex " + std::to_string(x) + " has fewer than 3 neighbors");
  }
  Vec3 centroid = Vec3::Zero();
  for (int v : nbrs) centroid += vs[v];
  centroid /= static_cast<double>(nbrs.size());
  const Vec3 to_centroid = centroid - vs[x];
  if (to_centroid.norm() < 1e-12) {
    throw Error(ErrorKind::FaceCycle, "neighbors of vertex " + std::to_string(x) +
                                          " are centered on it");
  }
  const Vec3 axis = to_centroid.normalized();
  const Vec3 trial = std::abs(axis.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  const Vec3 e1 = (trial - trial.dot(axis) * axis).normalized();
  const Vec3 e2 = axis.cross(e1);

  std::vector<std::pair<double, int>> keyed;
  for (int v : nbrs) {
    const Vec3 d = vs[v] - centroid;
    const Vec3 planar = d - d.dot(axis) * axis;
    if (planar.norm() < 1e-12) {
      throw Error(ErrorKind::FaceCycle, "neighbor " + std::to_string(v) + " of vertex " +
                                            std::to_string(x) + " lies on the face axis");
    }
    keyed.emplace_back(std::atan2(planar.dot(e2), planar.dot(e1)), v);
  }
  std::sort(keyed.begin(), keyed.end());
  for (std::size_t i = 0; i + 1 < keyed.size(); ++i) {
    if (keyed[i + 1].first - keyed[i].first < 1e-12) {
      throw Error(ErrorKind::FaceCycle, "neighbors of vertex " + std::to_string(x) +
                                            " cannot be ordered cyclically");
    }
  }
  std::vector<int> cycle;
  cycle.reserve(keyed.size());
  for (const auto& kv : keyed) cycle.push_back(kv.second);
  return cycle;
}

std::vector<double> face_angles(const Vec3& center, std::span<const Vec3> cycle) {
  const std::size_t k = cycle.size();
  std::vector<Vec3> dirs;
  dirs.reserve(k);
  for (const auto& p : cycle) dirs.push_back((p - center).normalized());
  auto tangent = [](const Vec3& at, const Vec3& toward) -> Vec3 {
    return (toward - toward.dot(at) * at).normalized();
  };
  std::vector<double> angles(k);
  for (std::size_t i = 0; i < k; ++i) {
    const Vec3& here = dirs[i];
    const Vec3 t_prev = tangent(here, dirs[(i + k - 1) % k]);
    const Vec3 t_next = tangent(here, dirs[(i + 1) % k]);
    angles[i] = std::atan2(t_prev.cross(t_next).norm(), t_prev.dot(t_next));
  }
  return angles;
}

SurfaceDecomposition surface_decomposition(const MeissnerPolyhedron& m) {
  SurfaceDecomposition dec;
  const auto& vs = m.vertices();
  for (int x = 0; x < static_cast<int>(vs.size()); ++x) {
    auto cycle = face_cycle(vs, m.graph(), x);
    std::vector<Vec3> pts;
    for (int v : cycle) pts.push_back(vs[v]);
    const auto angles = face_angles(vs[x], pts);
    dec.patches.push_back({PatchKind::Face, x, sph::geodesic_polygon_area(angles), std::move(cycle)});
  }
  for (std::size_t i = 0; i < m.pairs().size(); ++i) {
    const auto l = m.lengths(i);
    const double phi_smoothed = sph::dihedral_angle(l.swapped());
    dec.patches.push_back({PatchKind::Wedge, static_cast<int>(i), sph::wedge_area(l), {}});
    dec.patches.push_back(
        {PatchKind::Spindle, static_cast<int>(i), sph::spindle_area(l.theta_dual(), phi_smoothed), {}});
  }
  return dec;
}

} // namespace meissner
