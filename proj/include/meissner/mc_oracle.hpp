#pragma once

// Monte Carlo volumes of intersections of unit balls whose centers range over
// finitely many points and over circular arcs. This is an oracle for the closed
// forms in ball_polytope: it never uses them.

#include <cstdint>
#include <vector>

#include "meissner/arc.hpp"
#include "meissner/ball_polytope.hpp"

namespace meissner {

/// Intersection of unit balls B(c) for c in point_centers and for every c on
/// every arc in arc_centers.
struct BallSystem {
  std::vector<Vec3> point_centers;
  std::vector<Arc> arc_centers;
  /// Curves known to lie on the boundary where it is not smooth. Only the
  /// support function uses them; they do not constrain membership.
  std::vector<Arc> edge_curves;
};

/// B(X ∪ retained arcs).
BallSystem meissner_system(const MeissnerPolyhedron& m);
/// B(X), with all 2(m-1) edges as boundary curves.
BallSystem reuleaux_system(const VertexSet& vs, std::span<const DualEdgePair> pairs);

/// max over c on the arc of |p - c|.
double max_dist_point_to_arc(const Vec3& p, const Arc& arc);

/// True iff every constraint distance is at most 1 + tol.
bool contains(const BallSystem& system, const Vec3& p, double tol = 0.0);

struct McResult {
  double volume_estimate = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  std::int64_t hits = 0;
};

inline constexpr std::int64_t kMinMcSamples = 10'000;

/// Rejection sampling in the unit ball about point_centers[0] (or about the
/// first arc's start when there are no point centers). Sample i depends only on
/// (seed, i), so the result does not depend on `threads` (0 = hardware).
/// Throws EmptySystem for a system without constraints and InvalidArgument for
/// samples < kMinMcSamples.
McResult mc_volume(const BallSystem& system, std::int64_t samples, std::uint64_t seed,
                   unsigned threads = 0);

/// Support function h(u) = max over the body of u·p, from the analytic
/// boundary pieces: vertices, boundary curves and sphere or spindle points c + u.
double support(const BallSystem& system, const Vec3& u);

struct WidthRange {
  double min_width = 0.0;
  double max_width = 0.0;
};

/// Extremes of h(u) + h(-u) over random directions.
WidthRange width_samples(const BallSystem& system, int directions, std::uint64_t seed);

/// Counter-based generator: the stream for (key, index) is a pure function of
/// both, so parallel chunking cannot change it.
class CounterRng {
public:
  CounterRng(std::uint64_t key, std::uint64_t index) noexcept;

  std::uint64_t next_u64() noexcept;
  /// Uniform in [0, 1).
  double next_double() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
  std::uint64_t state_;
};

} // namespace meissner
