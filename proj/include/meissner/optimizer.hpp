#pragma once

// Finite-dimensional area minimization at fixed combinatorics.
//
// Both searches maximize a sum of pair contributions over vertex coordinates
// with a quadratic penalty on the diameter constraints, minimized by
// Nelder-Mead in rounds of increasing penalty weight. After every round the
// iterate is projected back onto the constraint set by a Gauss-Newton
// feasibility restoration; only restored points count as results.

#include <cstdint>
#include <vector>

#include "meissner/ball_polytope.hpp"

namespace meissner {

struct OptimizerSettings {
  int penalty_rounds = 6;
  double initial_penalty = 10.0;
  double penalty_growth = 10.0;
  int max_iterations_per_round = 4000;
  double initial_step = 0.05;
  double simplex_tol = 1e-10;
  double feasibility_tol = 1e-8;
  /// Standard deviation of the coordinate noise for restarts after the first.
  double restart_noise = 0.05;
  unsigned threads = 0; ///< 0 = hardware concurrency; never changes results
};

/// Fixed combinatorics plus a starting configuration.
struct OptimizationProblem {
  DiameterGraph graph;
  std::vector<std::pair<Edge, Edge>> pairs; ///< dual pairs (e, e')
  std::vector<Vec3> start;
};

/// Uses the diameter graph and dual pairs of vs, starting from vs itself.
OptimizationProblem make_problem(const VertexSet& vs);

struct RunSummary {
  double value = 0.0; ///< best feasible objective of the run
  double area = 0.0;
  double constraint_residual = 0.0;
  double max_distance = 0.0;
  int iterations = 0;
  bool feasible = false;
  bool converged = false;
  bool area_at_least_tetrahedron = false;
  /// Best feasible objective after each penalty round.
  std::vector<double> trajectory;
  std::vector<Vec3> points;
};

struct OptimizationReport {
  double best_value = 0.0;
  double best_area = 0.0;
  double best_volume = 0.0;
  int iterations = 0;
  double constraint_residual = 0.0;
  double max_distance = 0.0;
  bool converged = false;
  /// Every feasible run ended with area >= the Meissner tetrahedron's (-1e-6).
  bool all_above_tetrahedron = false;
  std::size_t best_run = 0;
  std::vector<Vec3> best_points;
  std::vector<RunSummary> runs;
};

/// Area of the Meissner tetrahedron, 2π - (√3/2)·π·acos(1/3).
double tetrahedron_area();

/// Sum over dual pairs of the arc length ℓ of the base edge, i.e.
/// cos(θ(a b_j)/2)·φ(a b_j) for the apex edge a b_j in the pair.
/// Throws NotAWheel unless the diameter graph is a wheel.
double pyramid_objective(const VertexSet& vs);

/// Maximizes pyramid_objective over n base points on the unit sphere about
/// the apex with base diagonals fixed at one. n odd, 3 <= n <= 15.
OptimizationReport optimize_pyramid(int n, int restarts, std::uint64_t seed,
                                    const OptimizerSettings& settings = {});

/// Maximizes Σ f(θ(retained), θ(smoothed)) under optimal smoothing over
/// gauge-fixed coordinates. Throws InfeasibleStart when the start violates the
/// constraints by more than 1e-6.
OptimizationReport optimize_meissner(const OptimizationProblem& problem, int restarts,
                                     std::uint64_t seed, const OptimizerSettings& settings = {});

/// Σ over pairs of max(f(θ1, θ2), f(θ2, θ1)), chords clamped to [0, 1].
double smoothed_objective(std::span<const Vec3> points,
                          std::span<const std::pair<Edge, Edge>> pairs);

/// Rigid motion taking points[0] to the origin, points[1] onto the +x axis
/// and points[2] into the xy-plane.
std::vector<Vec3> gauge_fix(std::span<const Vec3> points);

} // namespace meissner
