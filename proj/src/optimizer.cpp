#include "meissner/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "meissner/error.hpp"
#include "meissner/generators.hpp"
#include "meissner/mc_oracle.hpp"

namespace meissner {

namespace sph = spherical;
using Eigen::VectorXd;

namespace {

constexpr double kTetraMargin = 1e-6;
constexpr double kStartTol = 1e-6;

double clamped_arc(double chord) { return 2.0 * std::asin(std::clamp(chord, 0.0, 1.0) / 2.0); }

/// Vertex coordinates as a function of the search variables, with the
/// constraints and objective expressed on coordinates.
struct SearchSpace {
  std::function<std::vector<Vec3>(const VectorXd&)> to_points;
  std::vector<Edge> equalities;
  std::vector<Edge> inequalities;
  /// Further constraints g(points) <= 0.
  std::function<std::vector<double>(std::span<const Vec3>)> extra_inequalities;
  std::function<double(std::span<const Vec3>)> objective;
};

struct Violation {
  double equality = 0.0;
  double inequality = 0.0;
  double max_distance = 0.0;
};

/// Equality residuals followed by inequality values (feasible when <= 0).
struct ConstraintValues {
  std::vector<double> equality;
  std::vector<double> inequality;
};

ConstraintValues constraint_values(const SearchSpace& space, std::span<const Vec3> pts) {
  ConstraintValues c;
  for (const auto& e : space.equalities) c.equality.push_back((pts[e.a] - pts[e.b]).norm() - 1.0);
  for (const auto& e : space.inequalities) {
    c.inequality.push_back((pts[e.a] - pts[e.b]).norm() - 1.0);
  }
  if (space.extra_inequalities) {
    for (double g : space.extra_inequalities(pts)) c.inequality.push_back(g);
  }
  return c;
}

Violation violation(const SearchSpace& space, std::span<const Vec3> pts) {
  Violation v;
  const auto c = constraint_values(space, pts);
  for (double r : c.equality) v.equality = std::max(v.equality, std::abs(r));
  for (double g : c.inequality) v.inequality = std::max(v.inequality, g);
  for (const auto* list : {&space.equalities, &space.inequalities}) {
    for (const auto& e : *list) v.max_distance = std::max(v.max_distance, (pts[e.a] - pts[e.b]).norm());
  }
  return v;
}

double penalty(const SearchSpace& space, std::span<const Vec3> pts) {
  const auto c = constraint_values(space, pts);
  double p = 0.0;
  for (double r : c.equality) p += r * r;
  for (double g : c.inequality) {
    if (g > 0.0) p += g * g;
  }
  return p;
}

/// Residuals of the equalities and of the inequalities listed in `active`.
VectorXd active_residuals(const SearchSpace& space, std::span<const Vec3> pts,
                          const std::vector<std::size_t>& active) {
  const auto c = constraint_values(space, pts);
  VectorXd r(static_cast<Eigen::Index>(c.equality.size() + active.size()));
  Eigen::Index i = 0;
  for (double v : c.equality) r[i++] = v;
  for (std::size_t a : active) r[i++] = c.inequality[a];
  return r;
}

/// Gauss-Newton projection onto the constraint set with minimum-norm steps.
std::optional<VectorXd> restore(const SearchSpace& space, VectorXd x, double tol) {
  constexpr double h = 1e-6;
  std::vector<std::size_t> active;
  for (int it = 0; it < 60; ++it) {
    const auto pts = space.to_points(x);
    const auto c = constraint_values(space, pts);
    for (std::size_t i = 0; i < c.inequality.size(); ++i) {
      if (c.inequality[i] > 0.0 && std::find(active.begin(), active.end(), i) == active.end()) {
        active.push_back(i);
      }
    }
    const VectorXd r = active_residuals(space, pts, active);
    if (r.size() == 0 || r.cwiseAbs().maxCoeff() <= 1e-14) break;
    Eigen::MatrixXd jac(r.size(), x.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      VectorXd xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      jac.col(j) = (active_residuals(space, space.to_points(xp), active) -
                    active_residuals(space, space.to_points(xm), active)) /
                   (2.0 * h);
    }
    const VectorXd step = jac.completeOrthogonalDecomposition().solve(-r);
    if (!step.allFinite()) return std::nullopt;
    x += step;
  }
  const auto pts = space.to_points(x);
  const auto v = violation(space, pts);
  if (!x.allFinite() || v.equality > tol || v.inequality > tol) return std::nullopt;
  return x;
}

struct NelderMeadResult {
  VectorXd x;
  int iterations = 0;
  bool converged = false;
};

NelderMeadResult nelder_mead(const std::function<double(const VectorXd&)>& fn, const VectorXd& x0,
                             double step, int max_iter, double size_tol) {
  const auto n = static_cast<std::size_t>(x0.size());
  struct Ctx {
    const std::function<double(const VectorXd&)>* fn;
  } ctx{&fn};
  gsl_multimin_function func;
  func.n = n;
  func.params = &ctx;
  func.f = [](const gsl_vector* v, void* params) -> double {
    const auto* c = static_cast<Ctx*>(params);
    VectorXd x(static_cast<Eigen::Index>(v->size));
    for (std::size_t i = 0; i < v->size; ++i) x[static_cast<Eigen::Index>(i)] = gsl_vector_get(v, i);
    const double value = (*c->fn)(x);
    return std::isfinite(value) ? value : std::numeric_limits<double>::max();
  };

  gsl_vector* start = gsl_vector_alloc(n);
  gsl_vector* steps = gsl_vector_alloc(n);
  for (std::size_t i = 0; i < n; ++i) gsl_vector_set(start, i, x0[static_cast<Eigen::Index>(i)]);
  gsl_vector_set_all(steps, step);
  gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n);
  gsl_multimin_fminimizer_set(s, &func, start, steps);

  NelderMeadResult result;
  int status = GSL_CONTINUE;
  while (status == GSL_CONTINUE && result.iterations < max_iter) {
    ++result.iterations;
    if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) break;
    status = gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), size_tol);
  }
  result.converged = status == GSL_SUCCESS;
  result.x.resize(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) result.x[static_cast<Eigen::Index>(i)] = gsl_vector_get(s->x, i);

  gsl_multimin_fminimizer_free(s);
  gsl_vector_free(steps);
  gsl_vector_free(start);
  return result;
}

RunSummary run_search(const SearchSpace& space, const VectorXd& start,
                      const OptimizerSettings& settings) {
  RunSummary run;
  run.value = -std::numeric_limits<double>::infinity();
  VectorXd best_x = start;
  VectorXd x = start;

  auto record = [&](const VectorXd& candidate) {
    const auto pts = space.to_points(candidate);
    const double value = space.objective(pts);
    if (value > run.value) {
      run.value = value;
      best_x = candidate;
      run.feasible = true;
    }
  };
  if (auto feasible = restore(space, start, settings.feasibility_tol)) {
    record(*feasible);
    x = *feasible;
  }

  double mu = settings.initial_penalty;
  double step = settings.initial_step;
  for (int round = 0; round < settings.penalty_rounds; ++round) {
    auto penalized = [&](const VectorXd& v) {
      const auto pts = space.to_points(v);
      return -space.objective(pts) + mu * penalty(space, pts);
    };
    const auto nm = nelder_mead(penalized, x, step, settings.max_iterations_per_round,
                                settings.simplex_tol);
    run.iterations += nm.iterations;
    run.converged = nm.converged;
    if (auto feasible = restore(space, nm.x, settings.feasibility_tol)) {
      record(*feasible);
      x = *feasible;
    } else {
      x = nm.x;
    }
    run.trajectory.push_back(run.value);
    mu *= settings.penalty_growth;
    step *= 0.5;
  }

  run.points = space.to_points(best_x);
  const auto v = violation(space, run.points);
  run.constraint_residual = std::max(v.equality, std::max(v.inequality, 0.0));
  run.max_distance = v.max_distance;
  return run;
}

VectorXd gaussian_noise(Eigen::Index n, std::uint64_t seed, std::uint64_t stream, double sigma) {
  CounterRng rng(seed, stream);
  VectorXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u1 = std::max(rng.next_double(), 1e-300);
    const double u2 = rng.next_double();
    out[i] = sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * sph::kPi * u2);
  }
  return out;
}

/// Runs restarts (possibly concurrently) and aggregates deterministically.
OptimizationReport run_restarts(const SearchSpace& space, const VectorXd& start, int restarts,
                                std::uint64_t seed, const OptimizerSettings& settings,
                                const std::function<double(const RunSummary&)>& area_of) {
  if (restarts < 1) throw Error(ErrorKind::InvalidArgument, "need at least one restart");
  std::vector<RunSummary> runs(static_cast<std::size_t>(restarts));

  auto one = [&](int r) {
    VectorXd x0 = start;
    if (r > 0) {
      double sigma = settings.restart_noise;
      for (int attempt = 0; attempt < 6; ++attempt, sigma /= 2.0) {
        const VectorXd trial =
            start + gaussian_noise(start.size(), seed,
                                   static_cast<std::uint64_t>(r) * 16 + attempt, sigma);
        if (restore(space, trial, settings.feasibility_tol)) {
          x0 = trial;
          break;
        }
      }
    }
    auto run = run_search(space, x0, settings);
    if (run.feasible) {
      run.area = area_of(run);
      run.area_at_least_tetrahedron = run.area >= tetrahedron_area() - kTetraMargin;
    }
    runs[static_cast<std::size_t>(r)] = std::move(run);
  };

  unsigned threads = settings.threads == 0 ? std::max(1U, std::thread::hardware_concurrency())
                                           : settings.threads;
  threads = std::min<unsigned>(threads, static_cast<unsigned>(restarts));
  if (threads <= 1) {
    for (int r = 0; r < restarts; ++r) one(r);
  } else {
    std::atomic<int> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (int r = next++; r < restarts; r = next++) one(r);
      });
    }
  }

  OptimizationReport report;
  report.all_above_tetrahedron = true;
  bool any = false;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const auto& run = runs[r];
    report.iterations += run.iterations;
    if (!run.feasible) continue;
    report.all_above_tetrahedron = report.all_above_tetrahedron && run.area_at_least_tetrahedron;
    if (!any || run.value > report.best_value) {
      any = true;
      report.best_value = run.value;
      report.best_run = r;
    }
  }
  if (!any) throw Error(ErrorKind::InfeasibleStart, "no restart reached a feasible point");
  const auto& best = runs[report.best_run];
  report.best_area = best.area;
  report.best_volume = volume_from_area(best.area);
  report.constraint_residual = best.constraint_residual;
  report.max_distance = best.max_distance;
  report.converged = best.converged;
  report.best_points = best.points;
  report.runs = std::move(runs);
  return report;
}

/// ℓ of base edge (b_i, b_{i+1}) summed over i, for base points in cyclic order
/// with their dual apex edges a b_{i+k+1}.
double pyramid_objective_cyclic(const Vec3& apex, std::span<const Vec3> base) {
  const int n = static_cast<int>(base.size());
  const int k = (n - 1) / 2;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double theta_base = clamped_arc((base[i] - base[(i + 1) % n]).norm());
    const double theta_apex = clamped_arc((base[(i + k + 1) % n] - apex).norm());
    const sph::PairLengths l(theta_apex, theta_base);
    total += std::cos(theta_apex / 2.0) * sph::dihedral_angle(l);
  }
  return total;
}

void silence_gsl() {
  static std::once_flag once;
  std::call_once(once, [] { gsl_set_error_handler_off(); });
}

} // namespace

double tetrahedron_area() {
  return 2.0 * sph::kPi - std::sqrt(3.0) / 2.0 * sph::kPi * std::acos(1.0 / 3.0);
}

OptimizationProblem make_problem(const VertexSet& vs) {
  OptimizationProblem p;
  p.graph = build_diameter_graph(vs);
  for (const auto& pair : find_dual_pairs(p.graph, vs)) p.pairs.emplace_back(pair.e, pair.e_dual);
  p.start = vs.points();
  return p;
}

double smoothed_objective(std::span<const Vec3> points,
                          std::span<const std::pair<Edge, Edge>> pairs) {
  double total = 0.0;
  for (const auto& [e, ed] : pairs) {
    const double t1 = clamped_arc((points[e.a] - points[e.b]).norm());
    const double t2 = clamped_arc((points[ed.a] - points[ed.b]).norm());
    total += sph::f_pair(sph::PairLengths(std::min(t1, t2), std::max(t1, t2)));
  }
  return total;
}

std::vector<Vec3> gauge_fix(std::span<const Vec3> points) {
  std::vector<Vec3> out(points.begin(), points.end());
  if (out.empty()) return out;
  const Vec3 origin = out[0];
  for (auto& p : out) p -= origin;
  if (out.size() < 2 || out[1].norm() < 1e-15) return out;
  const Eigen::Quaterniond to_x = Eigen::Quaterniond::FromTwoVectors(out[1], Vec3::UnitX());
  for (auto& p : out) p = to_x * p;
  if (out.size() >= 3) {
    const double angle = std::atan2(out[2].z(), out[2].y());
    const Eigen::AngleAxisd about_x(-angle, Vec3::UnitX());
    for (auto& p : out) p = about_x * p;
  }
  out[0] = Vec3::Zero();
  out[1].y() = out[1].z() = 0.0;
  if (out.size() >= 3) out[2].z() = 0.0;
  return out;
}

double pyramid_objective(const VertexSet& vs) {
  const auto g = build_diameter_graph(vs);
  const auto deg = g.degrees();
  const int m = g.vertex_count;
  const auto apex_it = std::find(deg.begin(), deg.end(), m - 1);
  if (apex_it == deg.end()) throw Error(ErrorKind::NotAWheel, "no vertex is adjacent to all others");
  const int apex = static_cast<int>(apex_it - deg.begin());
  for (int v = 0; v < m; ++v) {
    if (v != apex && deg[v] != 3) {
      throw Error(ErrorKind::NotAWheel, "base vertex " + std::to_string(v) + " has degree " +
                                            std::to_string(deg[v]) + ", expected 3");
    }
  }
  double total = 0.0;
  for (const auto& pair : find_dual_pairs(g, vs)) {
    const bool first_is_apex = pair.e.contains(apex);
    if (first_is_apex == pair.e_dual.contains(apex)) {
      throw Error(ErrorKind::NotAWheel, "dual pair without exactly one apex edge");
    }
    const auto& geo = pair.geometry;
    const double theta_apex = first_is_apex ? geo.theta : geo.theta_dual;
    const double phi_apex = first_is_apex ? geo.phi : geo.phi_dual;
    total += std::cos(theta_apex / 2.0) * phi_apex;
  }
  return total;
}

OptimizationReport optimize_pyramid(int n, int restarts, std::uint64_t seed,
                                    const OptimizerSettings& settings) {
  if (n < 3 || n > 15 || n % 2 == 0) {
    throw Error(ErrorKind::InvalidArgument, "pyramid base size must be odd and in [3, 15]");
  }
  silence_gsl();
  const int k = (n - 1) / 2;
  const auto regular = regular_pyramid(k).points();

  // Base point j (j >= 1) is (polar, azimuth) = x[2j-2], x[2j-1]; b_0 is pinned.
  const Vec3 pinned = regular[1];
  SearchSpace space;
  space.to_points = [n, pinned](const VectorXd& x) {
    std::vector<Vec3> pts(static_cast<std::size_t>(n + 1));
    pts[0] = Vec3::Zero();
    pts[1] = pinned;
    for (int j = 1; j < n; ++j) {
      const double polar = x[2 * j - 2];
      const double azimuth = x[2 * j - 1];
      pts[j + 1] = Vec3(std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth),
                        std::cos(polar));
    }
    return pts;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int step = j - i;
      const Edge e{i + 1, j + 1};
      if (step == k || step == n - k) {
        space.equalities.push_back(e);
      } else {
        space.inequalities.push_back(e);
      }
    }
  }
  // Consecutive base points must turn one way about the base axis, otherwise
  // the base edges fold back and stop being edges of the polytope.
  space.extra_inequalities = [n](std::span<const Vec3> pts) {
    const auto base = pts.subspan(1, static_cast<std::size_t>(n));
    Vec3 axis = Vec3::Zero();
    for (const auto& b : base) axis += b;
    axis.normalize();
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g[i] = -base[i].cross(base[(i + 1) % n]).dot(axis);
    return g;
  };
  space.objective = [n](std::span<const Vec3> pts) {
    return pyramid_objective_cyclic(pts[0], pts.subspan(1, static_cast<std::size_t>(n)));
  };

  VectorXd start(2 * (n - 1));
  for (int j = 1; j < n; ++j) {
    const Vec3& p = regular[static_cast<std::size_t>(j + 1)];
    start[2 * j - 2] = std::acos(std::clamp(p.z(), -1.0, 1.0));
    start[2 * j - 1] = std::atan2(p.y(), p.x());
  }
  return run_restarts(space, start, restarts, seed, settings, [](const RunSummary& run) {
    return 2.0 * sph::kPi - (sph::kPi / 3.0) * run.value;
  });
}

OptimizationReport optimize_meissner(const OptimizationProblem& problem, int restarts,
                                     std::uint64_t seed, const OptimizerSettings& settings) {
  const int m = problem.graph.vertex_count;
  if (m < 4 || static_cast<int>(problem.start.size()) != m) {
    throw Error(ErrorKind::InvalidArgument, "problem needs m >= 4 start points matching the graph");
  }
  if (m > 10) throw Error(ErrorKind::InvalidArgument, "general search supports m <= 10");
  silence_gsl();

  SearchSpace space;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      (problem.graph.has_edge(i, j) ? space.equalities : space.inequalities).push_back({i, j});
    }
  }
  const auto fixed = gauge_fix(problem.start);
  const auto v = violation(space, fixed);
  if (v.equality > kStartTol || v.inequality > kStartTol) {
    throw Error(ErrorKind::InfeasibleStart,
                "start violates the diameter constraints by " +
                    std::to_string(std::max(v.equality, v.inequality)));
  }

  // Variables: p1.x, p2.x, p2.y, then p3.. p_{m-1} in full.
  space.to_points = [m](const VectorXd& x) {
    std::vector<Vec3> pts(static_cast<std::size_t>(m), Vec3::Zero());
    pts[1] = Vec3(x[0], 0.0, 0.0);
    pts[2] = Vec3(x[1], x[2], 0.0);
    for (int i = 3; i < m; ++i) pts[i] = Vec3(x[3 * i - 6], x[3 * i - 5], x[3 * i - 4]);
    return pts;
  };
  const auto pairs = problem.pairs;
  space.objective = [pairs](std::span<const Vec3> pts) { return smoothed_objective(pts, pairs); };

  VectorXd start(3 * m - 6);
  start[0] = fixed[1].x();
  start[1] = fixed[2].x();
  start[2] = fixed[2].y();
  for (int i = 3; i < m; ++i) {
    start.segment<3>(3 * i - 6) = fixed[static_cast<std::size_t>(i)];
  }
  return run_restarts(space, start, restarts, seed, settings, [](const RunSummary& run) {
    return 2.0 * sph::kPi - run.value;
  });
}

} // namespace meissner
