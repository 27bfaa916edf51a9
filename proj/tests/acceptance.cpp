// Acceptance suite: prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "meissner/ball_polytope.hpp"
#include "meissner/generators.hpp"
#include "meissner/mc_oracle.hpp"
#include "meissner/mesh.hpp"
#include "meissner/optimizer.hpp"
#include "meissner/spherical.hpp"
#include "support.hpp"

using namespace meissner;
namespace sph = meissner::spherical;
using testref::pi;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double tetra_area_closed() { return 2 * pi - std::sqrt(3.0) / 2 * pi * std::acos(1.0 / 3.0); }
double tetra_volume_closed() { return pi * (2.0 / 3.0 - std::sqrt(3.0) / 4 * std::acos(1.0 / 3.0)); }

std::vector<VertexSet> bodies_468() {
  return {regular_tetrahedron(), regular_pyramid(2), regular_pyramid(3)};
}

Outcome golden_closed_form() {
  const auto m = make_meissner(regular_tetrahedron());
  const double da = std::abs(meissner_area(m) - tetra_area_closed());
  const double dv = std::abs(meissner_volume(m) - tetra_volume_closed());
  return {da <= 1e-12 && dv <= 1e-12,
          fmt::format("area {:.15f} (|d| {:.1e}), volume {:.15f} (|d| {:.1e})", meissner_area(m),
                      da, meissner_volume(m), dv)};
}

Outcome erratum_gate() {
  const auto m = make_meissner(regular_tetrahedron());
  const double third = pi / 3;
  const double gate = std::abs(3 * sph::f_pair({third, third}) + meissner_area(m) - 2 * pi);
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(0.0, third);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const sph::PairLengths l(u(rng), u(rng));
    const double phi_dual = sph::dihedral_angle(l.swapped());
    const double rhs = sph::rect_area(l.theta(), l.theta_dual()) - sph::wedge_area(l) -
                       sph::spindle_area(l.theta_dual(), phi_dual);
    worst = std::max(worst, std::abs(sph::f_pair(l) - rhs));
  }
  return {gate <= 1e-12 && worst <= 1e-12,
          fmt::format("|3f + area - 2pi| {:.1e}, max |f - (R - W - S)| over 1e4 points {:.1e}", gate,
                      worst)};
}

Outcome oracle_equivalence() {
  bool ok = true;
  std::string detail;
  std::uint64_t seed = 31;
  for (const auto& vs : bodies_468()) {
    const auto m = make_meissner(vs);
    const auto r = mc_volume(meissner_system(m), 10'000'000, seed++);
    const double diff = std::abs(r.volume_estimate - meissner_volume(m));
    ok = ok && diff <= 3 * r.std_error;
    detail += fmt::format("m={}: |mc - V| {:.2e} vs 3se {:.2e}; ", vs.size(), diff, 3 * r.std_error);
  }
  return {ok, detail};
}

Outcome partition_identity() {
  bool ok = true;
  double worst = 0.0;
  for (const auto& vs : bodies_468()) {
    const auto m = make_meissner(vs);
    const auto d = surface_decomposition(m);
    double rects = 0.0;
    for (const auto& p : m.pairs()) rects += sph::rect_area(p.geometry.theta, p.geometry.theta_dual);
    const double err = std::abs(d.area_of(PatchKind::Face) + rects - 2 * pi);
    worst = std::max(worst, err);
    ok = ok && err <= 1e-9;
  }
  return {ok, fmt::format("m in {{4, 6, 8}}: max |faces + rectangles - 2pi| {:.1e}", worst)};
}

Outcome smoothing_rule() {
  std::vector<VertexSet> bodies{regular_pyramid(2)};
  for (std::uint64_t s = 1; bodies.size() < 11; ++s) {
    bodies.push_back(validate_vertex_set(testref::perturbed_pyramid_points(2, 1000 + s, 0.03)));
  }
  int agree = 0;
  double slowest = 0.0;
  for (const auto& vs : bodies) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto pairs = find_dual_pairs(build_diameter_graph(vs), vs);
    const auto table = enumerate_smoothings(pairs);
    const auto best = std::min_element(table.begin(), table.end(),
                                       [](const auto& a, const auto& b) { return a.area < b.area; });
    if (best->choice == optimal_smoothing(pairs)) ++agree;
    slowest = std::max(slowest,
                       std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return {agree == static_cast<int>(bodies.size()) && slowest < 1.0,
          fmt::format("{}/{} bodies agree, slowest {:.4f} s", agree, bodies.size(), slowest)};
}

Outcome appendix_properties() {
  constexpr int n = 200;
  const double h = (pi / 3) / (n - 1);
  std::vector<double> f(n * n);
  auto at = [&](int i, int j) -> double& { return f[i * n + j]; };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) at(i, j) = sph::f_pair({i * h, j * h});
  }
  int mono = 0, convex = 0, swap = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i > 0 && at(i, j) < at(i - 1, j)) ++mono;
      if (j > 0 && at(i, j) < at(i, j - 1)) ++mono;
      if (i > 0 && i + 1 < n && at(i + 1, j) - 2 * at(i, j) + at(i - 1, j) < -1e-15) ++convex;
      if (j > 0 && j + 1 < n && at(i, j + 1) - 2 * at(i, j) + at(i, j - 1) < -1e-15) ++convex;
      if (i <= j && at(i, j) < at(j, i)) ++swap;
    }
  }
  double worst = 0.0;
  const double step = 1e-5;
  for (int i = 5; i < n - 5; i += 3) {
    for (int j = 5; j < n - 5; j += 3) {
      const double x = i * h, y = j * h;
      const double fd = (sph::f_pair({x + step, y}) - sph::f_pair({x - step, y})) / (2 * step);
      const double exact = sph::f_partial_x(x, y);
      worst = std::max(worst, std::abs(exact - fd) / std::abs(exact));
    }
  }
  return {mono == 0 && convex == 0 && swap == 0 && worst < 1e-6,
          fmt::format("violations: monotone {}, convex {}, swap {}; max rel |df/dx - FD| {:.1e}",
                      mono, convex, swap, worst)};
}

Outcome pyramid_theorem() {
  const double floor = tetra_area_closed() - 1e-6;
  bool ok = true;
  std::string detail;
  for (int n : {5, 7}) {
    const auto r = optimize_pyramid(n, 20, 7000 + n);
    double lowest = 1e9;
    int feasible = 0;
    for (const auto& run : r.runs) {
      if (!run.feasible) continue;
      ++feasible;
      lowest = std::min(lowest, run.area);
      ok = ok && run.constraint_residual <= 1e-8 && run.max_distance <= 1 + 1e-8;
    }
    ok = ok && feasible > 0 && lowest >= floor;
    detail += fmt::format("n={}: {} feasible runs, min area {:.9f}; ", n, feasible, lowest);
  }
  for (int k = 2; k <= 4; ++k) {
    const double a = meissner_area(make_meissner(regular_pyramid(k)));
    ok = ok && a > tetra_area_closed();
    detail += fmt::format("regular m={} area {:.6f}; ", 2 * k + 2, a);
  }
  return {ok, detail + fmt::format("floor {:.9f}", floor)};
}

Outcome width_check() {
  const auto m = make_meissner(regular_tetrahedron());
  const auto w = width_samples(meissner_system(m), 1000, 4242);
  const auto wr = width_samples(reuleaux_system(m.vertices(), m.pairs()), 1000, 4242);
  const bool ok = w.min_width >= 1 - 1e-6 && w.max_width <= 1 + 1e-6 && wr.max_width > 1;
  return {ok, fmt::format("Meissner [{:.12f}, {:.12f}], Reuleaux max {:.6f}", w.min_width,
                          w.max_width, wr.max_width)};
}

Outcome mesh_convergence() {
  bool ok = true;
  std::string detail;
  for (const auto& vs : {regular_tetrahedron(), regular_pyramid(2)}) {
    const auto m = make_meissner(vs);
    const double exact = meissner_area(m);
    std::vector<double> err;
    for (int r = 1; r <= 5; ++r) err.push_back(std::abs(mesh_area(tessellate(m, r)) - exact));
    const double rel5 = err[4] / exact;
    ok = ok && rel5 <= 0.005;
    detail += fmt::format("m={}: rel err r=5 {:.2e}, ratios", vs.size(), rel5);
    for (std::size_t i = 1; i < err.size(); ++i) {
      const double ratio = err[i - 1] / err[i];
      ok = ok && ratio > 3 && ratio < 5;
      detail += fmt::format(" {:.3f}", ratio);
    }
    detail += "; ";
  }
  return {ok, detail};
}

Outcome reuleaux_comparison() {
  bool ok = true;
  double margin = 0.0;
  for (const auto& vs : bodies_468()) {
    const auto pairs = find_dual_pairs(build_diameter_graph(vs), vs);
    const double r = reuleaux_area(pairs);
    for (const auto& entry : enumerate_smoothings(pairs)) ok = ok && r >= entry.area;
    if (vs.size() == 4) margin = r - meissner_area(make_meissner(vs));
  }
  ok = ok && margin >= 0.04;
  return {ok, fmt::format("all smoothings below Reuleaux; tetrahedron margin {:.6f}", margin)};
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"golden closed form", golden_closed_form},
      {"corrected f gate", erratum_gate},
      {"Monte Carlo oracle equivalence", oracle_equivalence},
      {"sphere partition identity", partition_identity},
      {"smoothing rule", smoothing_rule},
      {"f property suite", appendix_properties},
      {"pyramid bound", pyramid_theorem},
      {"width spot-check", width_check},
      {"mesh convergence", mesh_convergence},
      {"Reuleaux comparison", reuleaux_comparison},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    fmt::print("{} [{:2}] {}: {} ({:.2f} s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
               o.detail, secs);
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
