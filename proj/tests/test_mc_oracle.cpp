#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "meissner/error.hpp"
#include "meissner/generators.hpp"
#include "meissner/mc_oracle.hpp"
#include "support.hpp"

using namespace meissner;
using testref::pi;

namespace {

Arc random_arc(std::mt19937_64& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Arc arc;
  arc.center = Vec3(n01(rng), n01(rng), n01(rng));
  arc.radius = 0.2 + u(rng);
  const Vec3 a(n01(rng), n01(rng), n01(rng));
  arc.u = a.normalized();
  const Vec3 b(n01(rng), n01(rng), n01(rng));
  arc.v = (b - b.dot(arc.u) * arc.u).normalized();
  arc.angle_begin = 2 * pi * u(rng) - pi;
  arc.angle_end = arc.angle_begin + 2 * pi * u(rng);
  return arc;
}

double brute_max_distance(const Vec3& p, const Arc& arc) {
  constexpr int n = 100000;
  double best = 0.0;
  for (int i = 0; i <= n; ++i) best = std::max(best, (p - arc.point(static_cast<double>(i) / n)).norm());
  return best;
}

} // namespace

TEST_CASE("max_dist_point_to_arc") {
  Arc circle;
  circle.radius = 0.7;
  circle.angle_end = 2 * pi;
  CHECK(max_dist_point_to_arc(Vec3::Zero(), circle) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(max_dist_point_to_arc(Vec3(0, 0, 2), circle) ==
        doctest::Approx(std::hypot(0.7, 2.0)).epsilon(1e-15));
  CHECK(max_dist_point_to_arc(Vec3(3, 0, 0), circle) == doctest::Approx(3.7).epsilon(1e-15));

  std::mt19937_64 rng(41);
  std::normal_distribution<double> n01(0.0, 1.0);
  for (int i = 0; i < 40; ++i) {
    const Arc arc = random_arc(rng);
    const Vec3 p(n01(rng), n01(rng), n01(rng));
    CHECK(std::abs(max_dist_point_to_arc(p, arc) - brute_max_distance(p, arc)) < 1e-9);
  }
}

TEST_CASE("contains") {
  const auto m = make_meissner(regular_tetrahedron());
  const auto sys = meissner_system(m);
  Vec3 centroid = Vec3::Zero();
  for (const auto& p : m.vertices().points()) centroid += p;
  centroid /= 4.0;
  CHECK(contains(sys, centroid));
  for (const auto& p : m.vertices().points()) CHECK(contains(sys, p, 1e-12));
  const Vec3 outside = m.vertices()[0] + 1.01 * (centroid - m.vertices()[0]).normalized();
  CHECK_FALSE(contains(sys, outside));
}

TEST_CASE("mc_volume") {
  SUBCASE("single ball is sampled exactly") {
    BallSystem one;
    one.point_centers.push_back(Vec3(0.3, -0.2, 1.0));
    const auto r = mc_volume(one, 20000, 3);
    CHECK(r.volume_estimate == doctest::Approx(4.0 * pi / 3.0).epsilon(1e-15));
    CHECK(r.std_error == 0.0);
  }
  SUBCASE("errors") {
    BallSystem empty;
    CHECK_THROWS_AS(mc_volume(empty, 20000, 1), Error);
    BallSystem one;
    one.point_centers.push_back(Vec3::Zero());
    CHECK_THROWS_AS(mc_volume(one, 100, 1), Error);
  }
  SUBCASE("same seed, any thread count") {
    const auto sys = meissner_system(make_meissner(regular_pyramid(2)));
    const auto a = mc_volume(sys, 200000, 77, 1);
    const auto b = mc_volume(sys, 200000, 77, 3);
    const auto c = mc_volume(sys, 200000, 77, 8);
    CHECK(a.hits == b.hits);
    CHECK(a.hits == c.hits);
    CHECK(a.volume_estimate == c.volume_estimate);
    CHECK(a.std_error == c.std_error);
  }
  SUBCASE("agrees with the closed form") {
    for (const auto& vs : {regular_tetrahedron(), regular_pyramid(2), regular_pyramid(3)}) {
      const auto m = make_meissner(vs);
      const auto r = mc_volume(meissner_system(m), 1000000, 2024);
      CHECK(std::abs(r.volume_estimate - meissner_volume(m)) <= 3.0 * r.std_error);
    }
  }
  SUBCASE("Reuleaux body contains the Meissner body") {
    const auto m = make_meissner(regular_tetrahedron());
    const auto meissner = mc_volume(meissner_system(m), 500000, 5);
    const auto reuleaux = mc_volume(reuleaux_system(m.vertices(), m.pairs()), 500000, 5);
    CHECK(reuleaux.hits > meissner.hits);
  }
  SUBCASE("adding a constraint never adds hits") {
    const auto m = make_meissner(regular_pyramid(2));
    auto sys = reuleaux_system(m.vertices(), m.pairs());
    sys.edge_curves.clear();
    std::int64_t previous = mc_volume(sys, 100000, 9).hits;
    for (std::size_t i = 0; i < m.pairs().size(); ++i) {
      sys.arc_centers.push_back(m.retained_arc(i));
      const auto hits = mc_volume(sys, 100000, 9).hits;
      CHECK(hits <= previous);
      previous = hits;
    }
  }
}

TEST_CASE("support and widths") {
  SUBCASE("Meissner bodies have constant width") {
    for (const auto& vs : {regular_tetrahedron(), regular_pyramid(2)}) {
      const auto w = width_samples(meissner_system(make_meissner(vs)), 300, 8);
      CHECK(w.min_width >= 1.0 - 1e-6);
      CHECK(w.max_width <= 1.0 + 1e-6);
    }
  }
  SUBCASE("Reuleaux tetrahedron does not") {
    const auto m = make_meissner(regular_tetrahedron());
    const auto w = width_samples(reuleaux_system(m.vertices(), m.pairs()), 300, 8);
    CHECK(w.max_width > 1.0 + 1e-3);
    CHECK(w.min_width >= 1.0 - 1e-6);
  }
  SUBCASE("single ball has width two") {
    BallSystem one;
    one.point_centers.push_back(Vec3(1, 2, 3));
    const auto w = width_samples(one, 50, 1);
    CHECK(w.min_width == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(w.max_width == doctest::Approx(2.0).epsilon(1e-14));
  }
  SUBCASE("support dominates sampled boundary points") {
    // Every body point p satisfies u.p <= h(u); sample points by rejection.
    const auto m = make_meissner(regular_pyramid(2));
    const auto sys = meissner_system(m);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Vec3> inside;
    while (inside.size() < 2000) {
      const Vec3 p = m.vertices()[0] + Vec3(u(rng), u(rng), u(rng));
      if (contains(sys, p)) inside.push_back(p);
    }
    for (int d = 0; d < 30; ++d) {
      const Vec3 dir = Vec3(u(rng), u(rng), u(rng)).normalized();
      const double h = support(sys, dir);
      double best = -1e9;
      for (const auto& p : inside) best = std::max(best, dir.dot(p));
      CHECK(best <= h + 1e-12);
      CHECK(best >= h - 0.05);
    }
  }
}

TEST_CASE("CounterRng is a pure function of key and index") {
  CounterRng a(5, 9), b(5, 9), c(5, 10);
  const auto x = a.next_u64();
  CHECK(x == b.next_u64());
  CHECK(x != c.next_u64());
  for (int i = 0; i < 1000; ++i) {
    const double d = a.next_double();
    CHECK(d >= 0.0);
    CHECK(d < 1.0);
  }
}
