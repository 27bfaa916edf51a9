#pragma once

// Reference values and independent constructions shared by the test binaries.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Geometry>

#include "meissner/arc.hpp"
#include "meissner/generators.hpp"

namespace testref {

using meissner::Vec3;

inline constexpr double pi = std::numbers::pi;

// 30-digit evaluations (mpmath) of closed forms built from acos(1/3).
inline constexpr double acos_third = 1.23095941734077468213492917825;
inline constexpr double asin_third = 0.339836909454121937096392513392;
inline constexpr double two_asin_quarter = 0.505360510284157306971314873987;
inline constexpr double tetra_rect = 1.35934763781648774838557005357;
inline constexpr double tetra_wedge = 0.128388220475713066250640875319;
inline constexpr double tetra_spindle = 0.114602713055364502824063230769;
inline constexpr double tetra_f = 1.11635670428541017931086594748;
inline constexpr double tetra_area = 2.93411519432335593899268892412;
inline constexpr double tetra_volume = 0.419860045965080223342130000968;
inline constexpr double tetra_face = 0.551285598432530807942144151465;
inline constexpr double reuleaux_tetra_area = 2.97547171658440162927242185777;
inline constexpr double pyramid_bound = 3.19812637933440516596387215048;
inline constexpr double f_at_04_09 = 0.360571587437989932155779182829;
inline constexpr double pyramid2_area = 2.97423640985809279481469293517;
inline constexpr double pyramid3_area = 2.98385077988365288123985306493;

/// Unit vector at geodesic distance π/3 from p, heading towards `toward`
/// turned about p by `turn`.
inline Vec3 step_from(const Vec3& p, const Vec3& toward, double turn) {
  Vec3 t = (toward - toward.dot(p) * p).normalized();
  t = Eigen::AngleAxisd(turn, p) * t;
  return 0.5 * p + std::sqrt(3.0) / 2.0 * t;
}

/// Irregular Meissner pyramid: apex at the origin, base points on the unit
/// sphere chained by unit diagonals b_0, b_k, b_2k, ... with each step turned
/// by N(0, sigma); the last point closes the chain. Returns the points without
/// validating them.
inline std::vector<Vec3> perturbed_pyramid_points(int k, std::uint64_t seed, double sigma) {
  const auto regular = meissner::regular_pyramid(k).points();
  const int n = 2 * k + 1;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);

  std::vector<Vec3> pts = regular;
  auto base = [&](int j) -> Vec3& { return pts[static_cast<std::size_t>(1 + j)]; };
  auto reg = [&](int j) -> const Vec3& { return regular[static_cast<std::size_t>(1 + j)]; };
  int prev = 0;
  for (int s = 1; s < n - 1; ++s) {
    const int j = (s * k) % n;
    base(j) = step_from(base(prev), reg(j), noise(rng));
    prev = j;
  }
  // Close the chain: unit chords to both base(prev) and base(0).
  const int last = ((n - 1) * k) % n;
  const Vec3 a = base(prev);
  const Vec3 b = base(0);
  const double c = a.dot(b);
  const double coef = 0.5 / (1.0 + c);
  const Vec3 axis = a.cross(b);
  const Vec3 mid = coef * (a + b);
  const double h2 = (1.0 - mid.squaredNorm()) / axis.squaredNorm();
  const double h = std::sqrt(std::max(0.0, h2));
  const Vec3 q1 = mid + h * axis;
  const Vec3 q2 = mid - h * axis;
  base(last) = (q1 - reg(last)).norm() < (q2 - reg(last)).norm() ? q1 : q2;
  return pts;
}

/// Random proper rigid motion applied to every point.
inline std::vector<Vec3> random_rigid_motion(const std::vector<Vec3>& pts, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01(0.0, 1.0);
  const Eigen::Quaterniond q =
      Eigen::Quaterniond(n01(rng), n01(rng), n01(rng), n01(rng)).normalized();
  const Vec3 shift(n01(rng), n01(rng), n01(rng));
  std::vector<Vec3> out;
  for (const auto& p : pts) out.push_back(q * p + shift);
  return out;
}

} // namespace testref
