#include "meissner/arc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Geometry>

#include "meissner/error.hpp"

namespace meissner {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Vec3 any_orthogonal(const Vec3& n) {
  const Vec3 trial = std::abs(n.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  return (trial - trial.dot(n) * n).normalized();
}

} // namespace

Vec3 Arc::point_at_angle(double a) const {
  return center + radius * (std::cos(a) * u + std::sin(a) * v);
}

bool Arc::contains_angle(double a) const {
  double offset = std::fmod(a - angle_begin, kTwoPi);
  if (offset < 0.0) offset += kTwoPi;
  return offset <= sweep();
}

double Arc::max_distance(const Vec3& p) const {
  const Vec3 w = p - center;
  const Vec3 n = axis();
  const double h = w.dot(n);
  const Vec3 in_plane = w - h * n;
  const double rho = in_plane.norm();
  if (rho < 1e-15) {
    return std::sqrt(h * h + radius * radius);
  }
  const double far_angle = std::atan2(-in_plane.dot(v), -in_plane.dot(u));
  if (contains_angle(far_angle)) {
    return std::sqrt(h * h + (rho + radius) * (rho + radius));
  }
  return std::max((p - point_at_angle(angle_begin)).norm(), (p - point_at_angle(angle_end)).norm());
}

Vec3 Arc::argmax_dot(const Vec3& dir) const {
  const double a = dir.dot(u);
  const double b = dir.dot(v);
  if (a * a + b * b > 1e-30) {
    const double best = std::atan2(b, a);
    if (contains_angle(best)) return point_at_angle(best);
  }
  const Vec3 p0 = point_at_angle(angle_begin);
  const Vec3 p1 = point_at_angle(angle_end);
  return dir.dot(p0) >= dir.dot(p1) ? p0 : p1;
}

Arc edge_arc(const Vec3& from, const Vec3& to, const Vec3& pole_a, const Vec3& pole_b) {
  const Vec3 axis_vec = pole_b - pole_a;
  const double half = axis_vec.norm() / 2.0;
  if (half < 1e-15) {
    throw Error(ErrorKind::Geometry, "dual edge has coincident endpoints");
  }
  Arc arc;
  arc.center = 0.5 * (pole_a + pole_b);
  arc.radius = std::sqrt(std::max(0.0, 1.0 - half * half));
  const Vec3 n = axis_vec / (2.0 * half);

  Vec3 w = from - arc.center;
  w -= w.dot(n) * n;
  arc.u = w.norm() > 1e-15 ? Vec3(w.normalized()) : any_orthogonal(n);
  arc.v = n.cross(arc.u);

  const Vec3 t = to - arc.center;
  double end = std::atan2(t.dot(arc.v), t.dot(arc.u));
  if (end < 0.0) {
    arc.v = -arc.v;
    end = -end;
  }
  arc.angle_begin = 0.0;
  arc.angle_end = end;
  return arc;
}

} // namespace meissner
