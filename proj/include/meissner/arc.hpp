#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace meissner {

using Vec3 = Eigen::Vector3d;

/// Circular arc in space: center + radius·(cos a·u + sin a·v) for a in
/// [angle_begin, angle_end]. u and v are orthonormal.
struct Arc {
  Vec3 center = Vec3::Zero();
  double radius = 0.0;
  Vec3 u = Vec3::UnitX();
  Vec3 v = Vec3::UnitY();
  double angle_begin = 0.0;
  double angle_end = 0.0;

  Vec3 axis() const { return u.cross(v); }
  double sweep() const { return angle_end - angle_begin; }
  double length() const { return radius * sweep(); }

  Vec3 point_at_angle(double a) const;
  /// Point at normalized parameter s in [0, 1].
  Vec3 point(double s) const { return point_at_angle(angle_begin + s * sweep()); }

  bool contains_angle(double a) const;

  /// max over arc points c of |p - c|, in closed form.
  double max_distance(const Vec3& p) const;

  /// Arc point maximizing (or minimizing) dir·c.
  Vec3 argmax_dot(const Vec3& dir) const;
  Vec3 argmin_dot(const Vec3& dir) const { return argmax_dot(-dir); }
};

/// The short arc from `from` to `to` on the circle ∂B(pole_a) ∩ ∂B(pole_b),
/// i.e. the edge of the unit-ball intersection whose dual edge is
/// (pole_a, pole_b). The endpoints must lie on that circle.
Arc edge_arc(const Vec3& from, const Vec3& to, const Vec3& pole_a, const Vec3& pole_b);

} // namespace meissner
