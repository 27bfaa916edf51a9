#pragma once

// Closed-form spherical trigonometry for pairs of dual edges.
//
// A dual pair (e, e') is described by the spherical lengths theta = θ(e) and
// theta_dual = θ(e') measured on unit spheres. Throughout, the first length
// belongs to the retained edge (the one carrying a wedge) and the second to the
// smoothed edge (the one replaced by a spindle). All angles are radians.

#include <numbers>
#include <span>

namespace meissner::spherical {

inline constexpr double kPi = std::numbers::pi;
/// Largest spherical length of an edge of a diameter-one body.
inline constexpr double kMaxEdgeAngle = kPi / 3.0;
/// Inputs to asin/acos within this distance of [-1, 1] are clamped.
inline constexpr double kClampTol = 1e-9;

/// Clamps v into [-1, 1] if it is within kClampTol of the interval, otherwise
/// throws ErrorKind::Geometry naming `what`.
double clamp_unit(double v, const char* what);

/// Spherical lengths of a dual pair, validated to lie in [0, π/3].
class PairLengths {
public:
  /// Values within kClampTol outside [0, π/3] are clamped.
  PairLengths(double theta, double theta_dual);

  double theta() const noexcept { return theta_; }
  double theta_dual() const noexcept { return theta_dual_; }

  PairLengths swapped() const noexcept { return PairLengths(theta_dual_, theta_, Unchecked{}); }

private:
  struct Unchecked {};
  PairLengths(double t, double td, Unchecked) noexcept : theta_(t), theta_dual_(td) {}

  double theta_;
  double theta_dual_;
};

/// 2·asin(chord/2). Throws DiameterViolation for chord > 1 + tol.
double chord_to_arc(double chord, double tol = kClampTol);

/// Dihedral angle φ(e) at the first edge of the tetrahedron spanned by the pair:
/// sin(φ/2) = sin(θ'/2) / cos(θ/2).
double dihedral_angle(const PairLengths& lengths);

/// Distance between the midpoints of the two edges; symmetric in the pair.
double midpoint_distance(const PairLengths& lengths);

/// Angle at an intersection point of two circles on the unit sphere with
/// spherical radii r1, r2 whose axes make the angle axis_angle.
/// Throws NoIntersection when the circles do not meet.
double circle_intersection_angle(double r1, double r2, double axis_angle);

/// Angle α(e) between the circular edge arc and the geodesic with the same
/// endpoints: cos α · cos(θ'/2) = cos(φ(e)/2). Symmetric in the pair.
double wedge_angle(const PairLengths& lengths);

/// Area of a spherical rectangle with side lengths theta, theta_dual.
double rect_area(double theta, double theta_dual);

/// Area of the wedge surface W(e) around the retained edge.
double wedge_area(const PairLengths& lengths);

/// Area of the spindle surface of an edge of length theta rotated by phi.
double spindle_area(double theta, double phi);

/// Area saved by the pair relative to 2π:
/// f(x, y) = 2·y·cos(y/2)·asin(sin(x/2)/cos(y/2)).
double f_pair(const PairLengths& lengths);

/// ∂f/∂x. Throws Geometry where 1 - sin²(x/2) - sin²(y/2) <= 0.
double f_partial_x(const PairLengths& lengths);
double f_partial_x(double x, double y);

/// Gauss-Bonnet area of a convex geodesic polygon from its interior angles.
double geodesic_polygon_area(std::span<const double> interior_angles);

/// One boundary piece of a region bounded by circle arcs on the unit sphere.
struct BoundaryArc {
  double radius; ///< Euclidean radius of the supporting circle, in (0, 1].
  double length; ///< Arc length.
};

/// Gauss-Bonnet area of a simply connected region bounded by circle arcs,
/// given the turning angles at its corners and the arcs between them.
double arc_polygon_area(std::span<const double> turning_angles, std::span<const BoundaryArc> arcs);

} // namespace meissner::spherical
