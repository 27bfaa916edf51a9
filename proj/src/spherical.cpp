#include "meissner/spherical.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "meissner/error.hpp"

namespace meissner::spherical {

namespace {

double clamp_length(double v, const char* what) {
  if (!std::isfinite(v) || v < -kClampTol || v > kMaxEdgeAngle + kClampTol) {
    throw Error(ErrorKind::Geometry,
                std::string(what) + " = " + std::to_string(v) + " outside [0, pi/3]");
  }
  return std::clamp(v, 0.0, kMaxEdgeAngle);
}

} // namespace

double clamp_unit(double v, const char* what) {
  if (!std::isfinite(v) || v > 1.0 + kClampTol || v < -1.0 - kClampTol) {
    throw Error(ErrorKind::Geometry,
                std::string(what) + " = " + std::to_string(v) + " outside [-1, 1]");
  }
  return std::clamp(v, -1.0, 1.0);
}

PairLengths::PairLengths(double theta, double theta_dual)
    : theta_(clamp_length(theta, "theta")), theta_dual_(clamp_length(theta_dual, "theta_dual")) {}

double chord_to_arc(double chord, double tol) {
  if (!std::isfinite(chord) || chord < -tol) {
    throw Error(ErrorKind::Geometry, "negative chord " + std::to_string(chord));
  }
  if (chord > 1.0 + tol) {
    throw Error(ErrorKind::DiameterViolation,
                "chord " + std::to_string(chord) + " exceeds the unit diameter");
  }
  return 2.0 * std::asin(std::clamp(chord, 0.0, 1.0) / 2.0);
}

double dihedral_angle(const PairLengths& l) {
  const double ratio = std::sin(l.theta_dual() / 2.0) / std::cos(l.theta() / 2.0);
  return 2.0 * std::asin(clamp_unit(ratio, "sin(phi/2)"));
}

double midpoint_distance(const PairLengths& l) {
  // cos(φ/2)·cos(θ/2) = sqrt(cos²(θ/2) - sin²(θ'/2)), written symmetrically.
  const double c = std::cos(l.theta() / 2.0);
  const double sd = std::sin(l.theta_dual() / 2.0);
  return std::sqrt(std::max(0.0, (c - sd) * (c + sd)));
}

double circle_intersection_angle(double r1, double r2, double axis_angle) {
  constexpr double half_pi = kPi / 2.0;
  for (double r : {r1, r2}) {
    if (!(r >= -kClampTol && r <= half_pi + kClampTol)) {
      throw Error(ErrorKind::Geometry, "circle radius " + std::to_string(r) + " outside [0, pi/2]");
    }
  }
  if (axis_angle < std::abs(r1 - r2) - kClampTol || axis_angle > r1 + r2 + kClampTol) {
    throw Error(ErrorKind::NoIntersection, "circles with radii " + std::to_string(r1) + ", " +
                                               std::to_string(r2) + " at axis angle " +
                                               std::to_string(axis_angle) + " do not meet");
  }
  const double denom = std::sin(r1) * std::sin(r2);
  if (denom < 1e-15) {
    throw Error(ErrorKind::Geometry, "degenerate circle of zero radius");
  }
  const double c = (std::cos(axis_angle) - std::cos(r1) * std::cos(r2)) / denom;
  return std::acos(clamp_unit(c, "cos(alpha)"));
}

double wedge_angle(const PairLengths& l) {
  // cos α = cos(φ/2)/cos(θ'/2) rewritten as
  //   sin²(α/2) = sin((φ/2 + θ'/2)/2)·sin((φ/2 - θ'/2)/2) / cos(θ'/2),
  // with φ/2 - θ'/2 evaluated without cancellation.
  const double s = std::sin(l.theta() / 2.0);
  const double c = std::cos(l.theta() / 2.0);
  const double sd = std::sin(l.theta_dual() / 2.0);
  const double cd = std::cos(l.theta_dual() / 2.0);
  const double half_phi = dihedral_angle(l) / 2.0;
  const double d = midpoint_distance(l);
  const double gap = std::asin(clamp_unit(sd * s * s / (c * (cd + d)), "phi/2 - theta'/2"));
  const double sin2 =
      std::sin((half_phi + l.theta_dual() / 2.0) / 2.0) * std::sin(gap / 2.0) / cd;
  return 2.0 * std::asin(clamp_unit(std::sqrt(std::max(0.0, sin2)), "sin(alpha/2)"));
}

double rect_area(double theta, double theta_dual) {
  if (!(theta >= 0.0 && theta < kPi && theta_dual >= 0.0 && theta_dual < kPi)) {
    throw Error(ErrorKind::Geometry, "rectangle sides must lie in [0, pi)");
  }
  const double t = std::tan(theta / 2.0) * std::tan(theta_dual / 2.0);
  return 4.0 * std::asin(clamp_unit(t, "tan(theta/2)tan(theta'/2)"));
}

double wedge_area(const PairLengths& l) {
  const double phi_dual = dihedral_angle(l.swapped());
  return 4.0 * wedge_angle(l) - 2.0 * std::sin(l.theta_dual() / 2.0) * phi_dual;
}

double spindle_area(double theta, double phi) {
  const double h = theta / 2.0;
  return 2.0 * phi * (std::sin(h) - h * std::cos(h));
}

double f_pair(const PairLengths& l) {
  const double x = l.theta();
  const double y = l.theta_dual();
  const double ratio = std::sin(x / 2.0) / std::cos(y / 2.0);
  return 2.0 * y * std::cos(y / 2.0) * std::asin(clamp_unit(ratio, "sin(x/2)/cos(y/2)"));
}

double f_partial_x(const PairLengths& l) { return f_partial_x(l.theta(), l.theta_dual()); }

double f_partial_x(double x, double y) {
  const double sx = std::sin(x / 2.0);
  const double sy = std::sin(y / 2.0);
  const double rest = 1.0 - sx * sx - sy * sy;
  if (!(rest > 1e-14)) {
    throw Error(ErrorKind::Geometry, "df/dx undefined on the boundary of the admissible region");
  }
  return y * std::cos(x / 2.0) * std::cos(y / 2.0) / std::sqrt(rest);
}

double geodesic_polygon_area(std::span<const double> interior_angles) {
  const auto k = interior_angles.size();
  if (k < 3) {
    throw Error(ErrorKind::Geometry, "a spherical polygon needs at least 3 angles");
  }
  double sum = 0.0;
  for (double a : interior_angles) sum += a;
  const double area = sum - static_cast<double>(k - 2) * kPi;
  if (area < -kClampTol) {
    throw Error(ErrorKind::Geometry, "angle sum gives negative area " + std::to_string(area));
  }
  return std::max(area, 0.0);
}

double arc_polygon_area(std::span<const double> turning_angles, std::span<const BoundaryArc> arcs) {
  double area = 2.0 * kPi;
  for (double g : turning_angles) area -= g;
  for (const auto& arc : arcs) {
    if (!(arc.radius > 0.0 && arc.radius <= 1.0 + kClampTol)) {
      throw Error(ErrorKind::Geometry, "arc radius must lie in (0, 1]");
    }
    const double r = std::min(arc.radius, 1.0);
    area -= arc.length * std::sqrt(1.0 - r * r) / r;
  }
  return area;
}

} // namespace meissner::spherical
