#pragma once

#include <array>
#include <cmath>

namespace spheremix {

inline constexpr double kPi = 3.14159265358979323846;

/// A point on the unit sphere S^2. Coordinates satisfy x^2+y^2+z^2 = 1
/// within 1e-12; renormalize() restores the invariant after arithmetic.
struct UnitVec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;
};

inline UnitVec3 north() { return UnitVec3{0.0, 0.0, 1.0}; }

inline double dot(const UnitVec3& a, const UnitVec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline UnitVec3 cross(const UnitVec3& a, const UnitVec3& b) {
  return UnitVec3{a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z,
                  a.x * b.y - a.y * b.x};
}

/// Builds a unit vector from raw coordinates. Throws std::domain_error on a
/// near-zero input.
UnitVec3 make_unit(double x, double y, double z);

UnitVec3 renormalized(const UnitVec3& v);

/// Geodesic (great-circle) distance in [0, pi]. The dot product is clamped
/// to [-1, 1] before acos so 1+eps roundoff cannot produce NaN.
double geodesic_distance(const UnitVec3& u, const UnitVec3& v);

/// A rotation of R^3, stored as a row-major 3x3 matrix.
/// Invariants: R R^T = I and det R = 1, each within 1e-12.
struct Rotation3 {
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

  double operator()(int row, int col) const { return m[3 * row + col]; }
};

Rotation3 identity_rotation();

/// Rodrigues construction. `axis` must be unit length.
Rotation3 axis_angle_rotation(const UnitVec3& axis, double angle);

/// Rotation about the z axis (the isotropy subgroup of the north pole).
Rotation3 z_rotation(double angle);

Rotation3 compose(const Rotation3& a, const Rotation3& b);

/// Applies R to v and renormalizes, so repeated application cannot drift
/// off the sphere.
UnitVec3 rotate(const Rotation3& r, const UnitVec3& v);

/// Spherical cap: all points within geodesic distance `radius` of `center`.
struct Cap {
  UnitVec3 center;
  double radius = 0.0;  // radians, in [0, pi]
};

/// Boundary inclusive.
bool cap_contains(const Cap& cap, const UnitVec3& v);

/// Normalized uniform measure of a cap of geodesic radius r: (1 - cos r)/2.
/// Throws std::domain_error outside [0, pi].
double uniform_cap_measure(double r);

}  // namespace spheremix
