#include "spheremix/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace spheremix {

UnitVec3 make_unit(double x, double y, double z) {
  const double norm = std::sqrt(x * x + y * y + z * z);
  if (norm < 1e-300) {
    throw std::domain_error("make_unit: zero-length vector");
  }
  return UnitVec3{x / norm, y / norm, z / norm};
}

UnitVec3 renormalized(const UnitVec3& v) { return make_unit(v.x, v.y, v.z); }

double geodesic_distance(const UnitVec3& u, const UnitVec3& v) {
  const double d = std::clamp(dot(u, v), -1.0, 1.0);
  return std::acos(d);
}

Rotation3 identity_rotation() { return Rotation3{}; }

Rotation3 axis_angle_rotation(const UnitVec3& axis, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double t = 1.0 - c;
  const double ux = axis.x, uy = axis.y, uz = axis.z;
  Rotation3 r;
  r.m = {c + ux * ux * t,      ux * uy * t - uz * s, ux * uz * t + uy * s,
         uy * ux * t + uz * s, c + uy * uy * t,      uy * uz * t - ux * s,
         uz * ux * t - uy * s, uz * uy * t + ux * s, c + uz * uz * t};
  return r;
}

Rotation3 z_rotation(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Rotation3 r;
  r.m = {c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0};
  return r;
}

Rotation3 compose(const Rotation3& a, const Rotation3& b) {
  Rotation3 out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 3; ++k) acc += a(i, k) * b(k, j);
      out.m[3 * i + j] = acc;
    }
  }
  return out;
}

UnitVec3 rotate(const Rotation3& r, const UnitVec3& v) {
  const double x = r(0, 0) * v.x + r(0, 1) * v.y + r(0, 2) * v.z;
  const double y = r(1, 0) * v.x + r(1, 1) * v.y + r(1, 2) * v.z;
  const double z = r(2, 0) * v.x + r(2, 1) * v.y + r(2, 2) * v.z;
  return make_unit(x, y, z);
}

bool cap_contains(const Cap& cap, const UnitVec3& v) {
  return geodesic_distance(cap.center, v) <= cap.radius;
}

double uniform_cap_measure(double r) {
  if (r < -1e-12 || r > kPi + 1e-12) {
    throw std::domain_error("uniform_cap_measure: radius outside [0, pi]");
  }
  return 0.5 * (1.0 - std::cos(std::clamp(r, 0.0, kPi)));
}

}  // namespace spheremix
