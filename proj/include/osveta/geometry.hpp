#pragma once

#include <Eigen/Dense>
#include <cmath>

namespace osveta {

using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = 3.14159265358979323846;

// Near-degenerate triangles can produce unbounded cotangents; clamp so a
// single sliver cannot dominate the Laplace-Beltrami sum.
inline constexpr double kCotClamp = 1e6;

inline double rad_to_deg(double r) { return r * (180.0 / kPi); }
inline double deg_to_rad(double d) { return d * (kPi / 180.0); }

inline double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  return 0.5 * (b - a).cross(c - a).norm();
}

// Unit normal following the winding a->b->c; zero vector for degenerate faces.
inline Vec3 triangle_normal(const Vec3& a, const Vec3& b, const Vec3& c) {
  Vec3 n = (b - a).cross(c - a);
  double len = n.norm();
  if (len <= 0.0) return Vec3::Zero();
  return n / len;
}

// Interior angle at `apex` in the triangle (apex, a, b), radians in [0, pi].
inline double angle_at(const Vec3& apex, const Vec3& a, const Vec3& b) {
  Vec3 u = a - apex;
  Vec3 v = b - apex;
  double nu = u.norm(), nv = v.norm();
  if (nu <= 0.0 || nv <= 0.0) return 0.0;
  double c = u.dot(v) / (nu * nv);
  c = std::clamp(c, -1.0, 1.0);
  return std::acos(c);
}

// cot of the angle at `apex`, computed as dot/|cross| and clamped.
inline double cot_at(const Vec3& apex, const Vec3& a, const Vec3& b) {
  Vec3 u = a - apex;
  Vec3 v = b - apex;
  double cross = u.cross(v).norm();
  double dot = u.dot(v);
  if (cross <= std::abs(dot) / kCotClamp) {
    return dot >= 0.0 ? kCotClamp : -kCotClamp;
  }
  return dot / cross;
}

// Perpendicular distance from p to the infinite line through a and b.
inline double point_line_distance(const Vec3& p, const Vec3& a, const Vec3& b) {
  Vec3 d = b - a;
  double len = d.norm();
  if (len <= 0.0) return (p - a).norm();
  return (p - a).cross(d).norm() / len;
}

}  // namespace osveta
