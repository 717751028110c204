#include "osveta/curvature.hpp"

#include <cmath>
#include <limits>

namespace osveta {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

double vertex_area(const VertexStar& star, AreaMode mode) {
  if (star.incident_face_count() == 0)
    throw MeshError("degenerate star at vertex " + std::to_string(star.center));

  double total = 0.0;
  if (mode == AreaMode::Barycentric) {
    for (double a : star.face_areas) total += a / 3.0;
    if (total <= 0.0)
      throw MeshError("degenerate star at vertex " + std::to_string(star.center));
    return total;
  }

  for (size_t k = 0; k < star.face_ids.size(); ++k) {
    const auto& tri = star.face_tris[k];
    auto pair = [&](int c) {
      for (int i = 0; i < 3; ++i)
        if (tri[i] == c)
          return std::array<int, 2>{tri[(i + 1) % 3], tri[(i + 2) % 3]};
      throw MeshError("face does not contain star center");
    }(star.center);
    const Vec3& p = star.center_pos;
    const Vec3& q = star.position_of(pair[0]);
    const Vec3& r = star.position_of(pair[1]);

    double ang_p = angle_at(p, q, r);
    double ang_q = angle_at(q, p, r);
    double ang_r = angle_at(r, p, q);
    constexpr double half_pi = kPi / 2.0;
    if (ang_p <= half_pi && ang_q <= half_pi && ang_r <= half_pi) {
      // Voronoi contribution of a non-obtuse triangle at p.
      total += ((p - q).squaredNorm() * cot_at(r, p, q) +
                (p - r).squaredNorm() * cot_at(q, p, r)) /
               8.0;
    } else if (ang_p > half_pi) {
      total += star.face_areas[k] / 2.0;
    } else {
      total += star.face_areas[k] / 4.0;
    }
  }
  if (total <= 0.0)
    throw MeshError("degenerate star at vertex " + std::to_string(star.center));
  return total;
}

Vec3 mean_curvature_normal(const VertexStar& star, double area) {
  Vec3 K = Vec3::Zero();
  for (size_t j = 0; j < star.ring.size(); ++j) {
    double w = 0.0;
    if (std::isfinite(star.cot_alpha[j])) w += star.cot_alpha[j];
    if (std::isfinite(star.cot_beta[j])) w += star.cot_beta[j];
    K += w * (star.ring_pos[j] - star.center_pos);
  }
  return K / (2.0 * area);
}

double gaussian_curvature(const VertexStar& star, double area) {
  double deficit = 2.0 * kPi;
  for (double a : star.wedge_angles) deficit -= a;
  return deficit / area;
}

PrincipalCurvatures principal_curvatures(double kH, double kG) {
  PrincipalCurvatures pc;
  pc.delta = kH * kH - kG;
  double d = pc.delta;
  if (d < 0.0) {
    d = 0.0;
    pc.clamped = true;
  }
  double s = std::sqrt(d);
  pc.k1 = kH + s;
  pc.k2 = kH - s;
  return pc;
}

double theta_sum_deg(const VertexStar& star) {
  double sum = 0.0;
  for (double a : star.wedge_angles) sum += a;
  return rad_to_deg(sum);
}

double signed_dihedral_deg(const Vec3& a, const Vec3& b, const Vec3& n1,
                           const Vec3& n2) {
  Vec3 e = b - a;
  double len = e.norm();
  if (len <= 0.0) return 0.0;
  e /= len;
  double sin_part = n1.cross(n2).dot(e);
  double cos_part = std::clamp(n1.dot(n2), -1.0, 1.0);
  double angle = std::atan2(std::abs(sin_part), cos_part);  // [0, pi]
  // Acute angle between the face planes; the supplement appears when the
  // oriented normals open past 90 degrees.
  double folded = std::min(angle, kPi - angle);
  double sign = sin_part >= 0.0 ? 1.0 : -1.0;
  return rad_to_deg(sign * folded);
}

std::pair<double, double> dihedral_extrema_deg(const VertexStar& star) {
  if (!star.manifold)
    throw MeshError("no dihedral defined at non-manifold vertex " +
                    std::to_string(star.center));
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  const int nf = star.incident_face_count();
  const bool closed = !star.open;
  // Ring edge j = (center, ring[j]); its faces are consecutive in fan order.
  for (size_t j = 0; j < star.ring.size(); ++j) {
    if (star.edge_faces[j] != 2) continue;
    int f_after = closed ? static_cast<int>(j % nf) : static_cast<int>(j);
    int f_before = closed ? static_cast<int>((j + nf - 1) % nf) : static_cast<int>(j) - 1;
    if (!closed && (f_before < 0 || f_after >= nf)) continue;
    // Edge direction per the winding of f_before's triple.
    const auto& tri = star.face_tris[f_before];
    Vec3 pa, pb;
    bool found = false;
    for (int k = 0; k < 3 && !found; ++k) {
      int u = tri[k], v = tri[(k + 1) % 3];
      if ((u == star.center && v == star.ring[j]) ||
          (v == star.center && u == star.ring[j])) {
        pa = star.position_of(u);
        pb = star.position_of(v);
        found = true;
      }
    }
    if (!found) continue;
    double psi = signed_dihedral_deg(pa, pb, star.face_normals[f_before],
                                     star.face_normals[f_after]);
    lo = std::min(lo, psi);
    hi = std::max(hi, psi);
  }
  if (!std::isfinite(lo))
    throw MeshError("no dihedral defined at vertex " + std::to_string(star.center));
  return {lo, hi};
}

Vec3 outward_vertex_normal(const VertexStar& star) {
  Vec3 n = Vec3::Zero();
  for (size_t k = 0; k < star.face_normals.size(); ++k)
    n += star.wedge_angles[k] * star.face_normals[k];
  double len = n.norm();
  return len > 0.0 ? Vec3(n / len) : Vec3::Zero();
}

CurvatureAtVertex curvature_at_vertex(const VertexStar& star, AreaMode mode) {
  CurvatureAtVertex out;
  out.area = vertex_area(star, mode);
  out.K = mean_curvature_normal(star, out.area);
  out.boundary_partial = star.open;

  double mag = 0.5 * out.K.norm();
  Vec3 n = outward_vertex_normal(star);
  double sgn = out.K.dot(n) < 0.0 ? -1.0 : 1.0;
  out.kH = sgn * mag;

  out.kG = gaussian_curvature(star, out.area);
  PrincipalCurvatures pc = principal_curvatures(out.kH, out.kG);
  out.k1 = pc.k1;
  out.k2 = pc.k2;
  out.delta = pc.delta;
  out.umbilic_clamped = pc.clamped;
  return out;
}

std::vector<double> curvature_gradient(const std::vector<double>& field,
                                       const Mesh& mesh, const Adjacency& adj) {
  std::vector<double> grad(field.size(), kNaN);
  for (size_t v = 0; v < field.size(); ++v) {
    if (!std::isfinite(field[v]) || adj.vertex_neighbors[v].empty()) continue;
    double best = 0.0;
    bool any = false;
    for (int u : adj.vertex_neighbors[v]) {
      if (!std::isfinite(field[u])) continue;
      double dist = (mesh.vertices[v] - mesh.vertices[u]).norm();
      if (dist <= 0.0) continue;
      best = std::max(best, std::abs(field[v] - field[u]) / dist);
      any = true;
    }
    if (any) grad[v] = best;
  }
  return grad;
}

}  // namespace osveta
