#include "osveta/quadric.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>

#include "osveta/curvature.hpp"

namespace osveta {

Vec3 estimate_normal(const VertexStar& star, NormalMode mode) {
  if (mode == NormalMode::AngleWeightedAverage) {
    if (star.incident_face_count() == 0)
      throw MeshError("cannot estimate normal: no incident faces at vertex " +
                      std::to_string(star.center));
    Vec3 n = outward_vertex_normal(star);
    if (n.norm() == 0.0)
      throw MeshError("cannot estimate normal: face normals cancel at vertex " +
                      std::to_string(star.center));
    return n;
  }

  if (star.valence() < 3)
    throw MeshError("cannot fit plane: fewer than 3 neighbors at vertex " +
                    std::to_string(star.center));
  Vec3 centroid = star.center_pos;
  for (const auto& p : star.ring_pos) centroid += p;
  centroid /= static_cast<double>(star.valence() + 1);

  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  auto accumulate = [&](const Vec3& p) {
    Vec3 d = p - centroid;
    cov += d * d.transpose();
  };
  accumulate(star.center_pos);
  for (const auto& p : star.ring_pos) accumulate(p);

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
  // Smallest-eigenvalue direction; degenerate when the two smallest collide
  // at zero (collinear points).
  if (eig.eigenvalues()(1) <= 1e-14 * std::max(1.0, eig.eigenvalues()(2)))
    throw MeshError("cannot fit plane: collinear ring at vertex " +
                    std::to_string(star.center));
  Vec3 n = eig.eigenvectors().col(0);
  Vec3 reference = outward_vertex_normal(star);
  if (reference.norm() > 0.0 && n.dot(reference) < 0.0) n = -n;
  return n.normalized();
}

LocalFrame local_frame(const Vec3& unit_normal) {
  LocalFrame f;
  f.r3 = unit_normal;
  Vec3 seed = Vec3::UnitX();
  Vec3 projected = seed - unit_normal * unit_normal.dot(seed);
  if (projected.norm() < 1e-8) {
    seed = Vec3::UnitY();
    projected = seed - unit_normal * unit_normal.dot(seed);
  }
  f.r1 = projected.normalized();
  f.r2 = f.r3.cross(f.r1);
  return f;
}

QuadricFit fit_quadric_points(const std::vector<Vec3>& world_points,
                              const LocalFrame& frame, QuadricKind kind) {
  const int cols = kind == QuadricKind::Simple ? 3 : 5;
  const int n = static_cast<int>(world_points.size());
  if (n < cols)
    throw MeshError("unfittable star: " + std::to_string(n) +
                    " samples for " + std::to_string(cols) + " coefficients");

  Eigen::MatrixXd M(n, cols);
  Eigen::VectorXd z(n);
  for (int i = 0; i < n; ++i) {
    Vec3 local = frame.to_local(world_points[i]);
    M(i, 0) = local.x() * local.x();
    M(i, 1) = local.x() * local.y();
    M(i, 2) = local.y() * local.y();
    if (cols == 5) {
      M(i, 3) = local.x();
      M(i, 4) = local.y();
    }
    z(i) = local.z();
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(M);
  qr.setThreshold(1e-10);
  if (qr.rank() < cols)
    throw MeshError("unfittable star: rank-deficient quadric system");
  Eigen::VectorXd coeff = qr.solve(z);

  QuadricFit fit;
  fit.kind = kind;
  fit.a = coeff(0);
  fit.b = coeff(1);
  fit.c = coeff(2);
  if (cols == 5) {
    fit.d = coeff(3);
    fit.e = coeff(4);
  }
  fit.samples = n;
  fit.residual_rms = std::sqrt((M * coeff - z).squaredNorm() / n);
  return fit;
}

QuadricFit fit_quadric(const VertexStar& star, const LocalFrame& frame,
                       QuadricKind kind, const Mesh& mesh, const Adjacency& adj) {
  const int need = kind == QuadricKind::Simple ? 3 : 5;
  std::vector<Vec3> pts = star.ring_pos;

  bool two_ring = false;
  auto try_fit = [&]() -> std::optional<QuadricFit> {
    if (static_cast<int>(pts.size()) < need) return std::nullopt;
    try {
      QuadricFit f = fit_quadric_points(pts, frame, kind);
      f.used_two_ring = two_ring;
      return f;
    } catch (const MeshError&) {
      return std::nullopt;
    }
  };

  if (auto f = try_fit()) return *f;

  // Under-determined 1-ring: widen to the 2-ring.
  two_ring = true;
  std::set<int> seen(star.ring.begin(), star.ring.end());
  seen.insert(star.center);
  for (int r : star.ring)
    for (int u : adj.vertex_neighbors[r])
      if (seen.insert(u).second) pts.push_back(mesh.vertices[u]);

  if (auto f = try_fit()) return *f;
  throw MeshError("unfittable star: rank-deficient after 2-ring extension at vertex " +
                  std::to_string(star.center));
}

QuadricCurvatures curvatures_from_quadric(const QuadricFit& fit,
                                          const LocalFrame& frame) {
  QuadricCurvatures out;
  const double a = fit.a, b = fit.b, c = fit.c;
  double root = std::sqrt((a - c) * (a - c) + b * b);
  out.k1 = a + c + root;
  out.k2 = a + c - root;

  if (fit.kind == QuadricKind::Simple) {
    out.kG = 4.0 * a * c - b * b;
    out.kH = a + c;
    return out;
  }

  const double d = fit.d, e = fit.e;
  const double w = 1.0 + d * d + e * e;
  out.kG = (4.0 * a * c - b * b) / (w * w);
  out.kH = (a + c + a * e * e + c * d * d - b * d * e) / std::sqrt(w * w * w);
  // Printed form divides by w without a root and is not unit; normalize.
  Vec3 local(-d, -e, 1.0);
  out.refined_normal = frame.direction_to_world(local.normalized());
  return out;
}

}  // namespace osveta
