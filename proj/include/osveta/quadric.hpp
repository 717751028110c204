#pragma once

#include <optional>
#include <vector>

#include "osveta/mesh.hpp"

namespace osveta {

enum class NormalMode { AngleWeightedAverage, LSQPlane };
enum class QuadricKind { Simple, Extended };

// Orthonormal rows (r1, r2, r3 = normal); maps world deltas into the tangent
// frame via rotate(x - origin).
struct LocalFrame {
  Vec3 origin = Vec3::Zero();
  Vec3 r1 = Vec3::UnitX();
  Vec3 r2 = Vec3::UnitY();
  Vec3 r3 = Vec3::UnitZ();

  Vec3 to_local(const Vec3& world) const {
    Vec3 d = world - origin;
    return {r1.dot(d), r2.dot(d), r3.dot(d)};
  }
  Vec3 direction_to_world(const Vec3& local) const {
    return local.x() * r1 + local.y() * r2 + local.z() * r3;
  }
};

struct QuadricFit {
  QuadricKind kind = QuadricKind::Simple;
  double a = 0.0, b = 0.0, c = 0.0;  // z = a x^2 + b xy + c y^2 (+ d x + e y)
  double d = 0.0, e = 0.0;
  double residual_rms = 0.0;
  int samples = 0;
  bool used_two_ring = false;
};

struct QuadricCurvatures {
  double k1 = 0.0, k2 = 0.0;          // from the simple-form coefficients
  double kG = 0.0, kH = 0.0;          // kGI / kHI of the criteria tables
  std::optional<Vec3> refined_normal; // Extended only
};

// Estimated unit outward normal at the star center. Throws MeshError when the
// configuration is degenerate (no faces / collinear ring for the plane mode).
Vec3 estimate_normal(const VertexStar& star, NormalMode mode);

// Tangent frame per the projected-x-axis rule; falls back to the global y
// axis when the normal is within 1e-8 of +-x.
LocalFrame local_frame(const Vec3& unit_normal);

// Least-squares quadric through the mapped sample points (QR-based).
// Throws MeshError on a rank-deficient system.
QuadricFit fit_quadric_points(const std::vector<Vec3>& world_points,
                              const LocalFrame& frame, QuadricKind kind);

// Fits the star's ring; extends to the 2-ring when the ring alone cannot
// determine the coefficients. Needs mesh+adjacency for the 2-ring lookup.
QuadricFit fit_quadric(const VertexStar& star, const LocalFrame& frame,
                       QuadricKind kind, const Mesh& mesh, const Adjacency& adj);

QuadricCurvatures curvatures_from_quadric(const QuadricFit& fit,
                                          const LocalFrame& frame);

}  // namespace osveta
