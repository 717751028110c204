#include "osveta/features.hpp"

#include <cmath>
#include <limits>

#include "osveta/decimate.hpp"
#include "osveta/parallel.hpp"

namespace osveta {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

std::string flags_to_string(uint32_t flags) {
  static const std::pair<uint32_t, const char*> names[] = {
      {kFlagErrorVertex, "error"},
      {kFlagBoundary, "boundary"},
      {kFlagBoundaryPartial, "boundary_partial"},
      {kFlagUmbilicClamped, "umbilic_clamped"},
      {kFlagNoDihedral, "no_dihedral"},
      {kFlagQuadricFailed, "quadric_failed"},
      {kFlagTwoRingFit, "two_ring_fit"},
      {kFlagRisky, "risky"},
      {kFlagDegenerateFaces, "degenerate_faces"},
  };
  std::string out;
  for (const auto& [bit, name] : names) {
    if (flags & bit) {
      if (!out.empty()) out += ';';
      out += name;
    }
  }
  return out;
}

double max_adjacent_angle_deg(const VertexStar& star) {
  double best = 0.0;
  for (const auto& tri : star.face_tris) {
    for (int k = 0; k < 3; ++k) {
      const Vec3& apex = star.position_of(tri[k]);
      const Vec3& a = star.position_of(tri[(k + 1) % 3]);
      const Vec3& b = star.position_of(tri[(k + 2) % 3]);
      best = std::max(best, angle_at(apex, a, b));
    }
  }
  return rad_to_deg(best);
}

double longest_incident_edge(const VertexStar& star) {
  double best = 0.0;
  for (const auto& p : star.ring_pos)
    best = std::max(best, (p - star.center_pos).norm());
  return best;
}

double max_face_elongation(const VertexStar& star) {
  double best = 0.0;
  for (size_t k = 0; k < star.face_tris.size(); ++k) {
    const auto& tri = star.face_tris[k];
    const Vec3& a = star.position_of(tri[0]);
    const Vec3& b = star.position_of(tri[1]);
    const Vec3& c = star.position_of(tri[2]);
    double e0 = (b - a).norm(), e1 = (c - b).norm(), e2 = (a - c).norm();
    double longest = std::max({e0, e1, e2});
    double area = star.face_areas[k];
    if (area <= 0.0 || longest <= 0.0) continue;
    // Shortest altitude = 2 area / longest edge.
    best = std::max(best, longest * longest / (2.0 * area));
  }
  return best;
}

double zero_band_for(const std::vector<double>& column, double rel) {
  double peak = 0.0;
  for (double v : column)
    if (std::isfinite(v)) peak = std::max(peak, std::abs(v));
  return rel * peak;
}

FeatureTable compute_feature_table(const Mesh& mesh, const Adjacency& adj,
                                   const TopologySets& topo,
                                   const FeatureParams& params) {
  const int n = mesh.vertex_count();
  FeatureTable t;
  t.size = n;
  auto init = [&](std::vector<double>& col) { col.assign(n, kNaN); };
  init(t.kG);
  init(t.kH);
  init(t.k1);
  init(t.k2);
  init(t.theta_deg);
  init(t.psi_min_deg);
  init(t.psi_max_deg);
  init(t.kGI);
  init(t.kHI);
  init(t.c_el);
  init(t.c_dug);
  init(t.c_tup);
  init(t.c_vis);
  init(t.grad_kG);
  init(t.grad_kH);
  init(t.area);
  t.vclass.assign(n, VertexClass::Complex);
  t.shape.assign(n, SurfaceShape::Planar);
  t.flags.assign(n, 0);

  for (int v : topo.topological_errors) t.flags[v] |= kFlagErrorVertex;
  for (int v : topo.boundary) t.flags[v] |= kFlagBoundary;

  const double diag = mesh.bbox_diagonal();
  const double degenerate_eps = 1e-12 * diag * diag;

  parallel_for(n, params.threads, [&](int v) {
    if (t.flags[v] & kFlagErrorVertex) return;
    if (adj.vertex_faces[v].empty()) {
      // Unreachable: isolated vertices are E_M members.
      t.flags[v] |= kFlagErrorVertex;
      return;
    }
    VertexStar star =
        build_star(v, mesh.vertices, adj.vertex_faces[v], mesh.faces, degenerate_eps);
    if (star.degenerate_skipped > 0) t.flags[v] |= kFlagDegenerateFaces;
    if (!star.manifold) {
      // Guarded by E_M in practice; keep the row absent if reached.
      t.flags[v] |= kFlagErrorVertex;
      return;
    }
    if (star.incident_face_count() == 0) {
      t.flags[v] |= kFlagErrorVertex;
      return;
    }

    t.vclass[v] = classify_vertex(star, params.feature_angle_deg);

    try {
      CurvatureAtVertex cv = curvature_at_vertex(star, params.area_mode);
      t.kG[v] = cv.kG;
      t.kH[v] = cv.kH;
      t.k1[v] = cv.k1;
      t.k2[v] = cv.k2;
      t.area[v] = cv.area;
      if (cv.boundary_partial) t.flags[v] |= kFlagBoundaryPartial;
      if (cv.umbilic_clamped) t.flags[v] |= kFlagUmbilicClamped;
    } catch (const MeshError&) {
      t.flags[v] |= kFlagErrorVertex;
      return;
    }

    t.theta_deg[v] = theta_sum_deg(star);
    try {
      auto [lo, hi] = dihedral_extrema_deg(star);
      t.psi_min_deg[v] = lo;
      t.psi_max_deg[v] = hi;
    } catch (const MeshError&) {
      t.flags[v] |= kFlagNoDihedral;
    }

    try {
      Vec3 normal = estimate_normal(star, params.normal_mode);
      LocalFrame frame = local_frame(normal);
      frame.origin = mesh.vertices[v];
      QuadricFit fit = fit_quadric(star, frame, params.quadric_kind, mesh, adj);
      if (fit.used_two_ring) t.flags[v] |= kFlagTwoRingFit;
      QuadricCurvatures qc = curvatures_from_quadric(fit, frame);
      t.kGI[v] = qc.kG;
      t.kHI[v] = qc.kH;
    } catch (const MeshError&) {
      t.flags[v] |= kFlagQuadricFailed;
    }

    t.c_dug[v] = longest_incident_edge(star);
    t.c_tup[v] = max_adjacent_angle_deg(star);
    t.c_el[v] = max_face_elongation(star);
    try {
      t.c_vis[v] = distance_to_average_plane(star);
    } catch (const MeshError&) {
      // fewer than 3 ring vertices; leave absent
    }
  });

  t.grad_kG = curvature_gradient(t.kG, mesh, adj);
  t.grad_kH = curvature_gradient(t.kH, mesh, adj);

  const double band_g = zero_band_for(t.kG, params.zero_band_rel);
  for (int v = 0; v < n; ++v) {
    if (!t.defined(v) || !std::isfinite(t.kG[v])) continue;
    t.shape[v] = surface_shape(t.kG[v], t.kH[v], band_g);
  }
  return t;
}

}  // namespace osveta
