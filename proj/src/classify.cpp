#include "osveta/classify.hpp"

#include <cmath>

#include "osveta/curvature.hpp"

namespace osveta {

std::string to_string(VertexClass c) {
  switch (c) {
    case VertexClass::SimpleSmooth: return "simple_smooth";
    case VertexClass::InteriorEdge: return "interior_edge";
    case VertexClass::Corner: return "corner";
    case VertexClass::Complex: return "complex";
    case VertexClass::Boundary: return "boundary";
  }
  return "?";
}

std::string to_string(SurfaceShape s) {
  switch (s) {
    case SurfaceShape::Planar: return "planar";
    case SurfaceShape::RidgeConvex: return "ridge_convex";
    case SurfaceShape::ValleyConcave: return "valley_concave";
    case SurfaceShape::Convex: return "convex";
    case SurfaceShape::Concave: return "concave";
    case SurfaceShape::Saddle: return "saddle";
    case SurfaceShape::SaddleRidge: return "saddle_ridge";
    case SurfaceShape::SaddleValley: return "saddle_valley";
  }
  return "?";
}

VertexClass classify_vertex(const VertexStar& star, double feature_angle_deg) {
  if (!star.manifold) return VertexClass::Complex;
  if (star.open) return VertexClass::Boundary;

  int feature_edges = 0;
  const int nf = star.incident_face_count();
  for (size_t j = 0; j < star.ring.size(); ++j) {
    if (star.edge_faces[j] != 2) continue;
    int f_after = static_cast<int>(j) % nf;
    int f_before = (static_cast<int>(j) + nf - 1) % nf;
    const auto& tri = star.face_tris[f_before];
    for (int k = 0; k < 3; ++k) {
      int u = tri[k], v = tri[(k + 1) % 3];
      if ((u == star.center && v == star.ring[j]) ||
          (v == star.center && u == star.ring[j])) {
        double psi = signed_dihedral_deg(star.position_of(u), star.position_of(v),
                                         star.face_normals[f_before],
                                         star.face_normals[f_after]);
        if (std::abs(psi) > feature_angle_deg) ++feature_edges;
        break;
      }
    }
  }
  if (feature_edges >= 3) return VertexClass::Corner;
  if (feature_edges == 2) return VertexClass::InteriorEdge;
  return VertexClass::SimpleSmooth;
}

SurfaceShape surface_shape(double kG, double kH, double zero_band) {
  int sg = std::abs(kG) <= zero_band ? 0 : (kG > 0.0 ? 1 : -1);
  int sh = std::abs(kH) <= zero_band ? 0 : (kH > 0.0 ? 1 : -1);
  if (sg == 0) {
    if (sh == 0) return SurfaceShape::Planar;
    return sh < 0 ? SurfaceShape::RidgeConvex : SurfaceShape::ValleyConcave;
  }
  if (sg > 0) return sh < 0 ? SurfaceShape::Convex : SurfaceShape::Concave;
  if (sh == 0) return SurfaceShape::Saddle;
  return sh < 0 ? SurfaceShape::SaddleRidge : SurfaceShape::SaddleValley;
}

std::vector<int> risky_primitives(const Mesh& mesh, const Adjacency& adj,
                                  const TopologySets& topo,
                                  const RiskyInputs& features) {
  const int n = mesh.vertex_count();
  std::vector<char> flag(n, 0);
  for (int v : topo.topological_errors) flag[v] = 1;
  for (int v : topo.boundary) flag[v] = 1;

  // Valence outliers: > mean + 3 sigma among referenced vertices.
  double mean = 0.0, m2 = 0.0;
  int count = 0;
  for (int v = 0; v < n; ++v) {
    if (adj.vertex_faces[v].empty()) continue;
    ++count;
    double val = static_cast<double>(adj.vertex_neighbors[v].size());
    double d = val - mean;
    mean += d / count;
    m2 += d * (val - mean);
  }
  if (count > 1) {
    double sigma = std::sqrt(m2 / count);
    double cutoff = mean + 3.0 * sigma;
    for (int v = 0; v < n; ++v)
      if (!adj.vertex_faces[v].empty() &&
          static_cast<double>(adj.vertex_neighbors[v].size()) > cutoff)
        flag[v] = 1;
  }

  // Collinear incident edges: every pair of edge directions within 1 degree
  // of one line.
  const double cos_tol = std::cos(deg_to_rad(1.0));
  for (int v = 0; v < n; ++v) {
    const auto& nb = adj.vertex_neighbors[v];
    if (nb.size() < 2 || flag[v]) continue;
    bool collinear = true;
    Vec3 ref = Vec3::Zero();
    for (int u : nb) {
      Vec3 d = mesh.vertices[u] - mesh.vertices[v];
      double len = d.norm();
      if (len <= 0.0) continue;
      d /= len;
      if (ref.isZero()) {
        ref = d;
        continue;
      }
      if (std::abs(ref.dot(d)) < cos_tol) {
        collinear = false;
        break;
      }
    }
    if (collinear && !ref.isZero()) flag[v] = 1;
  }

  // Flat/smooth: both curvatures inside the zero band.
  if (features.kG && features.kH) {
    for (int v = 0; v < n; ++v) {
      double g = (*features.kG)[v];
      double h = (*features.kH)[v];
      if (std::isfinite(g) && std::isfinite(h) &&
          std::abs(g) <= features.kG_zero_band &&
          std::abs(h) <= features.kH_zero_band)
        flag[v] = 1;
    }
  }

  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (flag[v]) out.push_back(v);
  return out;
}

}  // namespace osveta
