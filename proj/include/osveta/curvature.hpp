#pragma once

#include <vector>

#include "osveta/mesh.hpp"

namespace osveta {

enum class AreaMode { VoronoiMixed, Barycentric };

struct CurvatureAtVertex {
  Vec3 K = Vec3::Zero();  // mean curvature normal, 1/length
  double kH = 0.0;        // |K|/2, signed by K . outward-normal
  double kG = 0.0;        // angle deficit / area, 1/length^2
  double k1 = 0.0;        // principal curvatures, k1 >= k2
  double k2 = 0.0;
  double delta = 0.0;     // kH^2 - kG before clamping
  double area = 0.0;      // vertex area used
  bool boundary_partial = false;
  bool umbilic_clamped = false;
};

struct AngleFeatures {
  double theta_deg = 0.0;  // sum of wedge angles at the vertex
  double psi_min_deg = 0.0;
  double psi_max_deg = 0.0;
  bool has_dihedral = false;  // false when no incident interior edge exists
};

struct PrincipalCurvatures {
  double k1 = 0.0;
  double k2 = 0.0;
  double delta = 0.0;
  bool clamped = false;
};

// Vertex area per the selected mode: VoronoiMixed combines per-triangle
// Voronoi contributions with half/quarter areas for obtuse triangles;
// Barycentric takes one third of each incident triangle. Throws MeshError on
// a star with no non-degenerate face.
double vertex_area(const VertexStar& star, AreaMode mode);

// Cotangent-weighted mean curvature normal over the available ring edges.
// Boundary edges contribute their single cotangent.
Vec3 mean_curvature_normal(const VertexStar& star, double area);

double gaussian_curvature(const VertexStar& star, double area);

// delta = kH^2 - kG, clamped to 0 when negative (flagged).
PrincipalCurvatures principal_curvatures(double kH, double kG);

double theta_sum_deg(const VertexStar& star);

// Signed dihedral per incident interior edge: the acute angle between the two
// face planes, positive for a convex crease, negative for a concave one.
// Throws MeshError when the star has no interior incident edge.
std::pair<double, double> dihedral_extrema_deg(const VertexStar& star);

// Signed dihedral across one edge given the two faces and their normals; the
// edge is (a,b) as traversed in tri1's winding.
double signed_dihedral_deg(const Vec3& a, const Vec3& b, const Vec3& n1,
                           const Vec3& n2);

// Full per-vertex curvature bundle: area, K, signed kH, kG, principals.
CurvatureAtVertex curvature_at_vertex(const VertexStar& star, AreaMode mode);

// Max absolute 1-ring difference quotient of a per-vertex scalar field.
// NaN field values and isolated vertices yield NaN.
std::vector<double> curvature_gradient(const std::vector<double>& field,
                                       const Mesh& mesh, const Adjacency& adj);

// Angle-weighted average of incident face normals; zero for empty stars.
Vec3 outward_vertex_normal(const VertexStar& star);

}  // namespace osveta
