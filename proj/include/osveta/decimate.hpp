#pragma once

#include <vector>

#include "osveta/mesh.hpp"

namespace osveta {

struct DecimationParams {
  double distance_threshold = 0.0;       // fraction of bbox diagonal
  double edge_distance_threshold = 0.0;  // fraction of bbox diagonal
  double feature_angle_deg = 30.0;
  double target_fraction = 1.0;  // stop once retained/original would drop below
  int max_passes = 100;
};

struct DecimationReport {
  std::vector<int> deleted;    // original ids, deletion order
  std::vector<int> surviving;  // original ids, sorted
  std::vector<int> old_to_new; // -1 for deleted vertices
  int passes = 0;
  int final_face_count = 0;

  bool survived(int original_id) const {
    return original_id >= 0 && original_id < static_cast<int>(old_to_new.size()) &&
           old_to_new[original_id] >= 0;
  }
};

// Distance of the star center from the area-weighted average plane of its
// ring. Throws MeshError on a degenerate (collinear) ring.
double distance_to_average_plane(const VertexStar& star);

// Perpendicular distance from `vertex` to the line through the two endpoints.
// Throws MeshError when the endpoints coincide.
double distance_to_boundary_edge(const Vec3& vertex, const Vec3& end_a,
                                 const Vec3& end_b);

// Max-min-angle recursive split triangulation of a simple boundary loop.
// Returns loop_size - 2 triangles preserving the loop orientation. Throws
// MeshError on repeated ids or a self-intersecting projected loop.
std::vector<std::array<int, 3>> triangulate_hole(const std::vector<int>& loop,
                                                 const std::vector<Vec3>& positions);

// Schroeder-style vertex decimation: per pass, simple-smooth vertices inside
// the plane-distance threshold and boundary/interior-edge vertices inside the
// line-distance threshold are removed and their holes retriangulated.
std::pair<Mesh, DecimationReport> decimate(const Mesh& mesh,
                                           const DecimationParams& params);

}  // namespace osveta
