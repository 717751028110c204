#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "osveta/geometry.hpp"

namespace osveta {

class MeshError : public std::runtime_error {
 public:
  explicit MeshError(const std::string& what) : std::runtime_error(what) {}
};

// Indexed triangle soup M(V,F). Immutable once built; all adjacency is
// derived on demand and cached separately.
struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int face_count() const { return static_cast<int>(faces.size()); }

  Vec3 bbox_min() const;
  Vec3 bbox_max() const;
  double bbox_diagonal() const;
  double surface_area() const;

  // Throws MeshError on out-of-range or repeated face indices.
  void validate() const;
};

inline uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) |
         static_cast<uint32_t>(b);
}

struct EdgeRecord {
  int a = 0, b = 0;  // a < b
  std::vector<int> faces;
};

// Vertex/edge incidence maps. `vertex_neighbors` is the paper-style N_A.
struct Adjacency {
  std::vector<std::vector<int>> vertex_faces;      // sorted face ids
  std::vector<std::vector<int>> vertex_neighbors;  // sorted vertex ids
  std::vector<EdgeRecord> edges;                   // sorted by (a,b)

  int edge_count() const { return static_cast<int>(edges.size()); }
  const EdgeRecord* find_edge(int u, int v) const;
  int edge_face_count(int u, int v) const;

 private:
  std::unordered_map<uint64_t, int> edge_index_;
  friend Adjacency build_adjacency(const Mesh&);
};

Adjacency build_adjacency(const Mesh& mesh);

// One vertex with its ordered 1-ring. For a manifold interior vertex the
// ring is a closed cycle; for a boundary vertex an open chain. Non-manifold
// stars keep sorted (unordered) rings and are flagged.
struct VertexStar {
  int center = -1;
  Vec3 center_pos = Vec3::Zero();

  std::vector<int> ring;       // fan order (closed: ring[k],ring[k+1] span face k)
  std::vector<Vec3> ring_pos;  // positions of ring[]

  std::vector<int> face_ids;                    // fan order
  std::vector<std::array<int, 3>> face_tris;    // original winding
  std::vector<double> wedge_angles;             // angle at center, radians
  std::vector<double> face_areas;
  std::vector<Vec3> face_normals;               // unit, winding-oriented

  // Per ring vertex j: cotangents of the angles opposite edge (center,ring[j])
  // in its one or two incident faces. cot_beta is NaN on a boundary edge.
  std::vector<double> cot_alpha;
  std::vector<double> cot_beta;
  std::vector<int> edge_faces;  // incident-face count of edge (center, ring[j])

  bool open = false;      // boundary chain
  bool manifold = true;   // single fan/cycle, all incident edges <= 2 faces
  int degenerate_skipped = 0;

  int valence() const { return static_cast<int>(ring.size()); }
  int incident_face_count() const { return static_cast<int>(face_ids.size()); }
  const Vec3& position_of(int vertex_id) const;
};

// Star construction from an explicit incident-face list; `degenerate_area_eps`
// drops faces with area below it (pass 0 to keep everything).
VertexStar build_star(int center, const std::vector<Vec3>& positions,
                      std::span<const int> incident_face_ids,
                      std::span<const std::array<int, 3>> all_faces,
                      double degenerate_area_eps);

VertexStar make_vertex_star(const Mesh& mesh, const Adjacency& adj, int v);

// Topological-error vertices E_M and boundary vertices B_M.
struct TopologySets {
  std::vector<int> topological_errors;  // sorted
  std::vector<int> boundary;            // sorted

  bool is_error(int v) const;
  bool is_boundary(int v) const;
};

std::vector<int> detect_boundary(const Adjacency& adj);
std::vector<int> detect_topological_errors(const Mesh& mesh, const Adjacency& adj);
TopologySets compute_topology_sets(const Mesh& mesh, const Adjacency& adj);

int euler_characteristic(const Mesh& mesh, const Adjacency& adj);

}  // namespace osveta
