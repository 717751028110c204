#include "osveta/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace osveta {

Vec3 Mesh::bbox_min() const {
  Vec3 m = Vec3::Constant(std::numeric_limits<double>::infinity());
  for (const auto& v : vertices) m = m.cwiseMin(v);
  return m;
}

Vec3 Mesh::bbox_max() const {
  Vec3 m = Vec3::Constant(-std::numeric_limits<double>::infinity());
  for (const auto& v : vertices) m = m.cwiseMax(v);
  return m;
}

double Mesh::bbox_diagonal() const {
  if (vertices.empty()) return 0.0;
  return (bbox_max() - bbox_min()).norm();
}

double Mesh::surface_area() const {
  double a = 0.0;
  for (const auto& f : faces)
    a += triangle_area(vertices[f[0]], vertices[f[1]], vertices[f[2]]);
  return a;
}

void Mesh::validate() const {
  const int n = vertex_count();
  for (size_t i = 0; i < faces.size(); ++i) {
    const auto& f = faces[i];
    for (int k = 0; k < 3; ++k) {
      if (f[k] < 0 || f[k] >= n)
        throw MeshError("face " + std::to_string(i) + ": vertex index " +
                        std::to_string(f[k]) + " out of range (vertex count " +
                        std::to_string(n) + ")");
    }
    if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2])
      throw MeshError("face " + std::to_string(i) + " repeats a vertex index");
  }
}

const EdgeRecord* Adjacency::find_edge(int u, int v) const {
  auto it = edge_index_.find(edge_key(u, v));
  if (it == edge_index_.end()) return nullptr;
  return &edges[it->second];
}

int Adjacency::edge_face_count(int u, int v) const {
  const EdgeRecord* e = find_edge(u, v);
  return e ? static_cast<int>(e->faces.size()) : 0;
}

Adjacency build_adjacency(const Mesh& mesh) {
  Adjacency adj;
  const int n = mesh.vertex_count();
  adj.vertex_faces.resize(n);
  adj.vertex_neighbors.resize(n);

  std::unordered_map<uint64_t, int> index;
  index.reserve(mesh.faces.size() * 2);

  for (int fi = 0; fi < mesh.face_count(); ++fi) {
    const auto& f = mesh.faces[fi];
    for (int k = 0; k < 3; ++k) {
      adj.vertex_faces[f[k]].push_back(fi);
      int a = f[k], b = f[(k + 1) % 3];
      uint64_t key = edge_key(a, b);
      auto it = index.find(key);
      if (it == index.end()) {
        index.emplace(key, static_cast<int>(adj.edges.size()));
        EdgeRecord rec;
        rec.a = std::min(a, b);
        rec.b = std::max(a, b);
        rec.faces.push_back(fi);
        adj.edges.push_back(std::move(rec));
      } else {
        adj.edges[it->second].faces.push_back(fi);
      }
    }
  }

  // Deterministic edge order regardless of face-list order.
  std::vector<int> perm(adj.edges.size());
  for (size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
  std::sort(perm.begin(), perm.end(), [&](int x, int y) {
    const auto& ex = adj.edges[x];
    const auto& ey = adj.edges[y];
    return ex.a != ey.a ? ex.a < ey.a : ex.b < ey.b;
  });
  std::vector<EdgeRecord> sorted;
  sorted.reserve(adj.edges.size());
  for (int p : perm) sorted.push_back(std::move(adj.edges[p]));
  adj.edges = std::move(sorted);
  adj.edge_index_.reserve(adj.edges.size());
  for (size_t i = 0; i < adj.edges.size(); ++i)
    adj.edge_index_[edge_key(adj.edges[i].a, adj.edges[i].b)] = static_cast<int>(i);

  for (const auto& e : adj.edges) {
    adj.vertex_neighbors[e.a].push_back(e.b);
    adj.vertex_neighbors[e.b].push_back(e.a);
  }
  for (auto& nb : adj.vertex_neighbors) std::sort(nb.begin(), nb.end());
  for (auto& vf : adj.vertex_faces) std::sort(vf.begin(), vf.end());
  return adj;
}

const Vec3& VertexStar::position_of(int vertex_id) const {
  if (vertex_id == center) return center_pos;
  for (size_t i = 0; i < ring.size(); ++i)
    if (ring[i] == vertex_id) return ring_pos[i];
  throw MeshError("vertex " + std::to_string(vertex_id) + " not in star of " +
                  std::to_string(center));
}

namespace {

// The two non-center vertices of `tri`, in winding order after the center.
std::array<int, 2> opposite_pair(const std::array<int, 3>& tri, int center) {
  for (int k = 0; k < 3; ++k)
    if (tri[k] == center) return {tri[(k + 1) % 3], tri[(k + 2) % 3]};
  throw MeshError("face does not contain star center");
}

}  // namespace

VertexStar build_star(int center, const std::vector<Vec3>& positions,
                      std::span<const int> incident_face_ids,
                      std::span<const std::array<int, 3>> all_faces,
                      double degenerate_area_eps) {
  VertexStar star;
  star.center = center;
  star.center_pos = positions[center];

  struct LocalFace {
    int id;
    std::array<int, 2> others;  // winding order
    double area;
  };
  std::vector<LocalFace> local;
  local.reserve(incident_face_ids.size());
  for (int fi : incident_face_ids) {
    const auto& tri = all_faces[fi];
    double area = triangle_area(positions[tri[0]], positions[tri[1]], positions[tri[2]]);
    if (area < degenerate_area_eps) {
      ++star.degenerate_skipped;
      continue;
    }
    local.push_back({fi, opposite_pair(tri, center), area});
  }
  std::sort(local.begin(), local.end(),
            [](const LocalFace& x, const LocalFace& y) { return x.id < y.id; });

  // Edge (center, x) -> indices into `local`.
  std::unordered_map<int, std::vector<int>> spokes;
  for (size_t i = 0; i < local.size(); ++i) {
    spokes[local[i].others[0]].push_back(static_cast<int>(i));
    spokes[local[i].others[1]].push_back(static_cast<int>(i));
  }

  bool fanable = true;
  int boundary_spokes = 0;
  for (const auto& [v, fl] : spokes) {
    if (fl.size() > 2) fanable = false;
    if (fl.size() == 1) ++boundary_spokes;
  }
  if (boundary_spokes != 0 && boundary_spokes != 2) fanable = false;

  std::vector<int> order;  // indices into local, fan order
  if (fanable && !local.empty()) {
    star.open = boundary_spokes == 2;
    // Walk spoke-to-spoke. Start at the smallest boundary spoke (open) or the
    // winding successor of the smallest-id face (closed).
    int start_vertex = -1;
    if (star.open) {
      for (const auto& [v, fl] : spokes)
        if (fl.size() == 1 && (start_vertex < 0 || v < start_vertex)) start_vertex = v;
    } else {
      start_vertex = local[0].others[0];
    }

    std::vector<char> used(local.size(), 0);
    int current = start_vertex;
    star.ring.push_back(current);
    while (true) {
      auto it = spokes.find(current);
      int next_face = -1;
      for (int li : it->second)
        if (!used[li]) {
          next_face = li;
          break;
        }
      if (next_face < 0) break;
      used[next_face] = 1;
      order.push_back(next_face);
      const auto& o = local[next_face].others;
      current = (o[0] == current) ? o[1] : o[0];
      if (!star.open && current == start_vertex) break;
      star.ring.push_back(current);
    }
    if (order.size() != local.size()) {
      // Disconnected fan pieces around the vertex.
      fanable = false;
      star.ring.clear();
      order.clear();
    }
  }

  if (!fanable) {
    // Non-manifold star: keep a sorted, unordered ring; faces in id order.
    star.manifold = false;
    star.open = boundary_spokes > 0;
    std::vector<int> nb;
    for (const auto& [v, fl] : spokes) nb.push_back(v);
    std::sort(nb.begin(), nb.end());
    star.ring = std::move(nb);
    order.resize(local.size());
    for (size_t i = 0; i < local.size(); ++i) order[i] = static_cast<int>(i);
  }

  star.ring_pos.reserve(star.ring.size());
  for (int v : star.ring) star.ring_pos.push_back(positions[v]);

  for (int li : order) {
    const LocalFace& lf = local[li];
    const auto& tri = all_faces[lf.id];
    star.face_ids.push_back(lf.id);
    star.face_tris.push_back(tri);
    star.face_areas.push_back(lf.area);
    star.face_normals.push_back(
        triangle_normal(positions[tri[0]], positions[tri[1]], positions[tri[2]]));
    star.wedge_angles.push_back(
        angle_at(positions[center], positions[lf.others[0]], positions[lf.others[1]]));
  }

  const double nan = std::numeric_limits<double>::quiet_NaN();
  star.cot_alpha.assign(star.ring.size(), nan);
  star.cot_beta.assign(star.ring.size(), nan);
  star.edge_faces.assign(star.ring.size(), 0);
  for (size_t j = 0; j < star.ring.size(); ++j) {
    auto it = spokes.find(star.ring[j]);
    if (it == spokes.end()) continue;
    star.edge_faces[j] = static_cast<int>(it->second.size());
    int slot = 0;
    for (int li : it->second) {
      const LocalFace& lf = local[li];
      int third = (lf.others[0] == star.ring[j]) ? lf.others[1] : lf.others[0];
      double cot = cot_at(positions[third], positions[center], positions[star.ring[j]]);
      if (slot == 0)
        star.cot_alpha[j] = cot;
      else if (slot == 1)
        star.cot_beta[j] = cot;
      ++slot;
    }
  }
  return star;
}

VertexStar make_vertex_star(const Mesh& mesh, const Adjacency& adj, int v) {
  double diag = mesh.bbox_diagonal();
  double eps = 1e-12 * diag * diag;
  return build_star(v, mesh.vertices, adj.vertex_faces[v], mesh.faces, eps);
}

bool TopologySets::is_error(int v) const {
  return std::binary_search(topological_errors.begin(), topological_errors.end(), v);
}

bool TopologySets::is_boundary(int v) const {
  return std::binary_search(boundary.begin(), boundary.end(), v);
}

std::vector<int> detect_boundary(const Adjacency& adj) {
  std::vector<char> flag(adj.vertex_faces.size(), 0);
  for (const auto& e : adj.edges)
    if (e.faces.size() == 1) {
      flag[e.a] = 1;
      flag[e.b] = 1;
    }
  std::vector<int> out;
  for (size_t v = 0; v < flag.size(); ++v)
    if (flag[v]) out.push_back(static_cast<int>(v));
  return out;
}

namespace {

// Proper segment-segment distance; used for the crossed-edge screen.
double segment_segment_distance(const Vec3& p1, const Vec3& q1, const Vec3& p2,
                                const Vec3& q2) {
  Vec3 d1 = q1 - p1, d2 = q2 - p2, r = p1 - p2;
  double a = d1.dot(d1), e = d2.dot(d2), f = d2.dot(r);
  double s, t;
  constexpr double eps = 1e-30;
  if (a <= eps && e <= eps) return r.norm();
  if (a <= eps) {
    s = 0.0;
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    double c = d1.dot(r);
    if (e <= eps) {
      t = 0.0;
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      double b = d1.dot(d2);
      double denom = a * e - b * b;
      s = denom > eps ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  return (p1 + d1 * s - (p2 + d2 * t)).norm();
}

struct EdgeBox {
  Vec3 lo, hi;
  int edge;
};

}  // namespace

std::vector<int> detect_topological_errors(const Mesh& mesh, const Adjacency& adj) {
  const int n = mesh.vertex_count();
  std::vector<char> flag(n, 0);

  // (a) isolated vertices
  for (int v = 0; v < n; ++v)
    if (adj.vertex_faces[v].empty()) flag[v] = 1;

  // (b) dangling boundary chain endpoints: every incident edge has exactly one
  // face and only one such boundary edge touches the vertex.
  // (c) complex edges (>2 faces) and non-fan stars.
  std::vector<int> boundary_edge_count(n, 0);
  std::vector<int> edge_count(n, 0);
  for (const auto& e : adj.edges) {
    ++edge_count[e.a];
    ++edge_count[e.b];
    if (e.faces.size() == 1) {
      ++boundary_edge_count[e.a];
      ++boundary_edge_count[e.b];
    }
    if (e.faces.size() > 2) {
      flag[e.a] = 1;
      flag[e.b] = 1;
    }
  }
  for (int v = 0; v < n; ++v) {
    if (adj.vertex_faces[v].empty()) continue;
    if (boundary_edge_count[v] == edge_count[v] && boundary_edge_count[v] == 1)
      flag[v] = 1;
    if (!flag[v]) {
      VertexStar star = make_vertex_star(mesh, adj, v);
      if (!star.manifold) flag[v] = 1;
    }
  }

  // (d) geometrically crossing edge pairs with no shared vertex; broad-phase
  // bbox filter via sort-and-sweep on x.
  double tol = 1e-9 * mesh.bbox_diagonal();
  std::vector<EdgeBox> boxes;
  boxes.reserve(adj.edges.size());
  for (size_t i = 0; i < adj.edges.size(); ++i) {
    const auto& e = adj.edges[i];
    const Vec3& pa = mesh.vertices[e.a];
    const Vec3& pb = mesh.vertices[e.b];
    boxes.push_back({pa.cwiseMin(pb), pa.cwiseMax(pb), static_cast<int>(i)});
  }
  std::sort(boxes.begin(), boxes.end(),
            [](const EdgeBox& x, const EdgeBox& y) { return x.lo.x() < y.lo.x(); });
  for (size_t i = 0; i < boxes.size(); ++i) {
    for (size_t j = i + 1; j < boxes.size(); ++j) {
      if (boxes[j].lo.x() > boxes[i].hi.x() + tol) break;
      const auto& bi = boxes[i];
      const auto& bj = boxes[j];
      if (bi.lo.y() > bj.hi.y() + tol || bj.lo.y() > bi.hi.y() + tol) continue;
      if (bi.lo.z() > bj.hi.z() + tol || bj.lo.z() > bi.hi.z() + tol) continue;
      const auto& ei = adj.edges[bi.edge];
      const auto& ej = adj.edges[bj.edge];
      if (ei.a == ej.a || ei.a == ej.b || ei.b == ej.a || ei.b == ej.b) continue;
      double d = segment_segment_distance(mesh.vertices[ei.a], mesh.vertices[ei.b],
                                          mesh.vertices[ej.a], mesh.vertices[ej.b]);
      if (d <= tol) {
        flag[ei.a] = 1;
        flag[ei.b] = 1;
        flag[ej.a] = 1;
        flag[ej.b] = 1;
      }
    }
  }

  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (flag[v]) out.push_back(v);
  return out;
}

TopologySets compute_topology_sets(const Mesh& mesh, const Adjacency& adj) {
  TopologySets sets;
  sets.boundary = detect_boundary(adj);
  sets.topological_errors = detect_topological_errors(mesh, adj);
  return sets;
}

int euler_characteristic(const Mesh& mesh, const Adjacency& adj) {
  return mesh.vertex_count() - adj.edge_count() + mesh.face_count();
}

}  // namespace osveta
