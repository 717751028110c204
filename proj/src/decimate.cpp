#include "osveta/decimate.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "osveta/classify.hpp"
#include "osveta/curvature.hpp"

namespace osveta {

double distance_to_average_plane(const VertexStar& star) {
  if (star.valence() < 3)
    throw MeshError("average plane undefined: fewer than 3 ring vertices");

  // Plane normal: area-weighted mean of the star's face normals. Anchor
  // point: ring vertices weighted by the summed area of their star faces.
  Vec3 n = Vec3::Zero();
  for (size_t k = 0; k < star.face_normals.size(); ++k)
    n += star.face_areas[k] * star.face_normals[k];
  double len = n.norm();
  if (len <= 0.0) throw MeshError("average plane undefined: normals cancel");
  n /= len;

  std::vector<double> weight(star.ring.size(), 0.0);
  for (size_t k = 0; k < star.face_tris.size(); ++k) {
    for (int id : star.face_tris[k]) {
      if (id == star.center) continue;
      for (size_t j = 0; j < star.ring.size(); ++j)
        if (star.ring[j] == id) {
          weight[j] += star.face_areas[k];
          break;
        }
    }
  }
  Vec3 anchor = Vec3::Zero();
  double total = 0.0;
  for (size_t j = 0; j < star.ring.size(); ++j) {
    anchor += weight[j] * star.ring_pos[j];
    total += weight[j];
  }
  if (total <= 0.0) throw MeshError("average plane undefined: zero-area star");
  anchor /= total;
  return std::abs(n.dot(star.center_pos - anchor));
}

double distance_to_boundary_edge(const Vec3& vertex, const Vec3& end_a,
                                 const Vec3& end_b) {
  if ((end_b - end_a).norm() <= 0.0)
    throw MeshError("boundary edge endpoints coincide");
  return point_line_distance(vertex, end_a, end_b);
}

namespace {

struct Loop2D {
  std::vector<Eigen::Vector2d> pts;  // projected, CCW
  std::vector<int> ids;              // original vertex ids, loop order
};

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

bool segments_properly_intersect(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                                 const Eigen::Vector2d& c, const Eigen::Vector2d& d) {
  auto orient = [](const Eigen::Vector2d& p, const Eigen::Vector2d& q,
                   const Eigen::Vector2d& r) {
    double v = cross2(q - p, r - p);
    if (v > 0) return 1;
    if (v < 0) return -1;
    return 0;
  };
  int o1 = orient(a, b, c), o2 = orient(a, b, d);
  int o3 = orient(c, d, a), o4 = orient(c, d, b);
  return o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}

bool point_in_polygon(const std::vector<Eigen::Vector2d>& poly,
                      const Eigen::Vector2d& p) {
  bool inside = false;
  const size_t n = poly.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const auto& pi = poly[i];
    const auto& pj = poly[j];
    if ((pi.y() > p.y()) != (pj.y() > p.y()) &&
        p.x() < (pj.x() - pi.x()) * (p.y() - pi.y()) / (pj.y() - pi.y()) + pi.x())
      inside = !inside;
  }
  return inside;
}

// Newell normal of the loop; robust for non-planar polygons.
Vec3 loop_normal(const std::vector<Vec3>& pts) {
  Vec3 n = Vec3::Zero();
  const size_t m = pts.size();
  for (size_t i = 0; i < m; ++i) {
    const Vec3& a = pts[i];
    const Vec3& b = pts[(i + 1) % m];
    n.x() += (a.y() - b.y()) * (a.z() + b.z());
    n.y() += (a.z() - b.z()) * (a.x() + b.x());
    n.z() += (a.x() - b.x()) * (a.y() + b.y());
  }
  return n;
}

double polygon_area2(const std::vector<Eigen::Vector2d>& pts) {
  double a = 0.0;
  for (size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    const auto& q = pts[(i + 1) % pts.size()];
    a += cross2(p, q);
  }
  return a;  // twice the signed area
}

// Angle of the turn from vertex i toward point q, measured against the
// outgoing loop edge; used to score how a diagonal splits the corner at i.
double corner_split_min(const std::vector<Eigen::Vector2d>& poly, size_t i, size_t j) {
  const size_t n = poly.size();
  Eigen::Vector2d next = poly[(i + 1) % n] - poly[i];
  Eigen::Vector2d prev = poly[(i + n - 1) % n] - poly[i];
  Eigen::Vector2d diag = poly[j] - poly[i];
  auto ccw_angle = [](const Eigen::Vector2d& from, const Eigen::Vector2d& to) {
    double ang = std::atan2(cross2(from, to), from.dot(to));
    if (ang < 0) ang += 2.0 * kPi;
    return ang;
  };
  double total = ccw_angle(next, prev);   // interior angle
  double part = ccw_angle(next, diag);    // slice on the [i..j] side
  return std::min(part, total - part);
}

bool diagonal_valid(const Loop2D& loop, size_t i, size_t j) {
  const size_t n = loop.pts.size();
  const auto& a = loop.pts[i];
  const auto& b = loop.pts[j];
  for (size_t k = 0; k < n; ++k) {
    size_t k2 = (k + 1) % n;
    if (k == i || k == j || k2 == i || k2 == j) continue;
    if (segments_properly_intersect(a, b, loop.pts[k], loop.pts[k2])) return false;
  }
  // Midpoint must be interior (rejects diagonals outside a reflex corner).
  if (!point_in_polygon(loop.pts, 0.5 * (a + b))) return false;
  // The diagonal must leave both corners through the interior wedge.
  if (corner_split_min(loop.pts, i, j) <= 0.0) return false;
  if (corner_split_min(loop.pts, j, i) <= 0.0) return false;
  return true;
}

void triangulate_recursive(const Loop2D& loop, std::vector<int> order,
                           std::vector<std::array<int, 3>>& out) {
  // `order` holds indices into loop arrays, in loop orientation.
  const size_t n = order.size();
  if (n < 3) throw MeshError("hole loop degenerated below a triangle");
  if (n == 3) {
    out.push_back({loop.ids[order[0]], loop.ids[order[1]], loop.ids[order[2]]});
    return;
  }

  Loop2D sub;
  sub.pts.reserve(n);
  sub.ids.reserve(n);
  for (int idx : order) {
    sub.pts.push_back(loop.pts[idx]);
    sub.ids.push_back(idx);  // temporarily store order index
  }

  double best = -1.0;
  size_t bi = 0, bj = 0;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent around the wrap
      if (!diagonal_valid(sub, i, j)) continue;
      double score = std::min(corner_split_min(sub.pts, i, j),
                              corner_split_min(sub.pts, j, i));
      if (score > best) {
        best = score;
        bi = i;
        bj = j;
      }
    }
  }
  if (best < 0.0) throw MeshError("hole loop admits no interior diagonal");

  std::vector<int> left(order.begin() + bi, order.begin() + bj + 1);
  std::vector<int> right(order.begin() + bj, order.end());
  right.insert(right.end(), order.begin(), order.begin() + bi + 1);
  triangulate_recursive(loop, std::move(left), out);
  triangulate_recursive(loop, std::move(right), out);
}

}  // namespace

std::vector<std::array<int, 3>> triangulate_hole(const std::vector<int>& loop,
                                                 const std::vector<Vec3>& positions) {
  const size_t n = loop.size();
  if (n < 3) throw MeshError("hole loop needs at least 3 vertices");
  {
    std::set<int> uniq(loop.begin(), loop.end());
    if (uniq.size() != n) throw MeshError("hole loop repeats a vertex");
  }

  std::vector<Vec3> pts3;
  pts3.reserve(n);
  for (int id : loop) pts3.push_back(positions[id]);

  Vec3 normal = loop_normal(pts3);
  double len = normal.norm();
  if (len <= 0.0) throw MeshError("hole loop is degenerate (zero projected area)");
  normal /= len;
  Vec3 u = std::abs(normal.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  u = (u - normal * normal.dot(u)).normalized();
  Vec3 v = normal.cross(u);

  Loop2D loop2d;
  loop2d.pts.reserve(n);
  for (const auto& p : pts3)
    loop2d.pts.emplace_back(u.dot(p - pts3[0]), v.dot(p - pts3[0]));
  loop2d.ids = loop;

  bool flipped = false;
  if (polygon_area2(loop2d.pts) < 0.0) {
    // Work in CCW; restore orientation on output.
    std::reverse(loop2d.pts.begin(), loop2d.pts.end());
    std::reverse(loop2d.ids.begin(), loop2d.ids.end());
    flipped = true;
  }

  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      size_t i2 = (i + 1) % n, j2 = (j + 1) % n;
      if (i2 == j || j2 == i || i == j) continue;
      if (segments_properly_intersect(loop2d.pts[i], loop2d.pts[i2], loop2d.pts[j],
                                      loop2d.pts[j2]))
        throw MeshError("hole loop self-intersects in its projection");
    }

  std::vector<int> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);

  // triangulate_recursive reads sub.ids as order indices; map afterwards.
  std::vector<std::array<int, 3>> faces;
  {
    std::vector<std::array<int, 3>> order_faces;
    Loop2D index_loop;
    index_loop.pts = loop2d.pts;
    index_loop.ids.resize(n);
    for (size_t i = 0; i < n; ++i) index_loop.ids[i] = static_cast<int>(i);
    triangulate_recursive(index_loop, order, order_faces);
    faces.reserve(order_faces.size());
    for (const auto& f : order_faces) {
      std::array<int, 3> mapped = {loop2d.ids[f[0]], loop2d.ids[f[1]],
                                   loop2d.ids[f[2]]};
      if (flipped) std::swap(mapped[1], mapped[2]);
      faces.push_back(mapped);
    }
  }
  return faces;
}

namespace {

// Live working copy with per-vertex incident-face sets.
struct WorkingMesh {
  const std::vector<Vec3>& pos;
  std::vector<std::array<int, 3>> faces;
  std::vector<char> face_alive;
  std::vector<std::vector<int>> v_faces;
  std::vector<char> vertex_alive;
  int alive_vertex_count = 0;

  explicit WorkingMesh(const Mesh& m) : pos(m.vertices), faces(m.faces) {
    face_alive.assign(faces.size(), 1);
    v_faces.resize(pos.size());
    vertex_alive.assign(pos.size(), 0);
    for (size_t f = 0; f < faces.size(); ++f)
      for (int v : faces[f]) v_faces[v].push_back(static_cast<int>(f));
    for (size_t v = 0; v < pos.size(); ++v)
      if (!v_faces[v].empty()) {
        vertex_alive[v] = 1;
        ++alive_vertex_count;
      }
  }

  std::vector<int> alive_faces_of(int v) const {
    std::vector<int> out;
    out.reserve(v_faces[v].size());
    for (int f : v_faces[v])
      if (face_alive[f]) out.push_back(f);
    return out;
  }

  int alive_face_count_on_edge(int a, int b) const {
    int count = 0;
    for (int f : v_faces[a]) {
      if (!face_alive[f]) continue;
      const auto& tri = faces[f];
      bool has_b = tri[0] == b || tri[1] == b || tri[2] == b;
      if (has_b) ++count;
    }
    return count;
  }

  bool face_exists(int a, int b, int c) const {
    std::array<int, 3> want = {a, b, c};
    std::sort(want.begin(), want.end());
    for (int f : v_faces[a]) {
      if (!face_alive[f]) continue;
      std::array<int, 3> have = faces[f];
      std::sort(have.begin(), have.end());
      if (have == want) return true;
    }
    return false;
  }

  void kill_face(int f) { face_alive[f] = 0; }

  void add_face(const std::array<int, 3>& tri) {
    int id = static_cast<int>(faces.size());
    faces.push_back(tri);
    face_alive.push_back(1);
    for (int v : tri) v_faces[v].push_back(id);
  }

  void kill_vertex(int v) {
    vertex_alive[v] = 0;
    --alive_vertex_count;
  }
};

}  // namespace

std::pair<Mesh, DecimationReport> decimate(const Mesh& mesh,
                                           const DecimationParams& params) {
  const int n = mesh.vertex_count();
  const double diag = mesh.bbox_diagonal();
  const double dist_abs = params.distance_threshold * diag;
  const double edge_abs = params.edge_distance_threshold * diag;
  const double degenerate_eps = 1e-12 * diag * diag;

  WorkingMesh wm(mesh);
  DecimationReport report;
  const int original_alive = wm.alive_vertex_count;
  const int target_count = static_cast<int>(
      std::ceil(params.target_fraction * static_cast<double>(original_alive)));

  bool stop = false;
  for (int pass = 0; pass < params.max_passes && !stop; ++pass) {
    report.passes = pass + 1;
    int deleted_this_pass = 0;

    for (int v = 0; v < n && !stop; ++v) {
      if (!wm.vertex_alive[v]) continue;
      std::vector<int> incident = wm.alive_faces_of(v);
      if (incident.empty()) continue;

      VertexStar star = build_star(v, mesh.vertices, incident, wm.faces,
                                   degenerate_eps);
      if (!star.manifold || star.incident_face_count() == 0) continue;
      VertexClass cls = classify_vertex(star, params.feature_angle_deg);

      bool remove = false;
      std::vector<int> hole;
      if (cls == VertexClass::SimpleSmooth) {
        if (star.valence() < 3) continue;
        double d;
        try {
          d = distance_to_average_plane(star);
        } catch (const MeshError&) {
          continue;
        }
        if (d < dist_abs) {
          remove = true;
          hole = star.ring;  // closed cycle
        }
      } else if (cls == VertexClass::Boundary || cls == VertexClass::InteriorEdge) {
        Vec3 ea, eb;
        if (cls == VertexClass::Boundary) {
          ea = star.ring_pos.front();
          eb = star.ring_pos.back();
        } else {
          // The two feature-edge ring neighbors define the interior edge line.
          std::vector<int> feat;
          const int nf = star.incident_face_count();
          for (size_t j = 0; j < star.ring.size(); ++j) {
            if (star.edge_faces[j] != 2) continue;
            int f_after = static_cast<int>(j) % nf;
            int f_before = (static_cast<int>(j) + nf - 1) % nf;
            double psi = signed_dihedral_deg(star.center_pos, star.ring_pos[j],
                                             star.face_normals[f_before],
                                             star.face_normals[f_after]);
            if (std::abs(psi) > params.feature_angle_deg)
              feat.push_back(static_cast<int>(j));
          }
          if (feat.size() != 2) continue;
          ea = star.ring_pos[feat[0]];
          eb = star.ring_pos[feat[1]];
        }
        double d;
        try {
          d = distance_to_boundary_edge(star.center_pos, ea, eb);
        } catch (const MeshError&) {
          continue;
        }
        if (d < edge_abs) {
          remove = true;
          hole = star.ring;  // open chain for boundary, cycle for interior edge
        }
      }
      // Complex and Corner vertices are never deleted.
      if (!remove) continue;

      std::vector<std::array<int, 3>> patch;
      if (star.open) {
        if (hole.size() >= 3) {
          try {
            patch = triangulate_hole(hole, mesh.vertices);
          } catch (const MeshError&) {
            continue;  // untriangulatable: skip, never leave a hole
          }
        }
        // A 2-vertex chain (single incident face) just drops the ear.
      } else {
        try {
          patch = triangulate_hole(hole, mesh.vertices);
        } catch (const MeshError&) {
          continue;
        }
      }

      // Structural guards: the patch must not duplicate faces or push any
      // edge above two incident faces.
      bool ok = true;
      std::unordered_map<uint64_t, int> patch_edge_count;
      for (const auto& tri : patch) {
        if (wm.face_exists(tri[0], tri[1], tri[2])) {
          ok = false;
          break;
        }
        for (int k = 0; k < 3; ++k)
          ++patch_edge_count[edge_key(tri[k], tri[(k + 1) % 3])];
      }
      if (ok) {
        // Count alive faces on each patch edge, pretending the star is gone.
        for (const auto& [key, cnt] : patch_edge_count) {
          int a = static_cast<int>(key >> 32);
          int b = static_cast<int>(key & 0xffffffffu);
          int existing = 0;
          for (int f : wm.v_faces[a]) {
            if (!wm.face_alive[f]) continue;
            bool is_star = std::find(incident.begin(), incident.end(), f) != incident.end();
            if (is_star) continue;
            const auto& tri = wm.faces[f];
            if (tri[0] == b || tri[1] == b || tri[2] == b) ++existing;
          }
          if (existing + cnt > 2) {
            ok = false;
            break;
          }
        }
      }
      if (!ok) continue;

      for (int f : incident) wm.kill_face(f);
      for (const auto& tri : patch) wm.add_face(tri);
      wm.kill_vertex(v);
      report.deleted.push_back(v);
      ++deleted_this_pass;
      if (wm.alive_vertex_count <= target_count) stop = true;
    }

    if (deleted_this_pass == 0) break;
  }

  // Compact the output mesh; survivors keep their relative order.
  Mesh out;
  report.old_to_new.assign(n, -1);
  std::vector<char> deleted_flag(n, 0);
  for (int v : report.deleted) deleted_flag[v] = 1;

  for (int v = 0; v < n; ++v) {
    // Unreferenced-but-not-deleted vertices (isolated in the input) are kept.
    if (deleted_flag[v]) continue;
    report.old_to_new[v] = static_cast<int>(out.vertices.size());
    out.vertices.push_back(mesh.vertices[v]);
    report.surviving.push_back(v);
  }
  for (size_t f = 0; f < wm.faces.size(); ++f) {
    if (!wm.face_alive[f]) continue;
    const auto& tri = wm.faces[f];
    out.faces.push_back({report.old_to_new[tri[0]], report.old_to_new[tri[1]],
                         report.old_to_new[tri[2]]});
  }
  report.final_face_count = static_cast<int>(out.faces.size());
  return {std::move(out), std::move(report)};
}

}  // namespace osveta
