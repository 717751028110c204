#include "osveta/fixtures.hpp"

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "osveta/rng.hpp"

namespace osveta {
namespace fixtures {

Mesh tetrahedron(double edge) {
  // Regular tetrahedron inscribed in a cube; edge of that form is sqrt(8).
  double s = edge / std::sqrt(8.0);
  Mesh m;
  m.vertices = {
      Vec3(1, 1, 1) * s,
      Vec3(1, -1, -1) * s,
      Vec3(-1, 1, -1) * s,
      Vec3(-1, -1, 1) * s,
  };
  // Outward (counter-clockwise seen from outside).
  m.faces = {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
  return m;
}

Mesh grid(int nx, int ny, double spacing) {
  Mesh m;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      m.vertices.emplace_back(i * spacing, j * spacing, 0.0);
  auto id = [&](int i, int j) { return j * nx + i; };
  for (int j = 0; j + 1 < ny; ++j)
    for (int i = 0; i + 1 < nx; ++i) {
      m.faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      m.faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return m;
}

Mesh icosphere(int subdivisions, double radius) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> verts = {
      {-1, phi, 0}, {1, phi, 0},   {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi},   {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1},   {-phi, 0, -1}, {-phi, 0, 1},
  };
  std::vector<std::array<int, 3>> faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
  };

  for (int level = 0; level < subdivisions; ++level) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      int idx = static_cast<int>(verts.size());
      verts.push_back(0.5 * (verts[a] + verts[b]));
      midpoint.emplace(key, idx);
      return idx;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }

  Mesh m;
  m.vertices.reserve(verts.size());
  for (auto& v : verts) m.vertices.push_back(v.normalized() * radius);
  m.faces = std::move(faces);
  return m;
}

Mesh torus(int nu, int nv, double major_radius, double minor_radius) {
  Mesh m;
  for (int i = 0; i < nu; ++i) {
    double u = 2.0 * kPi * i / nu;
    for (int j = 0; j < nv; ++j) {
      double v = 2.0 * kPi * j / nv;
      double w = major_radius + minor_radius * std::cos(v);
      m.vertices.emplace_back(w * std::cos(u), w * std::sin(u),
                              minor_radius * std::sin(v));
    }
  }
  auto id = [&](int i, int j) { return (i % nu) * nv + (j % nv); };
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j) {
      m.faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      m.faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return m;
}

Mesh spiked_icosphere(int subdivisions, int spike_count, double amplitude,
                      uint64_t seed) {
  Mesh m = icosphere(subdivisions, 1.0);
  Adjacency adj = build_adjacency(m);
  SplitMix64 rng(seed);

  // Greedy isolated picks: no two spikes adjacent, so every spike keeps a
  // clean high-curvature crater ring around it.
  std::vector<int> shuffled(m.vertex_count());
  for (int i = 0; i < m.vertex_count(); ++i) shuffled[i] = i;
  for (int i = m.vertex_count() - 1; i > 0; --i) {
    int j = static_cast<int>(rng.bounded(static_cast<uint64_t>(i + 1)));
    std::swap(shuffled[i], shuffled[j]);
  }
  std::vector<char> blocked(m.vertex_count(), 0);
  int placed = 0;
  for (int v : shuffled) {
    if (placed >= spike_count) break;
    if (blocked[v]) continue;
    m.vertices[v] *= (1.0 + amplitude);
    blocked[v] = 1;
    for (int u : adj.vertex_neighbors[v]) blocked[u] = 1;
    ++placed;
  }
  return m;
}

Mesh single_spike_icosphere(int subdivisions, int vertex, double amplitude) {
  Mesh m = icosphere(subdivisions, 1.0);
  m.vertices.at(vertex) *= (1.0 + amplitude);
  return m;
}

Mesh noisy_torus(int nu, int nv, double major_radius, double minor_radius,
                 double amplitude, uint64_t seed) {
  Mesh m = torus(nu, nv, major_radius, minor_radius);
  SplitMix64 rng(seed);
  for (int i = 0; i < nu; ++i) {
    double u = 2.0 * kPi * i / nu;
    for (int j = 0; j < nv; ++j) {
      double v = 2.0 * kPi * j / nv;
      Vec3 dir(std::cos(v) * std::cos(u), std::cos(v) * std::sin(u), std::sin(v));
      double bump = (2.0 * rng.next_unit() - 1.0) * amplitude;
      m.vertices[i * nv + j] += bump * dir;
    }
  }
  return m;
}

Mesh roof(int rows) {
  // Columns at x = -1, 0, 1 with z = 1 - |x|; the ridge runs along y.
  Mesh m;
  for (int j = 0; j < rows; ++j)
    for (int i = 0; i < 3; ++i) {
      double x = static_cast<double>(i - 1);
      m.vertices.emplace_back(x, static_cast<double>(j), 1.0 - std::abs(x));
    }
  auto id = [&](int i, int j) { return j * 3 + i; };
  for (int j = 0; j + 1 < rows; ++j)
    for (int i = 0; i + 1 < 3; ++i) {
      m.faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      m.faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return m;
}

Mesh cube(double edge) {
  double s = edge / 2.0;
  Mesh m;
  m.vertices = {
      {-s, -s, -s}, {s, -s, -s}, {s, s, -s}, {-s, s, -s},
      {-s, -s, s},  {s, -s, s},  {s, s, s},  {-s, s, s},
  };
  m.faces = {
      {0, 2, 1}, {0, 3, 2},  // bottom (z = -s), outward -z
      {4, 5, 6}, {4, 6, 7},  // top
      {0, 1, 5}, {0, 5, 4},  // front (y = -s)
      {2, 3, 7}, {2, 7, 6},  // back
      {1, 2, 6}, {1, 6, 5},  // right (x = +s)
      {3, 0, 4}, {3, 4, 7},  // left
  };
  return m;
}

Mesh saddle(int n) {
  Mesh m;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      double x = -1.0 + 2.0 * i / (n - 1);
      double y = -1.0 + 2.0 * j / (n - 1);
      m.vertices.emplace_back(x, y, x * x - y * y);
    }
  auto id = [&](int i, int j) { return j * n + i; };
  for (int j = 0; j + 1 < n; ++j)
    for (int i = 0; i + 1 < n; ++i) {
      m.faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      m.faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return m;
}

Mesh sphere_with_saddle(int subdivisions, int saddle_n) {
  Mesh m = icosphere(subdivisions, 1.0);
  Mesh sad = saddle(saddle_n);
  int base = m.vertex_count();
  for (const auto& v : sad.vertices) m.vertices.push_back(v + Vec3(4.0, 0.0, 0.0));
  for (const auto& f : sad.faces)
    m.faces.push_back({f[0] + base, f[1] + base, f[2] + base});
  return m;
}

Mesh grid_with_fan(int nx, int ny, int fan_valence) {
  Mesh m = grid(nx, ny);
  int base = m.vertex_count();
  Vec3 offset(-10.0, -10.0, 0.0);
  m.vertices.push_back(offset);  // fan center
  for (int k = 0; k < fan_valence; ++k) {
    double a = 2.0 * kPi * k / fan_valence;
    // Alternate heights so the fan is not flat (keeps it out of the
    // flat/smooth elimination set).
    m.vertices.push_back(offset + Vec3(std::cos(a), std::sin(a), k % 2 ? 0.3 : -0.3));
  }
  for (int k = 0; k < fan_valence; ++k)
    m.faces.push_back({base, base + 1 + k, base + 1 + (k + 1) % fan_valence});
  return m;
}

Mesh by_name(const std::string& name) {
  if (name == "single_spike") return single_spike_icosphere(3, 100, 0.2);
  if (name == "tetrahedron") return tetrahedron();
  if (name == "grid") return grid(9, 9);
  if (name == "icosphere1") return icosphere(1);
  if (name == "icosphere2") return icosphere(2);
  if (name == "icosphere3") return icosphere(3);
  if (name == "icosphere4") return icosphere(4);
  if (name == "icosphere5") return icosphere(5);
  if (name == "torus") return torus(48, 24);
  if (name == "spiked_icosphere") return spiked_icosphere(5, 150, 0.35, 42);
  if (name == "noisy_torus") return noisy_torus(100, 50, 2.0, 0.7, 0.05, 7);
  if (name == "roof") return roof(7);
  if (name == "cube") return cube();
  if (name == "saddle") return saddle(15);
  if (name == "sphere_with_saddle") return sphere_with_saddle(3, 31);
  if (name == "grid_with_fan") return grid_with_fan(9, 9, 20);
  throw std::invalid_argument("unknown fixture: " + name);
}

std::vector<std::string> names() {
  return {"tetrahedron", "grid",     "icosphere1",       "icosphere2",
          "icosphere3",  "icosphere4", "icosphere5",     "torus",
          "spiked_icosphere", "noisy_torus", "roof",     "cube",
          "saddle",      "sphere_with_saddle", "grid_with_fan"};
}

}  // namespace fixtures
}  // namespace osveta
