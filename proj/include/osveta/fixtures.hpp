#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "osveta/mesh.hpp"

namespace osveta {
namespace fixtures {

Mesh tetrahedron(double edge = 1.0);

// nx x ny planar grid of unit cells, each split along the same diagonal.
Mesh grid(int nx = 3, int ny = 3, double spacing = 1.0);

Mesh icosphere(int subdivisions, double radius = 1.0);

// Triangulated quad grid with wraparound; chi = 0.
Mesh torus(int nu, int nv, double major_radius = 2.0, double minor_radius = 0.7);

// Icosphere with `spike_count` isolated vertices pushed radially outward.
Mesh spiked_icosphere(int subdivisions, int spike_count, double amplitude,
                      uint64_t seed);

// Icosphere with exactly one vertex displaced outward by `amplitude`.
Mesh single_spike_icosphere(int subdivisions, int vertex, double amplitude);

// Torus with deterministic per-vertex radial noise.
Mesh noisy_torus(int nu, int nv, double major_radius, double minor_radius,
                 double amplitude, uint64_t seed);

// Two planes meeting in a 90-degree convex ridge along y.
Mesh roof(int rows = 5);

Mesh cube(double edge = 1.0);

// z = x^2 - y^2 sampled on [-1,1]^2.
Mesh saddle(int n = 9);

// Disjoint union: icosphere plus an offset saddle sheet.
Mesh sphere_with_saddle(int subdivisions = 3, int saddle_n = 31);

// Grid plus a detached high-valence fan (valence outlier fixture).
Mesh grid_with_fan(int nx, int ny, int fan_valence);

Mesh by_name(const std::string& name);
std::vector<std::string> names();

}  // namespace fixtures
}  // namespace osveta
