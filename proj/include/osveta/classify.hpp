#pragma once

#include <string>
#include <vector>

#include "osveta/mesh.hpp"

namespace osveta {

enum class VertexClass { SimpleSmooth, InteriorEdge, Corner, Complex, Boundary };
enum class SurfaceShape {
  Planar,
  RidgeConvex,
  ValleyConcave,
  Convex,
  Concave,
  Saddle,
  SaddleRidge,
  SaddleValley,
};

std::string to_string(VertexClass c);
std::string to_string(SurfaceShape s);

// Complex beats Boundary beats the simple refinements; feature edges are
// incident edges whose signed dihedral magnitude exceeds feature_angle_deg.
VertexClass classify_vertex(const VertexStar& star, double feature_angle_deg);

// Eight-way sign table on (kG, kH) with values inside +-zero_band snapped
// to zero.
SurfaceShape surface_shape(double kG, double kH, double zero_band);

struct RiskyInputs {
  const std::vector<double>* kG = nullptr;     // per-vertex, NaN = undefined
  const std::vector<double>* kH = nullptr;
  double kG_zero_band = 0.0;
  double kH_zero_band = 0.0;
};

// Union of E_M, B_M, valence outliers (> mean + 3 sigma), collinear-edge
// vertices (all incident edge directions within 1 degree of one line), and
// flat/smooth vertices (kG and kH both inside the zero band).
std::vector<int> risky_primitives(const Mesh& mesh, const Adjacency& adj,
                                  const TopologySets& topo,
                                  const RiskyInputs& features);

}  // namespace osveta
