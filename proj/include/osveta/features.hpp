#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "osveta/classify.hpp"
#include "osveta/curvature.hpp"
#include "osveta/mesh.hpp"
#include "osveta/quadric.hpp"

namespace osveta {

enum VertexFlag : uint32_t {
  kFlagErrorVertex = 1u << 0,      // member of E_M; numeric columns absent
  kFlagBoundary = 1u << 1,
  kFlagBoundaryPartial = 1u << 2,  // curvature from an open ring
  kFlagUmbilicClamped = 1u << 3,
  kFlagNoDihedral = 1u << 4,
  kFlagQuadricFailed = 1u << 5,
  kFlagTwoRingFit = 1u << 6,
  kFlagRisky = 1u << 7,
  kFlagDegenerateFaces = 1u << 8,
};

std::string flags_to_string(uint32_t flags);

// One column per paper feature; NaN marks an undefined entry (never zero).
struct FeatureTable {
  int size = 0;
  std::vector<double> kG, kH, k1, k2;
  std::vector<double> theta_deg, psi_min_deg, psi_max_deg;
  std::vector<double> kGI, kHI;
  std::vector<double> c_el, c_dug, c_tup, c_vis;
  std::vector<double> grad_kG, grad_kH;
  std::vector<double> area;
  std::vector<VertexClass> vclass;
  std::vector<SurfaceShape> shape;
  std::vector<uint32_t> flags;

  bool defined(int v) const { return (flags[v] & kFlagErrorVertex) == 0; }
};

struct FeatureParams {
  AreaMode area_mode = AreaMode::Barycentric;
  QuadricKind quadric_kind = QuadricKind::Extended;
  NormalMode normal_mode = NormalMode::AngleWeightedAverage;
  double feature_angle_deg = 30.0;
  double zero_band_rel = 1e-6;  // fraction of max |kG| for the shape zero band
  int threads = 1;
};

// Populates every column of the table; E_M vertices get flagged rows with
// absent numerics. Shape labels use a zero band relative to the mesh's
// curvature scale.
FeatureTable compute_feature_table(const Mesh& mesh, const Adjacency& adj,
                                   const TopologySets& topo,
                                   const FeatureParams& params);

// Max angle (degrees) over all corners of the star's faces.
double max_adjacent_angle_deg(const VertexStar& star);
// Longest edge incident to the center.
double longest_incident_edge(const VertexStar& star);
// Max over incident faces of longest-edge / shortest-altitude.
double max_face_elongation(const VertexStar& star);

double zero_band_for(const std::vector<double>& column, double rel);

}  // namespace osveta
