#pragma once

#include <array>
#include <string>
#include <vector>

#include "osveta/features.hpp"

namespace osveta {

enum class Preset { Safe, Extended, Aggressive };

Preset preset_from_string(const std::string& name);
std::string to_string(Preset p);

struct PercentileCut {
  double lower = 0.5;
  double upper = 99.5;
};

// Elimination thresholds (19 irrelevant-vertex rows, realized as per-mesh
// percentile cuts) and the 8 assessment-criterion rates.
struct CriteriaConfig {
  Preset preset = Preset::Safe;
  std::array<PercentileCut, 19> row_cuts{};
  std::array<double, 8> rates = {1.0, 1.0, 1.0, 0.9, 0.8, 0.8, 0.7, 0.4};
  bool boundary_elimination = false;
  double zero_band_rel = 1e-6;
  double theta_equality_tol_deg = 1e-6;
  double feature_angle_deg = 30.0;

  static CriteriaConfig with_preset(Preset p);
};

enum class ElimReason : int {
  TopologicalError = 0,
  Boundary = 1,
  FlatSmooth = 2,
  Row = 3,  // Row + (k-1) encodes elimination row k in [1,19]
};

struct EliminatedVertex {
  int vertex = -1;
  int reason_code = -1;  // 0 topo, 1 boundary, 2 flat_smooth, 2+k row k
};

std::string reason_to_string(int reason_code);

// Union of E_M, optionally B_M, the flat/smooth zero-band set, and the
// percentile-cut rows; each vertex keeps its first matching reason.
std::vector<EliminatedVertex> eliminate_vertices(const FeatureTable& table,
                                                 const TopologySets& topo,
                                                 const CriteriaConfig& config);

// Rate-weighted rank-normalized sum over the 8 assessment criteria. Only
// survivor vertices get scores; everybody else gets NaN.
std::vector<double> score_vertices(const FeatureTable& table,
                                   const std::vector<char>& survivor_mask,
                                   const CriteriaConfig& config);

// Fractional (average-of-ties) 1-based ranks in ascending value order.
// Values closer than 1e-9 of the column peak chain into one tie group, which
// keeps ranks stable under rigid-motion rounding drift.
std::vector<double> fractional_ranks(const std::vector<double>& values);

// Linear-interpolation percentile of pre-sorted values, pct in [0,100].
double quantile_sorted(const std::vector<double>& sorted, double pct);

}  // namespace osveta
