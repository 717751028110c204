#pragma once

#include <vector>

#include "osveta/criteria.hpp"
#include "osveta/features.hpp"

namespace osveta {

struct ExtractionResult {
  std::vector<double> s;  // stability scores, non-increasing
  std::vector<int> i;     // original vertex ids matching s
  std::vector<int> p;     // first L entries of i
  std::vector<EliminatedVertex> eliminated;
  bool truncated_L = false;  // L exceeded the survivor count

  FeatureTable table;       // the full per-vertex feature record
  TopologySets topology;
};

struct ExtractParams {
  int top_L = 1000;
  CriteriaConfig config = CriteriaConfig::with_preset(Preset::Safe);
  AreaMode area_mode = AreaMode::Barycentric;
  int threads = 1;
};

// The full pipeline: features -> elimination -> scoring -> ordering.
// Throws MeshError when every vertex is eliminated.
ExtractionResult extract(const Mesh& mesh, const ExtractParams& params);

// Ordering used by extract: score desc, |kG| rank desc, index asc.
std::vector<int> order_survivors(const FeatureTable& table,
                                 const std::vector<double>& scores,
                                 const std::vector<char>& survivor_mask);

}  // namespace osveta
