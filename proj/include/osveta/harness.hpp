#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "osveta/decimate.hpp"
#include "osveta/extract.hpp"

namespace osveta {

struct ExperimentPlan {
  int top_L = 1000;
  std::vector<double> schedule = {0.70, 0.40, 0.23, 0.13, 0.08};
  std::vector<uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  CriteriaConfig config = CriteriaConfig::with_preset(Preset::Safe);
  AreaMode area_mode = AreaMode::Barycentric;
  DecimationParams decim{0.05, 0.02, 30.0, 1.0, 100};
  // Random baselines draw from the pool OSVETA ranks; flip for the
  // unrestricted sensitivity mode.
  bool restrict_random_to_pool = true;
  int threads = 1;

  void validate() const;
};

struct LevelResult {
  double target_fraction = 1.0;
  double achieved_fraction = 1.0;
  bool reached_target = true;
  int retained_vertices = 0;
  int osveta_deleted = 0;
  int osveta_consecutive_top100 = 0;
  int osveta_consecutive_topL = 0;
  std::vector<int> random_deleted;  // per seed
  double random_deleted_mean = 0.0;
  double random_deleted_stddev = 0.0;
  double random_consecutive_mean = 0.0;
  std::vector<int> survived_selection;  // OSVETA picks that survived, i-order
};

struct SurvivalReport {
  int L = 0;
  int total_vertices = 0;
  int survivor_pool = 0;
  std::vector<double> stability_prefix;  // s values of the top-L picks
  std::vector<int> selection;            // the top-L picks (p)
  std::vector<LevelResult> levels;
};

// Partition `selection` by survival in the decimation report, preserving
// order. Throws MeshError on an out-of-range id.
std::pair<std::vector<int>, std::vector<int>> match_survivors(
    const DecimationReport& report, const std::vector<int>& selection);

// Adjacent pairs (in vector order) that both died, within the first `prefix`.
int consecutive_deleted(const std::vector<int>& ordered_selection,
                        const DecimationReport& report, int prefix);

SurvivalReport run_stability_experiment(const Mesh& mesh, const ExperimentPlan& plan);

struct EfficiencyRow {
  std::string criterion;
  bool applicable = true;
  std::vector<int> survivors;  // aligned with EfficiencyTable::sizes
};

struct EfficiencyTable {
  std::vector<int> sizes;
  std::vector<EfficiencyRow> rows;
  double achieved_fraction = 1.0;
};

// Default Table-V-style selection sizes.
std::vector<int> default_efficiency_sizes();

// Per single-criterion top-n survival counts for the 23 auxiliary criteria.
EfficiencyTable criteria_efficiency(const FeatureTable& table,
                                    const DecimationReport& report,
                                    const std::vector<int>& sizes);

// Top-n vertex ids by one named criterion (magnitude descending, index
// ascending on ties). Empty when the criterion does not apply to the mesh.
std::vector<int> select_by_criterion(const FeatureTable& table,
                                     const std::string& criterion, int n);
std::vector<std::string> efficiency_criteria_names();

struct OverlapHistogram {
  std::vector<std::pair<int, int>> vertex_counts;  // (vertex, #criteria), sorted
  std::vector<int> frequency;  // frequency[k] = vertices picked by exactly k criteria
};

OverlapHistogram selection_overlap(const std::vector<std::vector<int>>& selections);

struct AreaComparison {
  std::vector<int> sizes;
  std::vector<int> barycentric_kG_pos, barycentric_kG_neg;
  std::vector<int> voronoi_kG_pos, voronoi_kG_neg;
  double achieved_fraction = 1.0;
};

// Appendix-style paired table: kG sign criteria under both area modes, at the
// plan's deepest retention level.
AreaComparison area_comparison(const Mesh& mesh, const ExperimentPlan& plan);

}  // namespace osveta
