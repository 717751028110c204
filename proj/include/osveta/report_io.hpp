#pragma once

#include <string>

#include "osveta/extract.hpp"
#include "osveta/harness.hpp"

namespace osveta {

// Full feature CSV: one row per vertex with every table column plus class,
// shape and the risky flag. Absent values print as empty cells.
std::string feature_table_csv(const Mesh& mesh, const Adjacency& adj,
                              const TopologySets& topo, const FeatureTable& table);

// Per-vertex curvature CSV for the `curvature` subcommand. method "dgeom"
// emits kG/kH, "quadric" substitutes kGI/kHI (principals from the fit).
std::string curvature_csv(const Mesh& mesh, const std::string& method,
                          AreaMode area_mode, QuadricKind kind, int threads);

std::string extraction_json(const ExtractionResult& result, const ExtractParams& params);

std::string decimation_json(const DecimationReport& report);

std::string survival_json(const SurvivalReport& report, const ExperimentPlan& plan);
std::string survival_csv(const SurvivalReport& report);

std::string efficiency_json(const EfficiencyTable& table);
std::string efficiency_csv(const EfficiencyTable& table);

std::string overlap_json(const OverlapHistogram& hist);

std::string area_comparison_json(const AreaComparison& cmp);
std::string area_comparison_csv(const AreaComparison& cmp);

// (rank, kG, deleted) rows for external plotting of the stability curve.
std::string stability_curve_csv(const ExtractionResult& ext,
                                const DecimationReport& report, int first_n);

}  // namespace osveta
