#include "osveta/harness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "osveta/rng.hpp"

namespace osveta {

void ExperimentPlan::validate() const {
  if (seeds.empty()) throw std::invalid_argument("experiment needs at least one seed");
  double prev = 1.0 + 1e-12;
  for (double f : schedule) {
    if (f <= 0.0 || f > 1.0)
      throw std::invalid_argument("retained fractions must lie in (0, 1]");
    if (f >= prev)
      throw std::invalid_argument("retained fractions must strictly decrease");
    prev = f;
  }
}

std::pair<std::vector<int>, std::vector<int>> match_survivors(
    const DecimationReport& report, const std::vector<int>& selection) {
  std::vector<int> survived, deleted;
  const int n = static_cast<int>(report.old_to_new.size());
  for (int v : selection) {
    if (v < 0 || v >= n)
      throw MeshError("selection id " + std::to_string(v) + " out of range");
    (report.survived(v) ? survived : deleted).push_back(v);
  }
  return {std::move(survived), std::move(deleted)};
}

int consecutive_deleted(const std::vector<int>& ordered_selection,
                        const DecimationReport& report, int prefix) {
  int count = 0;
  int limit = std::min<int>(prefix, static_cast<int>(ordered_selection.size()));
  for (int k = 0; k + 1 < limit; ++k)
    if (!report.survived(ordered_selection[k]) &&
        !report.survived(ordered_selection[k + 1]))
      ++count;
  return count;
}

namespace {

// Unsorted deterministic k-subset of `pool` (partial Fisher-Yates order).
std::vector<int> draw_selection(const std::vector<int>& pool, int k, SplitMix64& rng) {
  std::vector<int> copy = pool;
  k = std::min<int>(k, static_cast<int>(copy.size()));
  for (int i = 0; i < k; ++i) {
    int j = i + static_cast<int>(rng.bounded(static_cast<uint64_t>(copy.size() - i)));
    std::swap(copy[i], copy[j]);
  }
  copy.resize(k);
  return copy;
}

}  // namespace

SurvivalReport run_stability_experiment(const Mesh& mesh, const ExperimentPlan& plan) {
  plan.validate();

  ExtractParams ep;
  ep.top_L = plan.top_L;
  ep.config = plan.config;
  ep.area_mode = plan.area_mode;
  ep.threads = plan.threads;
  ExtractionResult ext = extract(mesh, ep);

  SurvivalReport out;
  out.L = static_cast<int>(ext.p.size());
  out.total_vertices = mesh.vertex_count();
  out.survivor_pool = static_cast<int>(ext.i.size());
  out.selection = ext.p;
  out.stability_prefix.assign(ext.s.begin(), ext.s.begin() + ext.p.size());

  std::vector<int> all_vertices(mesh.vertex_count());
  for (int v = 0; v < mesh.vertex_count(); ++v) all_vertices[v] = v;
  const std::vector<int>& pool = plan.restrict_random_to_pool ? ext.i : all_vertices;

  for (size_t li = 0; li < plan.schedule.size(); ++li) {
    double target = plan.schedule[li];
    LevelResult level;
    level.target_fraction = target;

    DecimationParams params = plan.decim;
    params.target_fraction = target;
    auto [decimated, report] = decimate(mesh, params);
    (void)decimated;

    level.retained_vertices = static_cast<int>(report.surviving.size());
    level.achieved_fraction =
        static_cast<double>(level.retained_vertices) / mesh.vertex_count();
    // Reaching the ceiling of target*N counts as reaching the level.
    int target_count =
        static_cast<int>(std::ceil(target * static_cast<double>(mesh.vertex_count())));
    level.reached_target = level.retained_vertices <= target_count;

    auto [survived, deleted] = match_survivors(report, ext.p);
    level.osveta_deleted = static_cast<int>(deleted.size());
    level.survived_selection = survived;
    level.osveta_consecutive_top100 = consecutive_deleted(ext.i, report, 100);
    level.osveta_consecutive_topL = consecutive_deleted(ext.i, report, out.L);

    double sum = 0.0, sum2 = 0.0, consec = 0.0;
    for (uint64_t seed : plan.seeds) {
      // Key the stream by (seed, level) so levels are independent draws.
      SplitMix64 rng(seed * 0x9e3779b97f4a7c15ull + li + 1);
      std::vector<int> random_sel = draw_selection(pool, out.L, rng);
      int dead = 0;
      for (int v : random_sel)
        if (!report.survived(v)) ++dead;
      level.random_deleted.push_back(dead);
      sum += dead;
      sum2 += static_cast<double>(dead) * dead;
      consec += consecutive_deleted(random_sel, report, out.L);
    }
    const double m = static_cast<double>(plan.seeds.size());
    level.random_deleted_mean = sum / m;
    level.random_deleted_stddev =
        m > 1 ? std::sqrt(std::max(0.0, (sum2 - sum * sum / m) / (m - 1))) : 0.0;
    level.random_consecutive_mean = consec / m;

    out.levels.push_back(std::move(level));
  }
  return out;
}

std::vector<int> default_efficiency_sizes() {
  return {1, 2, 3, 4, 5, 10, 50, 100, 500, 1000};
}

namespace {

struct NamedCriterion {
  const char* name;
  // Magnitude when the vertex qualifies, NaN otherwise. `aux` carries the
  // mean for the gradient mean-split rows.
  double (*fn)(const FeatureTable&, int, double aux);
  const std::vector<double>* (*aux_column)(const FeatureTable&);
};

constexpr double kQNaN = std::numeric_limits<double>::quiet_NaN();

double pos(double x) { return std::isfinite(x) && x > 0.0 ? x : kQNaN; }
double neg(double x) { return std::isfinite(x) && x < 0.0 ? -x : kQNaN; }
double nonneg(double x) { return std::isfinite(x) && x >= 0.0 ? x : kQNaN; }

const std::vector<double>* no_aux(const FeatureTable&) { return nullptr; }
const std::vector<double>* aux_grad_kH(const FeatureTable& t) { return &t.grad_kH; }
const std::vector<double>* aux_grad_kG(const FeatureTable& t) { return &t.grad_kG; }

const NamedCriterion kCriteria[] = {
    {"kG>0", [](const FeatureTable& t, int v, double) { return pos(t.kG[v]); }, no_aux},
    {"kG<0", [](const FeatureTable& t, int v, double) { return neg(t.kG[v]); }, no_aux},
    {"kH>0", [](const FeatureTable& t, int v, double) { return pos(t.kH[v]); }, no_aux},
    {"kH<0", [](const FeatureTable& t, int v, double) { return neg(t.kH[v]); }, no_aux},
    {"kmax>0", [](const FeatureTable& t, int v, double) { return pos(t.k1[v]); }, no_aux},
    {"kmin<0", [](const FeatureTable& t, int v, double) { return neg(t.k2[v]); }, no_aux},
    {"theta>360",
     [](const FeatureTable& t, int v, double) {
       double x = t.theta_deg[v];
       return std::isfinite(x) && x > 360.0 ? x - 360.0 : kQNaN;
     },
     no_aux},
    {"theta<360",
     [](const FeatureTable& t, int v, double) {
       double x = t.theta_deg[v];
       return std::isfinite(x) && x < 360.0 ? 360.0 - x : kQNaN;
     },
     no_aux},
    {"kGI>0", [](const FeatureTable& t, int v, double) { return pos(t.kGI[v]); }, no_aux},
    {"kGI<0", [](const FeatureTable& t, int v, double) { return neg(t.kGI[v]); }, no_aux},
    {"kHI>0", [](const FeatureTable& t, int v, double) { return pos(t.kHI[v]); }, no_aux},
    {"kHI<0", [](const FeatureTable& t, int v, double) { return neg(t.kHI[v]); }, no_aux},
    {"Cel>0", [](const FeatureTable& t, int v, double) { return pos(t.c_el[v]); }, no_aux},
    {"Cel<=0",
     [](const FeatureTable& t, int v, double) {
       double x = t.c_el[v];
       return std::isfinite(x) && x <= 0.0 ? -x : kQNaN;
     },
     no_aux},
    {"Cvis>0", [](const FeatureTable& t, int v, double) { return pos(t.c_vis[v]); }, no_aux},
    {"Ctup>0", [](const FeatureTable& t, int v, double) { return pos(t.c_tup[v]); }, no_aux},
    {"Cdug>0", [](const FeatureTable& t, int v, double) { return pos(t.c_dug[v]); }, no_aux},
    {"grad_kH>mean",
     [](const FeatureTable& t, int v, double mean) {
       double x = t.grad_kH[v];
       return std::isfinite(x) && x > mean ? x - mean : kQNaN;
     },
     aux_grad_kH},
    {"grad_kH<mean",
     [](const FeatureTable& t, int v, double mean) {
       double x = t.grad_kH[v];
       return std::isfinite(x) && x < mean ? mean - x : kQNaN;
     },
     aux_grad_kH},
    {"grad_kG>mean",
     [](const FeatureTable& t, int v, double mean) {
       double x = t.grad_kG[v];
       return std::isfinite(x) && x > mean ? x - mean : kQNaN;
     },
     aux_grad_kG},
    {"grad_kG<mean",
     [](const FeatureTable& t, int v, double mean) {
       double x = t.grad_kG[v];
       return std::isfinite(x) && x < mean ? mean - x : kQNaN;
     },
     aux_grad_kG},
    {"psi_max>=0",
     [](const FeatureTable& t, int v, double) { return nonneg(t.psi_max_deg[v]); },
     no_aux},
    {"psi_min>=0",
     [](const FeatureTable& t, int v, double) { return nonneg(t.psi_min_deg[v]); },
     no_aux},
};

double column_mean(const std::vector<double>& col) {
  double sum = 0.0;
  int count = 0;
  for (double v : col)
    if (std::isfinite(v)) {
      sum += v;
      ++count;
    }
  return count > 0 ? sum / count : kQNaN;
}

std::vector<int> top_by_magnitude(const FeatureTable& table,
                                  const NamedCriterion& crit, int n) {
  double aux = kQNaN;
  if (const std::vector<double>* col = crit.aux_column(table)) aux = column_mean(*col);

  std::vector<std::pair<double, int>> scored;
  for (int v = 0; v < table.size; ++v) {
    if (!table.defined(v)) continue;
    double m = crit.fn(table, v, aux);
    if (std::isfinite(m)) scored.emplace_back(m, v);
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::vector<int> out;
  out.reserve(std::min<size_t>(n, scored.size()));
  for (const auto& [m, v] : scored) {
    if (static_cast<int>(out.size()) >= n) break;
    out.push_back(v);
  }
  return out;
}

const NamedCriterion* find_criterion(const std::string& name) {
  for (const auto& c : kCriteria)
    if (name == c.name) return &c;
  return nullptr;
}

}  // namespace

std::vector<std::string> efficiency_criteria_names() {
  std::vector<std::string> out;
  for (const auto& c : kCriteria) out.emplace_back(c.name);
  return out;
}

std::vector<int> select_by_criterion(const FeatureTable& table,
                                     const std::string& criterion, int n) {
  const NamedCriterion* crit = find_criterion(criterion);
  if (!crit) throw std::invalid_argument("unknown criterion: " + criterion);
  return top_by_magnitude(table, *crit, n);
}

EfficiencyTable criteria_efficiency(const FeatureTable& table,
                                    const DecimationReport& report,
                                    const std::vector<int>& sizes) {
  EfficiencyTable out;
  out.sizes = sizes;
  int max_size = 0;
  for (int s : sizes) max_size = std::max(max_size, s);

  for (const auto& crit : kCriteria) {
    EfficiencyRow row;
    row.criterion = crit.name;
    std::vector<int> ranked = top_by_magnitude(table, crit, max_size);
    row.applicable = !ranked.empty();
    for (int s : sizes) {
      if (!row.applicable) {
        row.survivors.push_back(0);
        continue;
      }
      int take = std::min<int>(s, static_cast<int>(ranked.size()));
      int alive = 0;
      for (int k = 0; k < take; ++k)
        if (report.survived(ranked[k])) ++alive;
      row.survivors.push_back(alive);
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

OverlapHistogram selection_overlap(const std::vector<std::vector<int>>& selections) {
  if (selections.size() < 2)
    throw std::invalid_argument("selection overlap needs at least two selections");
  std::map<int, int> counts;
  for (const auto& sel : selections)
    for (int v : sel) ++counts[v];

  OverlapHistogram out;
  int max_count = 0;
  for (const auto& [v, c] : counts) {
    out.vertex_counts.emplace_back(v, c);
    max_count = std::max(max_count, c);
  }
  out.frequency.assign(max_count + 1, 0);
  for (const auto& [v, c] : counts) ++out.frequency[c];
  return out;
}

AreaComparison area_comparison(const Mesh& mesh, const ExperimentPlan& plan) {
  plan.validate();
  AreaComparison out;
  out.sizes = default_efficiency_sizes();

  DecimationParams params = plan.decim;
  params.target_fraction = plan.schedule.back();  // deepest level
  auto [decimated, report] = decimate(mesh, params);
  (void)decimated;
  out.achieved_fraction =
      static_cast<double>(report.surviving.size()) / mesh.vertex_count();

  Adjacency adj = build_adjacency(mesh);
  TopologySets topo = compute_topology_sets(mesh, adj);

  auto run_mode = [&](AreaMode mode, std::vector<int>& pos_row,
                      std::vector<int>& neg_row) {
    FeatureParams fp;
    fp.area_mode = mode;
    fp.threads = plan.threads;
    FeatureTable table = compute_feature_table(mesh, adj, topo, fp);
    EfficiencyTable eff = criteria_efficiency(table, report, out.sizes);
    for (const auto& row : eff.rows) {
      if (row.criterion == "kG>0") pos_row = row.survivors;
      if (row.criterion == "kG<0") neg_row = row.survivors;
    }
  };
  run_mode(AreaMode::Barycentric, out.barycentric_kG_pos, out.barycentric_kG_neg);
  run_mode(AreaMode::VoronoiMixed, out.voronoi_kG_pos, out.voronoi_kG_neg);
  return out;
}

}  // namespace osveta
