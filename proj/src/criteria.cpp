#include "osveta/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace osveta {

Preset preset_from_string(const std::string& name) {
  if (name == "safe") return Preset::Safe;
  if (name == "extended") return Preset::Extended;
  if (name == "aggressive") return Preset::Aggressive;
  throw std::invalid_argument("unknown preset: " + name);
}

std::string to_string(Preset p) {
  switch (p) {
    case Preset::Safe: return "safe";
    case Preset::Extended: return "extended";
    case Preset::Aggressive: return "aggressive";
  }
  return "?";
}

CriteriaConfig CriteriaConfig::with_preset(Preset p) {
  CriteriaConfig cfg;
  cfg.preset = p;
  PercentileCut cut;
  switch (p) {
    case Preset::Safe: cut = {0.5, 99.5}; break;
    case Preset::Extended: cut = {2.0, 98.0}; break;
    case Preset::Aggressive: cut = {5.0, 95.0}; break;
  }
  cfg.row_cuts.fill(cut);
  return cfg;
}

std::string reason_to_string(int reason_code) {
  switch (reason_code) {
    case 0: return "topological_error";
    case 1: return "boundary";
    case 2: return "flat_smooth";
    default: break;
  }
  if (reason_code >= 3 && reason_code <= 21)
    return "elimination_row_" + std::to_string(reason_code - 2);
  return "unknown";
}

double quantile_sorted(const std::vector<double>& sorted, double pct) {
  if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
  if (sorted.size() == 1) return sorted[0];
  double pos = pct / 100.0 * static_cast<double>(sorted.size() - 1);
  pos = std::clamp(pos, 0.0, static_cast<double>(sorted.size() - 1));
  size_t lo = static_cast<size_t>(std::floor(pos));
  size_t hi = std::min(lo + 1, sorted.size() - 1);
  double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::vector<double> fractional_ranks(const std::vector<double>& values) {
  const size_t n = values.size();
  std::vector<double> ranks(n, std::numeric_limits<double>::quiet_NaN());
  std::vector<size_t> order;
  order.reserve(n);
  for (size_t i = 0; i < n; ++i)
    if (std::isfinite(values[i])) order.push_back(i);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (values[a] != values[b]) return values[a] < values[b];
    return a < b;
  });
  if (order.empty()) return ranks;

  double scale = 0.0;
  for (size_t i : order) scale = std::max(scale, std::abs(values[i]));
  const double tol = 1e-9 * scale;

  size_t group_begin = 0;
  while (group_begin < order.size()) {
    size_t group_end = group_begin + 1;
    while (group_end < order.size() &&
           values[order[group_end]] - values[order[group_end - 1]] <= tol)
      ++group_end;
    // 1-based average rank of the group.
    double avg = 0.5 * (static_cast<double>(group_begin + 1) +
                        static_cast<double>(group_end));
    for (size_t k = group_begin; k < group_end; ++k) ranks[order[k]] = avg;
    group_begin = group_end;
  }
  return ranks;
}

namespace {

std::vector<double> finite_sorted(const std::vector<double>& column,
                                  const FeatureTable& table) {
  std::vector<double> vals;
  vals.reserve(column.size());
  for (int v = 0; v < table.size; ++v)
    if (table.defined(v) && std::isfinite(column[v])) vals.push_back(column[v]);
  std::sort(vals.begin(), vals.end());
  return vals;
}

enum class CutKind { TwoSided, LowerAbsOnly, UpperOnly };

struct RowSpec {
  int row;  // 1-based Table III row for the upper/only branch
  int row_lower;  // row charged when the lower branch fires (two-sided)
  const std::vector<double>* column;
  CutKind kind;
};

}  // namespace

std::vector<EliminatedVertex> eliminate_vertices(const FeatureTable& table,
                                                 const TopologySets& topo,
                                                 const CriteriaConfig& config) {
  const int n = table.size;
  std::vector<int> reason(n, -1);

  for (int v : topo.topological_errors) reason[v] = 0;
  if (config.boundary_elimination)
    for (int v : topo.boundary)
      if (reason[v] < 0) reason[v] = 1;

  // Flat/smooth: both curvatures inside the zero band.
  const double band_g = zero_band_for(table.kG, config.zero_band_rel);
  const double band_h = zero_band_for(table.kH, config.zero_band_rel);
  for (int v = 0; v < n; ++v) {
    if (reason[v] >= 0 || !table.defined(v)) continue;
    if (std::isfinite(table.kG[v]) && std::isfinite(table.kH[v]) &&
        std::abs(table.kG[v]) <= band_g && std::abs(table.kH[v]) <= band_h)
      reason[v] = 2;
  }

  // Table rows. Rows sharing a feature split into upper/lower branches so the
  // reason code mirrors the table layout. Row 1 keeps only the near-zero cut
  // (the table has no large-|kG| branch) and the elongation rows keep only
  // the upper cut (the measure is >= 1 by construction).
  std::vector<double> abs_kG(n, std::numeric_limits<double>::quiet_NaN());
  for (int v = 0; v < n; ++v)
    if (std::isfinite(table.kG[v])) abs_kG[v] = std::abs(table.kG[v]);

  const RowSpec specs[] = {
      {1, 1, &abs_kG, CutKind::LowerAbsOnly},
      {2, 3, &table.kH, CutKind::TwoSided},
      {4, 5, &table.k1, CutKind::TwoSided},
      {6, 7, &table.k2, CutKind::TwoSided},
      {8, 8, &table.theta_deg, CutKind::TwoSided},
      {9, 9, &table.kGI, CutKind::TwoSided},
      {10, 11, &table.kHI, CutKind::TwoSided},
      {12, 13, &table.c_el, CutKind::UpperOnly},
      {14, 14, &table.c_dug, CutKind::TwoSided},
      {15, 15, &table.c_tup, CutKind::TwoSided},
      {16, 16, &table.c_vis, CutKind::TwoSided},
      {17, 17, &table.grad_kG, CutKind::TwoSided},
      {18, 18, &table.grad_kH, CutKind::TwoSided},
      {19, 19, &table.psi_max_deg, CutKind::TwoSided},
  };

  for (const RowSpec& spec : specs) {
    std::vector<double> sorted = finite_sorted(*spec.column, table);
    if (sorted.size() < 2) continue;
    const PercentileCut& cut = config.row_cuts[spec.row - 1];
    double lo = quantile_sorted(sorted, cut.lower);
    double hi = quantile_sorted(sorted, cut.upper);
    for (int v = 0; v < n; ++v) {
      if (reason[v] >= 0 || !table.defined(v)) continue;
      double x = (*spec.column)[v];
      if (!std::isfinite(x)) continue;
      switch (spec.kind) {
        case CutKind::TwoSided:
          if (x > hi)
            reason[v] = 2 + spec.row;
          else if (x < lo)
            reason[v] = 2 + spec.row_lower;
          break;
        case CutKind::LowerAbsOnly:
          if (x < lo) reason[v] = 2 + spec.row;
          break;
        case CutKind::UpperOnly:
          if (x > hi) reason[v] = 2 + spec.row;
          break;
      }
    }
  }

  // Equality special cases: theta == 360 (row 8) and kHI == 0 (row 10).
  const double band_hi = zero_band_for(table.kHI, config.zero_band_rel);
  for (int v = 0; v < n; ++v) {
    if (reason[v] >= 0 || !table.defined(v)) continue;
    if (std::isfinite(table.theta_deg[v]) &&
        std::abs(table.theta_deg[v] - 360.0) <= config.theta_equality_tol_deg) {
      reason[v] = 2 + 8;
      continue;
    }
    if (std::isfinite(table.kHI[v]) && std::abs(table.kHI[v]) <= band_hi)
      reason[v] = 2 + 10;
  }

  std::vector<EliminatedVertex> out;
  for (int v = 0; v < n; ++v)
    if (reason[v] >= 0) out.push_back({v, reason[v]});
  return out;
}

namespace {

struct Criterion {
  // Returns the qualifying magnitude, or NaN when the condition fails.
  double (*magnitude)(const FeatureTable&, int);
};

constexpr double kQNaN = std::numeric_limits<double>::quiet_NaN();

double crit_psi_min(const FeatureTable& t, int v) {
  double x = t.psi_min_deg[v];
  return std::isfinite(x) && x >= 0.0 ? x : kQNaN;
}
double crit_theta_small(const FeatureTable& t, int v) {
  double x = t.theta_deg[v];
  return std::isfinite(x) && x < 360.0 ? 360.0 - x : kQNaN;
}
double crit_kGI_pos(const FeatureTable& t, int v) {
  double x = t.kGI[v];
  return std::isfinite(x) && x > 0.0 ? x : kQNaN;
}
double crit_psi_max(const FeatureTable& t, int v) {
  double x = t.psi_max_deg[v];
  return std::isfinite(x) && x >= 0.0 ? x : kQNaN;
}
double crit_theta_big(const FeatureTable& t, int v) {
  double x = t.theta_deg[v];
  return std::isfinite(x) && x > 360.0 ? x - 360.0 : kQNaN;
}
double crit_kG_neg(const FeatureTable& t, int v) {
  double x = t.kG[v];
  return std::isfinite(x) && x < 0.0 ? -x : kQNaN;
}
double crit_kGI_neg(const FeatureTable& t, int v) {
  double x = t.kGI[v];
  return std::isfinite(x) && x < 0.0 ? -x : kQNaN;
}
double crit_kG_pos(const FeatureTable& t, int v) {
  double x = t.kG[v];
  return std::isfinite(x) && x > 0.0 ? x : kQNaN;
}

}  // namespace

std::vector<double> score_vertices(const FeatureTable& table,
                                   const std::vector<char>& survivor_mask,
                                   const CriteriaConfig& config) {
  const int n = table.size;
  std::vector<double> score(n, std::numeric_limits<double>::quiet_NaN());
  for (int v = 0; v < n; ++v)
    if (survivor_mask[v]) score[v] = 0.0;

  const Criterion criteria[8] = {
      {crit_psi_min}, {crit_theta_small}, {crit_kGI_pos}, {crit_psi_max},
      {crit_theta_big}, {crit_kG_neg},    {crit_kGI_neg}, {crit_kG_pos},
  };

  for (int k = 0; k < 8; ++k) {
    std::vector<double> magnitude(n, std::numeric_limits<double>::quiet_NaN());
    int qualifying = 0;
    for (int v = 0; v < n; ++v) {
      if (!survivor_mask[v]) continue;
      double m = criteria[k].magnitude(table, v);
      if (std::isfinite(m)) {
        magnitude[v] = m;
        ++qualifying;
      }
    }
    if (qualifying == 0) continue;
    std::vector<double> ranks = fractional_ranks(magnitude);
    const double rate = config.rates[k];
    for (int v = 0; v < n; ++v)
      if (std::isfinite(ranks[v]))
        score[v] += rate * ranks[v] / static_cast<double>(qualifying);
  }
  return score;
}

}  // namespace osveta
