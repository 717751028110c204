#include "osveta/extract.hpp"

#include <algorithm>
#include <cmath>

namespace osveta {

std::vector<int> order_survivors(const FeatureTable& table,
                                 const std::vector<double>& scores,
                                 const std::vector<char>& survivor_mask) {
  const int n = table.size;
  // Tie-break on grouped |kG| ranks rather than raw doubles so symmetric
  // twins compare equal and fall through to the index tie-break.
  std::vector<double> abs_kG(n, std::numeric_limits<double>::quiet_NaN());
  for (int v = 0; v < n; ++v)
    if (survivor_mask[v] && std::isfinite(table.kG[v]))
      abs_kG[v] = std::abs(table.kG[v]);
  std::vector<double> kg_rank = fractional_ranks(abs_kG);

  std::vector<int> order;
  order.reserve(n);
  for (int v = 0; v < n; ++v)
    if (survivor_mask[v]) order.push_back(v);

  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    double ra = std::isfinite(kg_rank[a]) ? kg_rank[a] : -1.0;
    double rb = std::isfinite(kg_rank[b]) ? kg_rank[b] : -1.0;
    if (ra != rb) return ra > rb;
    return a < b;
  });
  return order;
}

ExtractionResult extract(const Mesh& mesh, const ExtractParams& params) {
  ExtractionResult res;

  Adjacency adj = build_adjacency(mesh);
  res.topology = compute_topology_sets(mesh, adj);

  FeatureParams fp;
  fp.area_mode = params.area_mode;
  fp.feature_angle_deg = params.config.feature_angle_deg;
  fp.zero_band_rel = params.config.zero_band_rel;
  fp.threads = params.threads;
  res.table = compute_feature_table(mesh, adj, res.topology, fp);

  res.eliminated = eliminate_vertices(res.table, res.topology, params.config);

  std::vector<char> survivor(mesh.vertex_count(), 1);
  for (const auto& e : res.eliminated) survivor[e.vertex] = 0;
  int survivor_count = 0;
  for (char s : survivor) survivor_count += s;
  if (survivor_count == 0) throw MeshError("nothing to extract: all vertices eliminated");

  std::vector<double> scores = score_vertices(res.table, survivor, params.config);
  res.i = order_survivors(res.table, scores, survivor);
  res.s.reserve(res.i.size());
  for (int v : res.i) res.s.push_back(scores[v]);

  int L = params.top_L;
  if (L > static_cast<int>(res.i.size())) {
    L = static_cast<int>(res.i.size());
    res.truncated_L = true;
  }
  if (L < 0) L = 0;
  res.p.assign(res.i.begin(), res.i.begin() + L);
  return res;
}

}  // namespace osveta
