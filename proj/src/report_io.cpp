#include "osveta/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

#include "osveta/parallel.hpp"

namespace osveta {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt(double v) {
  if (!std::isfinite(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// NaN is not representable in JSON; emit null.
ordered_json num_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

std::string feature_table_csv(const Mesh& mesh, const Adjacency& adj,
                              const TopologySets& topo, const FeatureTable& table) {
  RiskyInputs ri;
  ri.kG = &table.kG;
  ri.kH = &table.kH;
  ri.kG_zero_band = zero_band_for(table.kG, 1e-6);
  ri.kH_zero_band = zero_band_for(table.kH, 1e-6);
  std::vector<int> risky = risky_primitives(mesh, adj, topo, ri);
  std::vector<char> risky_mask(table.size, 0);
  for (int v : risky) risky_mask[v] = 1;

  std::string out =
      "vertex_id,kG,kH,k1,k2,theta_deg,psi_min,psi_max,kGI,kHI,C_el,C_DUG,C_TUP,"
      "C_VIS,grad_kG,grad_kH,area,class,shape,risky,flags\n";
  for (int v = 0; v < table.size; ++v) {
    out += std::to_string(v);
    for (const std::vector<double>* col :
         {&table.kG, &table.kH, &table.k1, &table.k2, &table.theta_deg,
          &table.psi_min_deg, &table.psi_max_deg, &table.kGI, &table.kHI,
          &table.c_el, &table.c_dug, &table.c_tup, &table.c_vis, &table.grad_kG,
          &table.grad_kH, &table.area}) {
      out += ',';
      out += fmt((*col)[v]);
    }
    out += ',';
    out += table.defined(v) ? to_string(table.vclass[v]) : "";
    out += ',';
    out += table.defined(v) && std::isfinite(table.kG[v]) ? to_string(table.shape[v]) : "";
    out += ',';
    out += risky_mask[v] ? "1" : "0";
    out += ',';
    out += flags_to_string(table.flags[v]);
    out += '\n';
  }
  return out;
}

std::string curvature_csv(const Mesh& mesh, const std::string& method,
                          AreaMode area_mode, QuadricKind kind, int threads) {
  Adjacency adj = build_adjacency(mesh);
  TopologySets topo = compute_topology_sets(mesh, adj);
  const bool quadric = method == "quadric";
  const double diag = mesh.bbox_diagonal();
  const double eps = 1e-12 * diag * diag;
  const int n = mesh.vertex_count();

  struct Row {
    double a = std::numeric_limits<double>::quiet_NaN();
    double b = std::numeric_limits<double>::quiet_NaN();
    double k1 = std::numeric_limits<double>::quiet_NaN();
    double k2 = std::numeric_limits<double>::quiet_NaN();
    double theta = std::numeric_limits<double>::quiet_NaN();
    double psi_min = std::numeric_limits<double>::quiet_NaN();
    double psi_max = std::numeric_limits<double>::quiet_NaN();
    double area = std::numeric_limits<double>::quiet_NaN();
    uint32_t flags = 0;
  };
  std::vector<Row> rows(n);

  parallel_for(n, threads, [&](int v) {
    Row& r = rows[v];
    if (topo.is_error(v) || adj.vertex_faces[v].empty()) {
      r.flags |= kFlagErrorVertex;
      return;
    }
    if (topo.is_boundary(v)) r.flags |= kFlagBoundary;
    VertexStar star = build_star(v, mesh.vertices, adj.vertex_faces[v], mesh.faces, eps);
    if (!star.manifold || star.incident_face_count() == 0) {
      r.flags |= kFlagErrorVertex;
      return;
    }
    try {
      r.area = vertex_area(star, area_mode);
    } catch (const MeshError&) {
      r.flags |= kFlagErrorVertex;
      return;
    }
    r.theta = theta_sum_deg(star);
    try {
      auto [lo, hi] = dihedral_extrema_deg(star);
      r.psi_min = lo;
      r.psi_max = hi;
    } catch (const MeshError&) {
      r.flags |= kFlagNoDihedral;
    }

    if (!quadric) {
      CurvatureAtVertex cv = curvature_at_vertex(star, area_mode);
      r.a = cv.kG;
      r.b = cv.kH;
      r.k1 = cv.k1;
      r.k2 = cv.k2;
      if (cv.boundary_partial) r.flags |= kFlagBoundaryPartial;
      if (cv.umbilic_clamped) r.flags |= kFlagUmbilicClamped;
    } else {
      try {
        Vec3 normal = estimate_normal(star, NormalMode::AngleWeightedAverage);
        LocalFrame frame = local_frame(normal);
        frame.origin = mesh.vertices[v];
        QuadricFit fit = fit_quadric(star, frame, kind, mesh, adj);
        if (fit.used_two_ring) r.flags |= kFlagTwoRingFit;
        QuadricCurvatures qc = curvatures_from_quadric(fit, frame);
        r.a = qc.kG;
        r.b = qc.kH;
        r.k1 = qc.k1;
        r.k2 = qc.k2;
      } catch (const MeshError&) {
        r.flags |= kFlagQuadricFailed;
      }
    }
  });

  std::string out = quadric
      ? "vertex_id,kGI,kHI,k1,k2,theta_deg,psi_min,psi_max,area,flags\n"
      : "vertex_id,kG,kH,k1,k2,theta_deg,psi_min,psi_max,area,flags\n";
  for (int v = 0; v < n; ++v) {
    const Row& r = rows[v];
    out += std::to_string(v);
    for (double x : {r.a, r.b, r.k1, r.k2, r.theta, r.psi_min, r.psi_max, r.area}) {
      out += ',';
      out += fmt(x);
    }
    out += ',';
    out += flags_to_string(r.flags);
    out += '\n';
  }
  return out;
}

std::string extraction_json(const ExtractionResult& result,
                            const ExtractParams& params) {
  ordered_json j;
  j["schema"] = 1;
  j["preset"] = to_string(params.config.preset);
  j["area"] = params.area_mode == AreaMode::Barycentric ? "barycentric" : "voronoi";
  j["boundary_elimination"] = params.config.boundary_elimination;
  j["top_L"] = static_cast<int>(result.p.size());
  j["truncated_L"] = result.truncated_L;
  j["survivors"] = static_cast<int>(result.i.size());

  j["s"] = result.s;
  j["i"] = result.i;
  j["p"] = result.p;

  ordered_json elim = ordered_json::array();
  for (const auto& e : result.eliminated) {
    ordered_json entry;
    entry["id"] = e.vertex;
    entry["reason"] = reason_to_string(e.reason_code);
    elim.push_back(std::move(entry));
  }
  j["eliminated"] = std::move(elim);
  return j.dump(2) + "\n";
}

std::string decimation_json(const DecimationReport& report) {
  ordered_json j;
  j["schema"] = 1;
  j["passes"] = report.passes;
  j["final_face_count"] = report.final_face_count;
  j["deleted"] = report.deleted;
  j["surviving"] = report.surviving;
  j["old_to_new"] = report.old_to_new;
  return j.dump(2) + "\n";
}

std::string survival_json(const SurvivalReport& report, const ExperimentPlan& plan) {
  ordered_json j;
  j["schema"] = 1;
  // The baseline draws from the same non-eliminated pool OSVETA ranks, so the
  // comparison measures ordering quality, not elimination quality.
  j["random_pool"] = plan.restrict_random_to_pool ? "osveta_survivor_pool" : "all_vertices";
  j["L"] = report.L;
  j["total_vertices"] = report.total_vertices;
  j["survivor_pool"] = report.survivor_pool;
  j["seeds"] = plan.seeds;
  j["selection"] = report.selection;

  ordered_json levels = ordered_json::array();
  for (const auto& lv : report.levels) {
    ordered_json l;
    l["target_fraction"] = lv.target_fraction;
    l["achieved_fraction"] = lv.achieved_fraction;
    l["reached_target"] = lv.reached_target;
    l["retained_vertices"] = lv.retained_vertices;
    l["osveta_deleted"] = lv.osveta_deleted;
    l["osveta_consecutive_top100"] = lv.osveta_consecutive_top100;
    l["osveta_consecutive_topL"] = lv.osveta_consecutive_topL;
    l["random_deleted"] = lv.random_deleted;
    l["random_deleted_mean"] = num_or_null(lv.random_deleted_mean);
    l["random_deleted_stddev"] = num_or_null(lv.random_deleted_stddev);
    l["random_consecutive_mean"] = num_or_null(lv.random_consecutive_mean);
    l["survived_selection"] = lv.survived_selection;
    levels.push_back(std::move(l));
  }
  j["levels"] = std::move(levels);
  return j.dump(2) + "\n";
}

std::string survival_csv(const SurvivalReport& report) {
  std::string out =
      "target_fraction,achieved_fraction,retained_vertices,osveta_deleted,"
      "random_deleted_mean,random_deleted_stddev,osveta_consecutive_top100,"
      "osveta_consecutive_topL,random_consecutive_mean\n";
  for (const auto& lv : report.levels) {
    out += fmt(lv.target_fraction) + "," + fmt(lv.achieved_fraction) + "," +
           std::to_string(lv.retained_vertices) + "," +
           std::to_string(lv.osveta_deleted) + "," + fmt(lv.random_deleted_mean) +
           "," + fmt(lv.random_deleted_stddev) + "," +
           std::to_string(lv.osveta_consecutive_top100) + "," +
           std::to_string(lv.osveta_consecutive_topL) + "," +
           fmt(lv.random_consecutive_mean) + "\n";
  }
  return out;
}

std::string efficiency_json(const EfficiencyTable& table) {
  ordered_json j;
  j["schema"] = 1;
  j["achieved_fraction"] = table.achieved_fraction;
  j["sizes"] = table.sizes;
  ordered_json rows = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json r;
    r["criterion"] = row.criterion;
    r["applicable"] = row.applicable;
    r["survivors"] = row.survivors;
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

std::string efficiency_csv(const EfficiencyTable& table) {
  std::string out = "criterion,applicable";
  for (int s : table.sizes) out += ",n" + std::to_string(s);
  out += '\n';
  for (const auto& row : table.rows) {
    out += row.criterion;
    out += row.applicable ? ",1" : ",0";
    for (int v : row.survivors) out += "," + std::to_string(v);
    out += '\n';
  }
  return out;
}

std::string overlap_json(const OverlapHistogram& hist) {
  ordered_json j;
  j["schema"] = 1;
  ordered_json verts = ordered_json::array();
  for (const auto& [v, c] : hist.vertex_counts) {
    ordered_json entry;
    entry["vertex"] = v;
    entry["criteria"] = c;
    verts.push_back(std::move(entry));
  }
  j["vertices"] = std::move(verts);
  j["frequency"] = hist.frequency;
  return j.dump(2) + "\n";
}

std::string area_comparison_json(const AreaComparison& cmp) {
  ordered_json j;
  j["schema"] = 1;
  j["achieved_fraction"] = cmp.achieved_fraction;
  j["sizes"] = cmp.sizes;
  j["barycentric"]["kG>0"] = cmp.barycentric_kG_pos;
  j["barycentric"]["kG<0"] = cmp.barycentric_kG_neg;
  j["voronoi"]["kG>0"] = cmp.voronoi_kG_pos;
  j["voronoi"]["kG<0"] = cmp.voronoi_kG_neg;
  return j.dump(2) + "\n";
}

std::string area_comparison_csv(const AreaComparison& cmp) {
  std::string out = "area,criterion";
  for (int s : cmp.sizes) out += ",n" + std::to_string(s);
  out += '\n';
  auto row = [&](const char* area, const char* crit, const std::vector<int>& vals) {
    out += area;
    out += ',';
    out += crit;
    for (int v : vals) out += "," + std::to_string(v);
    out += '\n';
  };
  row("barycentric", "kG>0", cmp.barycentric_kG_pos);
  row("barycentric", "kG<0", cmp.barycentric_kG_neg);
  row("voronoi", "kG>0", cmp.voronoi_kG_pos);
  row("voronoi", "kG<0", cmp.voronoi_kG_neg);
  return out;
}

std::string stability_curve_csv(const ExtractionResult& ext,
                                const DecimationReport& report, int first_n) {
  std::string out = "rank,vertex_id,kG,deleted\n";
  int limit = std::min<int>(first_n, static_cast<int>(ext.i.size()));
  for (int k = 0; k < limit; ++k) {
    int v = ext.i[k];
    out += std::to_string(k) + "," + std::to_string(v) + "," +
           fmt(ext.table.kG[v]) + "," + (report.survived(v) ? "0" : "1") + "\n";
  }
  return out;
}

}  // namespace osveta
