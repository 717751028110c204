#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "osveta/fixtures.hpp"
#include "osveta/mesh_io.hpp"
#include "osveta/parallel.hpp"
#include "osveta/report_io.hpp"

namespace {

using namespace osveta;

AreaMode parse_area(const std::string& s) {
  if (s == "voronoi") return AreaMode::VoronoiMixed;
  if (s == "barycentric") return AreaMode::Barycentric;
  throw CLI::ValidationError("--area", "must be voronoi or barycentric");
}

std::vector<double> parse_schedule(const std::string& s) {
  std::vector<double> out;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',') {
      if (!cur.empty()) out.push_back(std::stod(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

void emit(const std::string& path, const std::string& contents) {
  if (path.empty() || path == "-")
    std::cout << contents;
  else
    write_file(path, contents);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OSVETA mesh-analysis toolkit: curvature estimation, vertex "
               "ranking, decimation and stability experiments"};
  app.require_subcommand(1);

  int threads = default_thread_count();
  app.add_option("--threads", threads, "worker threads for per-vertex stages");

  // --- curvature ---
  auto* cmd_curv = app.add_subcommand("curvature", "per-vertex curvature CSV");
  std::string curv_input, curv_method = "dgeom", curv_area = "barycentric";
  std::string curv_fit = "extended", curv_out;
  cmd_curv->add_option("--input", curv_input, "OBJ/OFF mesh")->required();
  cmd_curv->add_option("--method", curv_method, "dgeom | quadric");
  cmd_curv->add_option("--area", curv_area, "voronoi | barycentric");
  cmd_curv->add_option("--fit", curv_fit, "simple | extended (quadric method)");
  cmd_curv->add_option("--out", curv_out, "output CSV (default stdout)");

  // --- decimate ---
  auto* cmd_dec = app.add_subcommand("decimate", "Schroeder-style vertex decimation");
  std::string dec_input, dec_report, dec_output;
  DecimationParams dec_params;
  cmd_dec->add_option("--input", dec_input, "OBJ/OFF mesh")->required();
  cmd_dec->add_option("--distance", dec_params.distance_threshold,
                      "plane-distance threshold, fraction of bbox diagonal");
  cmd_dec->add_option("--edge-distance", dec_params.edge_distance_threshold,
                      "edge-distance threshold, fraction of bbox diagonal");
  cmd_dec->add_option("--feature-angle", dec_params.feature_angle_deg,
                      "feature angle in degrees");
  cmd_dec->add_option("--target", dec_params.target_fraction,
                      "retained vertex fraction stop rule");
  cmd_dec->add_option("--max-passes", dec_params.max_passes, "pass limit");
  cmd_dec->add_option("--report", dec_report, "report JSON path");
  cmd_dec->add_option("--output", dec_output, "decimated mesh path");

  // --- extract ---
  auto* cmd_ext = app.add_subcommand("extract", "OSVETA stable-vertex extraction");
  std::string ext_input, ext_preset = "safe", ext_area = "barycentric";
  std::string ext_out, ext_features;
  int ext_top = 1000;
  bool ext_boundary = false;
  cmd_ext->add_option("--input", ext_input, "OBJ/OFF mesh")->required();
  cmd_ext->add_option("--top", ext_top, "length of the p vector");
  cmd_ext->add_option("--preset", ext_preset, "safe | extended | aggressive");
  cmd_ext->add_option("--area", ext_area, "voronoi | barycentric");
  cmd_ext->add_flag("--eliminate-boundary", ext_boundary,
                    "eliminate boundary vertices from the ordering");
  cmd_ext->add_option("--out", ext_out, "output JSON (default stdout)");
  cmd_ext->add_option("--features", ext_features, "also write the feature CSV here");

  // --- evaluate ---
  auto* cmd_eval = app.add_subcommand("evaluate", "stability experiment vs random");
  std::string eval_input, eval_preset = "safe", eval_area = "barycentric";
  std::string eval_schedule = "0.7,0.4,0.23,0.13,0.08";
  std::string eval_out, eval_csv, eval_curve;
  int eval_top = 1000, eval_seeds = 10;
  bool eval_unrestricted = false;
  DecimationParams eval_decim{0.05, 0.02, 30.0, 1.0, 100};
  cmd_eval->add_option("--input", eval_input, "OBJ/OFF mesh")->required();
  cmd_eval->add_option("--top", eval_top, "selection size L");
  cmd_eval->add_option("--schedule", eval_schedule,
                       "comma-separated retained fractions, decreasing");
  cmd_eval->add_option("--seeds", eval_seeds, "number of random baselines");
  cmd_eval->add_option("--preset", eval_preset, "safe | extended | aggressive");
  cmd_eval->add_option("--area", eval_area, "voronoi | barycentric");
  cmd_eval->add_option("--distance", eval_decim.distance_threshold,
                       "decimator plane-distance threshold");
  cmd_eval->add_option("--edge-distance", eval_decim.edge_distance_threshold,
                       "decimator edge-distance threshold");
  cmd_eval->add_flag("--unrestricted-random", eval_unrestricted,
                     "draw random baselines from all vertices, not the ranked pool");
  cmd_eval->add_option("--out", eval_out, "report JSON (default stdout)");
  cmd_eval->add_option("--csv", eval_csv, "also write a per-level CSV");
  cmd_eval->add_option("--curve", eval_curve,
                       "write (rank,kG,deleted) CSV at the deepest level");

  // --- compare-areas ---
  auto* cmd_cmp = app.add_subcommand("compare-areas",
                                     "kG criteria efficiency, Voronoi vs barycentric");
  std::string cmp_input, cmp_out, cmp_csv;
  double cmp_target = 0.25;
  DecimationParams cmp_decim{0.05, 0.02, 30.0, 1.0, 100};
  cmd_cmp->add_option("--input", cmp_input, "OBJ/OFF mesh")->required();
  cmd_cmp->add_option("--target", cmp_target, "retained fraction for the decimation");
  cmd_cmp->add_option("--distance", cmp_decim.distance_threshold,
                      "decimator plane-distance threshold");
  cmd_cmp->add_option("--out", cmp_out, "report JSON (default stdout)");
  cmd_cmp->add_option("--csv", cmp_csv, "also write the paired CSV");

  // --- fixture ---
  auto* cmd_fix = app.add_subcommand("fixture", "write a generated test mesh");
  std::string fix_name, fix_out;
  cmd_fix->add_option("name", fix_name, "fixture name (see --list)")->required();
  cmd_fix->add_option("--out", fix_out, "output OBJ/OFF path (default stdout OBJ)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_curv) {
      Mesh mesh = load_mesh(curv_input);
      QuadricKind kind =
          curv_fit == "simple" ? QuadricKind::Simple : QuadricKind::Extended;
      emit(curv_out, curvature_csv(mesh, curv_method, parse_area(curv_area), kind,
                                   threads));
    } else if (*cmd_dec) {
      Mesh mesh = load_mesh(dec_input);
      auto [out_mesh, report] = decimate(mesh, dec_params);
      std::fprintf(stderr, "retained %zu of %d vertices in %d passes\n",
                   report.surviving.size(), mesh.vertex_count(), report.passes);
      if (!dec_report.empty()) write_file(dec_report, decimation_json(report));
      if (!dec_output.empty()) save_mesh(out_mesh, dec_output);
    } else if (*cmd_ext) {
      Mesh mesh = load_mesh(ext_input);
      ExtractParams params;
      params.top_L = ext_top;
      params.config = CriteriaConfig::with_preset(preset_from_string(ext_preset));
      params.config.boundary_elimination = ext_boundary;
      params.area_mode = parse_area(ext_area);
      params.threads = threads;
      ExtractionResult res = extract(mesh, params);
      emit(ext_out, extraction_json(res, params));
      if (!ext_features.empty()) {
        Adjacency adj = build_adjacency(mesh);
        write_file(ext_features,
                   feature_table_csv(mesh, adj, res.topology, res.table));
      }
    } else if (*cmd_eval) {
      Mesh mesh = load_mesh(eval_input);
      ExperimentPlan plan;
      plan.top_L = eval_top;
      plan.schedule = parse_schedule(eval_schedule);
      plan.seeds.clear();
      for (int s = 1; s <= eval_seeds; ++s) plan.seeds.push_back(s);
      plan.config = CriteriaConfig::with_preset(preset_from_string(eval_preset));
      plan.area_mode = parse_area(eval_area);
      plan.decim = eval_decim;
      plan.restrict_random_to_pool = !eval_unrestricted;
      plan.threads = threads;
      SurvivalReport report = run_stability_experiment(mesh, plan);
      emit(eval_out, survival_json(report, plan));
      if (!eval_csv.empty()) write_file(eval_csv, survival_csv(report));
      if (!eval_curve.empty()) {
        ExtractParams ep;
        ep.top_L = plan.top_L;
        ep.config = plan.config;
        ep.area_mode = plan.area_mode;
        ep.threads = threads;
        ExtractionResult ext = extract(mesh, ep);
        DecimationParams dp = plan.decim;
        dp.target_fraction = plan.schedule.back();
        auto [m2, rep] = decimate(mesh, dp);
        (void)m2;
        write_file(eval_curve, stability_curve_csv(ext, rep, 1000));
      }
    } else if (*cmd_cmp) {
      Mesh mesh = load_mesh(cmp_input);
      ExperimentPlan plan;
      plan.schedule = {cmp_target};
      plan.decim = cmp_decim;
      plan.threads = threads;
      AreaComparison cmp = area_comparison(mesh, plan);
      emit(cmp_out, area_comparison_json(cmp));
      if (!cmp_csv.empty()) write_file(cmp_csv, area_comparison_csv(cmp));
    } else if (*cmd_fix) {
      Mesh mesh = fixtures::by_name(fix_name);
      if (fix_out.empty())
        std::cout << serialize_mesh(mesh, MeshFormat::OBJ);
      else
        save_mesh(mesh, fix_out);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
