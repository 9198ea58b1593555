#include <CLI11.hpp>
#include <fmt/format.h>

#include <chrono>
#include <iostream>

#include "localizer/io.h"
#include "localizer/oracle.h"

using namespace localizer;

namespace {

constexpr int kInputError = 2;
constexpr int kDegenerate = 3;

Artifact load_artifact(const std::string& path) { return deserialize_artifact(read_file(path)); }

void emit(const Json& j, bool json) {
  if (json) std::cout << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Depth-sensor localization in polygonal workspaces"};
  app.require_subcommand(1);

  std::string ws_path, out_path, artifact_path, svg_path, engine = "rtd";
  double d = 0, d1 = 0, d2 = 0;
  bool json = false, regions = false;

  auto* pre = app.add_subcommand("preprocess", "Build the decomposition and query indices");
  pre->add_option("workspace", ws_path, "Workspace JSON")->required();
  pre->add_option("-o,--output", out_path, "Artifact path")->required();

  auto* single = app.add_subcommand("query-single", "Poses reading one distance");
  single->add_option("-a,--artifact", artifact_path)->required();
  single->add_option("-d", d, "Measured distance")->required();
  single->add_flag("--json", json);
  single->add_option("--svg", svg_path);
  single->add_flag("--regions", regions, "Include position-region curves");

  auto* anti = app.add_subcommand("query-antipodal", "Poses reading d1 ahead and d2 behind");
  anti->add_option("-a,--artifact", artifact_path)->required();
  anti->add_option("--d1", d1)->required();
  anti->add_option("--d2", d2)->required();
  anti->add_option("--engine", engine)->check(CLI::IsMember({"rtd", "opt"}));
  anti->add_flag("--json", json);
  anti->add_option("--svg", svg_path);

  GridSpec grid;
  bool serial = false;
  int samples = 3600, e1 = -1, e2 = -1;
  auto* oracle = app.add_subcommand("oracle", "Brute-force sampling for cross-checks");
  oracle->require_subcommand(1);
  auto add_grid = [&](CLI::App* c) {
    c->add_option("-w,--workspace", ws_path)->required();
    c->add_option("--nx", grid.nx)->check(CLI::PositiveNumber);
    c->add_option("--ny", grid.ny)->check(CLI::PositiveNumber);
    c->add_option("--nt", grid.nt)->check(CLI::PositiveNumber);
    c->add_option("--eps-grid", grid.eps_grid);
    c->add_flag("--serial", serial);
  };
  auto* o_single = oracle->add_subcommand("single", "Grid poses reading d");
  add_grid(o_single);
  o_single->add_option("-d", d)->required();
  auto* o_anti = oracle->add_subcommand("antipodal", "Grid poses reading d1 and d2");
  add_grid(o_anti);
  o_anti->add_option("--d1", d1)->required();
  o_anti->add_option("--d2", d2)->required();
  auto* o_pair = oracle->add_subcommand("pair", "Sampled angle intervals of an edge pair");
  o_pair->add_option("-w,--workspace", ws_path)->required();
  o_pair->add_option("--e1", e1)->required();
  o_pair->add_option("--e2", e2)->required();
  o_pair->add_option("-d", d)->required();
  o_pair->add_option("--samples", samples)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*pre) {
      auto start = std::chrono::steady_clock::now();
      Artifact a = build_artifact(load_workspace(ws_path));
      write_file(out_path, serialize_artifact(a));
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      fmt::print("cells {}\nvisibility edges {}\ncritical values {}\nwall time {:.3f} s\n", a.rtd.cells.size(),
                 a.visibility_edges, a.critical.size(), secs);
    } else if (*single) {
      Artifact a = load_artifact(artifact_path);
      auto r = query_single(a.workspace, a.rtd.cells, a.single, d);
      emit(single_json(a, r, regions), json);
      if (!json) {
        if (r.cells.empty()) fmt::print("no poses\n");
        for (const auto& c : r.cells) {
          fmt::print("cell {}:", c.cell);
          for (const auto& rg : c.ranges) fmt::print(" [{:.12g}, {:.12g}]", rg.begin, rg.end);
          fmt::print("\n");
        }
      }
      if (!svg_path.empty()) {
        RenderStyle style;
        write_file(svg_path, render_svg(a.workspace, single_layers(a, r, style), style));
      }
    } else if (*anti) {
      Artifact a = load_artifact(artifact_path);
      RenderStyle style;
      Json j;
      SvgLayers layers;
      std::vector<PairInterval> pairs;
      if (engine == "opt") {
        auto m = query_opt(a.workspace, a.rtd.cells, a.opt, d1, d2);
        j = opt_json(a, d1, d2, m);
        if (!svg_path.empty()) layers = opt_layers(a, d1, d2, m, style);
        for (const auto& x : m) pairs.push_back(x.interval);
      } else {
        auto m = query_antipodal(a.workspace, a.rtd.cells, a.antipodal, d1, d2);
        j = antipodal_json(a, d1, d2, m);
        if (!svg_path.empty()) layers = antipodal_layers(a, d1, d2, m, style);
        pairs = merge_by_pair(m);
      }
      emit(j, json);
      if (!json) {
        if (pairs.empty()) fmt::print("no poses\n");
        for (const auto& p : pairs) fmt::print("edges ({}, {}): [{:.12g}, {:.12g}]\n", p.e_t, p.e_b, p.lo, p.hi);
      }
      if (!svg_path.empty()) write_file(svg_path, render_svg(a.workspace, layers, style));
    } else if (*o_single || *o_anti) {
      Workspace w = load_workspace(ws_path);
      Grid g = make_grid(w, grid);
      Exec exec = serial ? Exec::Serial : Exec::Parallel;
      auto poses = *o_single ? oracle_single(w, d, g, exec) : oracle_antipodal(w, d1, d2, g, exec);
      Json list = Json::array();
      for (const auto& p : poses) list.push_back(Json::array({p.x, p.y, round12(p.theta)}));
      std::cout << Json{{"eps_grid", g.eps_grid}, {"count", poses.size()}, {"poses", list}}.dump() << "\n";
    } else if (*o_pair) {
      Workspace w = load_workspace(ws_path);
      if (e1 < 0 || e2 < 0 || e1 >= w.edge_count() || e2 >= w.edge_count()) throw Error("edge id out of range");
      Json list = Json::array();
      for (const auto& iv : oracle_pair_intervals(w, e1, e2, d, samples))
        list.push_back(Json::array({round12(iv.lo), round12(iv.hi)}));
      std::cout << Json{{"intervals", list}}.dump() << "\n";
    }
  } catch (const DegenerateWorkspace& e) {
    std::cerr << "degenerate workspace: " << e.what() << "\n";
    return kDegenerate;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return 0;
}
