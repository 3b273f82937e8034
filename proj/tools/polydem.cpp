#include <CLI11.hpp>

#include "polydem/runner.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
  CLI::App app{"polydem - polyhedral-mesh discrete element solver for elasto-plasticity"};
  app.require_subcommand(1);

  std::string config_path;
  int stencil_candidates = 0;
  std::string mesh_override;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "case configuration file")->required();
    cmd->add_option("--stencil-candidates", stencil_candidates,
                    "candidate count I for the facet stencils (0: 10 in 2D, 25 in 3D)");
    cmd->add_option("--mesh", mesh_override, "override the mesh path from the config");
  };

  CLI::App* check = app.add_subcommand("check-mesh", "validate a mesh and report statistics");
  add_common(check);
  CLI::App* solve = app.add_subcommand("solve", "run a static/quasistatic/dynamic case");
  add_common(solve);
  CLI::App* forces = app.add_subcommand("forces", "particle-force decomposition diagnostics");
  add_common(forces);
  bool forces_check = false;
  forces->add_flag("--check", forces_check, "verify the decomposition identity");
  CLI::App* conv = app.add_subcommand("convergence", "run a mesh-refinement study");
  add_common(conv);
  CLI::App* meshgen = app.add_subcommand("meshgen", "write a generated mesh as native JSON");
  add_common(meshgen);
  std::string meshgen_out = "mesh.json";
  meshgen->add_option("--out", meshgen_out, "output path");

  CLI11_PARSE(app, argc, argv);

  try {
    polydem::Config cfg = polydem::Config::parse_file(config_path);
    if (!mesh_override.empty()) {
      std::ifstream in(config_path);
      std::stringstream ss;
      ss << in.rdbuf();
      // later keys win, so appending the override replaces the mesh source
      cfg = polydem::Config::parse_string(
          ss.str() + "\n[mesh]\npath = \"" + mesh_override + "\"\n", config_path);
    }
    if (check->parsed()) return polydem::run_check_mesh(cfg, stencil_candidates);
    if (solve->parsed()) return polydem::run_case(cfg, stencil_candidates);
    if (forces->parsed()) return polydem::run_forces_check(cfg, stencil_candidates);
    if (conv->parsed()) return polydem::run_convergence(cfg, stencil_candidates);
    if (meshgen->parsed()) return polydem::run_meshgen(cfg, meshgen_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
