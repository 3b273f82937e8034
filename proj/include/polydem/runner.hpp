#pragma once

#include "polydem/analytic.hpp"
#include "polydem/config.hpp"
#include "polydem/dynamics.hpp"
#include "polydem/expression.hpp"
#include "polydem/quasistatic.hpp"

#include <memory>

namespace polydem {

/// A fully materialized case: mesh, reconstruction, operators, constraints
/// and controls, built from a config file (see README for the schema).
struct CaseSetup {
  std::unique_ptr<PolyMesh> mesh;
  std::unique_ptr<ReconstructionMap> recon;
  std::unique_ptr<Operators> ops;
  std::unique_ptr<ConstraintSet> bc;
  Material material;
  LoadSpec loads;
  std::string regime;
  double penalty_beta = 1.0;

  LoadProgram program;
  SolveControls controls;
  DynControls dyn;
  VectorExpression u0, v0;

  std::string out_dir = ".";
  std::string prefix = "case";
  int output_every = 1;
  int vtk_every = 0;
  std::vector<Vec3> probes;
};

PolyMesh mesh_from_config(const Config& cfg);
CaseSetup build_case(const Config& cfg, int stencil_override = 0);

/// Dispatches on [model].regime and writes the artifacts; returns 0 on success.
int run_case(const Config& cfg, int stencil_override = 0);

int run_check_mesh(const Config& cfg, int stencil_override = 0);
int run_forces_check(const Config& cfg, int stencil_override = 0);
int run_convergence(const Config& cfg, int stencil_override = 0);
int run_meshgen(const Config& cfg, const std::string& out_path);

}  // namespace polydem
