#pragma once

#include "polydem/operators.hpp"
#include "polydem/solver.hpp"

#include <optional>

namespace polydem {

struct LoadProgram {
  int steps = 1;
  double t_end = 1.0;  // load factor reached at the last step
  double time(int step) const { return t_end * step / steps; }
};

struct SolveControls {
  double tolerance = 1e-8;       // relative residual (scaled Euclidean norm)
  int max_iterations = 50;       // radial-return iterations per load step
  double linear_tolerance = 1e-12;
  int linear_max_iterations = 20000;
  LinearSolverKind linear = LinearSolverKind::Auto;
  int direct_threshold = 8000;   // free dofs; above this the tangent solves
                                 // run matrix-free with an elastic LDLT preconditioner
};

struct StepDiagnostics {
  int step = 0;
  double t = 0;
  int iterations = 0;
  std::vector<double> residual_history;
  bool converged = false;
};

struct QuasiStaticState {
  Eigen::VectorXd u;
  std::vector<CellState> cells;
  std::vector<Mat3> strains;  // converged strains of the previous step
};

/// A per-step callback receives the committed state and diagnostics.
using StepCallback =
    std::function<void(const QuasiStaticState&, const StepDiagnostics&)>;

class QuasiStaticSolver {
 public:
  QuasiStaticSolver(const Operators& ops, const Material& mat, const ConstraintSet& bc,
                    LoadSpec loads, LoadProgram program, SolveControls controls);

  /// Runs all load steps from the virgin (or supplied) state.
  QuasiStaticState solve(const StepCallback& on_step = nullptr,
                         std::optional<QuasiStaticState> initial = std::nullopt);

  /// Scaled residual norm of the current iterate (free dofs only).
  double residual_norm(const Eigen::VectorXd& residual_free, double load_scale) const;

 private:
  const Operators& ops_;
  Material mat_;
  const ConstraintSet& bc_;
  LoadSpec loads_;
  LoadProgram program_;
  SolveControls controls_;

  std::optional<DirectSolver> elastic_prec_;  // LDLT of the reduced elastic K
  SpMat k_elastic_reduced_;

  Eigen::VectorXd solve_tangent(const std::vector<Mat9>& moduli,
                                const Eigen::VectorXd& rhs_free, bool all_elastic);
};

/// One-shot linear elastic solve (the static regime and the patch tests).
Eigen::VectorXd static_solve(const Operators& ops, const Material& mat,
                             const ConstraintSet& bc, const LoadSpec& loads, double t = 1.0,
                             const SolveControls& controls = {});

}  // namespace polydem
