#include "polydem/quasistatic.hpp"

namespace polydem {

QuasiStaticSolver::QuasiStaticSolver(const Operators& ops, const Material& mat,
                                     const ConstraintSet& bc, LoadSpec loads,
                                     LoadProgram program, SolveControls controls)
    : ops_(ops), mat_(mat), bc_(bc), loads_(std::move(loads)), program_(program),
      controls_(controls) {
  mat_.validate();
  SpMat K = assemble_stiffness(ops_, ElasticTensor::from_material(mat_));
  auto red = apply_dirichlet(K, Eigen::VectorXd::Zero(K.rows()), bc_, 0.0);
  k_elastic_reduced_ = red.K;
  elastic_prec_.emplace(k_elastic_reduced_);
}

double QuasiStaticSolver::residual_norm(const Eigen::VectorXd& r_free, double scale) const {
  return r_free.norm() / (scale > 0 ? scale : 1.0);
}

Eigen::VectorXd QuasiStaticSolver::solve_tangent(const std::vector<Mat9>& moduli,
                                                 const Eigen::VectorXd& rhs_free,
                                                 bool all_elastic) {
  if (all_elastic) return elastic_prec_->solve(rhs_free);

  const bool direct = controls_.linear == LinearSolverKind::Direct ||
                      (controls_.linear == LinearSolverKind::Auto &&
                       bc_.n_free() <= controls_.direct_threshold);
  if (direct) {
    SpMat Kt = assemble_stiffness(ops_, moduli);
    auto red = apply_dirichlet(Kt, Eigen::VectorXd::Zero(Kt.rows()), bc_, 0.0);
    DirectSolver ldlt(red.K);
    return ldlt.solve(rhs_free);
  }
  // Matrix-free tangent preconditioned by the elastic factorization; the
  // tangent never exceeds the elastic operator, so the preconditioned
  // spectrum stays mild even deep into the plastic regime.
  Eigen::VectorXd zero_full = Eigen::VectorXd::Zero(ops_.n_dofs());
  auto apply = [&](const Eigen::VectorXd& x_free) {
    Eigen::VectorXd x = zero_full;
    bc_.add_free_into(x, x_free);
    return bc_.restrict_free(apply_tangent(ops_, moduli, x));
  };
  auto prec = [&](const Eigen::VectorXd& r) { return elastic_prec_->solve(r); };
  return pcg(apply, prec, rhs_free, controls_.linear_tolerance,
             controls_.linear_max_iterations);
}

QuasiStaticState QuasiStaticSolver::solve(const StepCallback& on_step,
                                          std::optional<QuasiStaticState> initial) {
  const int nc = (int)ops_.mesh->cells.size();
  QuasiStaticState state;
  if (initial) {
    state = std::move(*initial);
  } else {
    state.u = Eigen::VectorXd::Zero(ops_.n_dofs());
    state.cells.assign(nc, CellState{});
    state.strains.assign(nc, Mat3::Zero());
  }

  const Mat9 c_el = ElasticTensor::from_material(mat_).matrix9();
  std::vector<Mat9> moduli(nc, c_el);
  std::vector<Mat3> sigma(nc, Mat3::Zero());
  std::vector<CellState> trial(nc);

  for (int n = 1; n <= program_.steps; ++n) {
    const double t = program_.time(n);
    Eigen::VectorXd load = assemble_load(*ops_.mesh, *ops_.recon, ops_.dofs, loads_.f,
                                         loads_.g, loads_.neumann_tags, t);
    const double scale = bc_.restrict_free(load).norm();

    // Dirichlet increment, injected through the first tangent solve so the
    // iterate stays in V_hD without spurious boundary-layer strains.
    Eigen::VectorXd lift = state.u;
    bc_.apply_values(lift, t);
    lift -= state.u;
    bool need_lift = lift.norm() > 0;

    StepDiagnostics diag;
    diag.step = n;
    diag.t = t;

    for (int k = 0; k < controls_.max_iterations; ++k) {
      auto eps = ops_.cell_strains(state.u);
      bool all_elastic = true;
      for (int c = 0; c < nc; ++c) {
        auto upd = plas_imp(state.cells[c].eps_p, state.cells[c].p, state.strains[c], eps[c], mat_);
        trial[c] = {upd.eps_p, upd.p, upd.sigma};
        moduli[c] = upd.tangent;
        sigma[c] = upd.sigma;
        // the elastic branch returns the elastic tangent exactly
        all_elastic &= (upd.p == state.cells[c].p);
      }
      Eigen::VectorXd residual = load - ops_.internal_force(state.u, sigma);
      Eigen::VectorXd r_free = bc_.restrict_free(residual);
      double rnorm = residual_norm(r_free, scale);
      diag.residual_history.push_back(rnorm);
      if (rnorm < controls_.tolerance && !need_lift) {
        diag.converged = true;
        break;
      }
      if (need_lift) r_free -= bc_.restrict_free(apply_tangent(ops_, moduli, lift));
      Eigen::VectorXd du = solve_tangent(moduli, r_free, all_elastic);
      if (need_lift) {
        state.u += lift;
        lift.setZero();
        need_lift = false;
      }
      bc_.add_free_into(state.u, du);
      diag.iterations = k + 1;
    }
    if (!diag.converged)
      fail("quasistatic: no convergence at load step " + std::to_string(n) + " after " +
           std::to_string(controls_.max_iterations) + " iterations (residual " +
           std::to_string(diag.residual_history.back()) + ")");

    // commit
    auto eps = ops_.cell_strains(state.u);
    for (int c = 0; c < nc; ++c) {
      state.cells[c] = trial[c];
      state.strains[c] = eps[c];
    }
    if (on_step) on_step(state, diag);
  }
  return state;
}

Eigen::VectorXd static_solve(const Operators& ops, const Material& mat,
                             const ConstraintSet& bc, const LoadSpec& loads, double t,
                             const SolveControls& controls) {
  SpMat K = assemble_stiffness(ops, ElasticTensor::from_material(mat));
  Eigen::VectorXd load =
      assemble_load(*ops.mesh, *ops.recon, ops.dofs, loads.f, loads.g, loads.neumann_tags, t);
  auto red = apply_dirichlet(K, load, bc, t);
  LinearSolverKind kind = controls.linear;
  if (kind == LinearSolverKind::Auto)
    kind = red.K.rows() <= controls.direct_threshold ? LinearSolverKind::Direct
                                                     : LinearSolverKind::Cg;
  Eigen::VectorXd x = linear_solve(red.K, red.rhs, controls.linear_tolerance,
                                   controls.linear_max_iterations, kind);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(ops.n_dofs());
  bc.apply_values(u, t);
  bc.add_free_into(u, x);
  return u;
}

}  // namespace polydem
