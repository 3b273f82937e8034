#include "polydem/dynamics.hpp"

#include <cmath>

namespace polydem {

QuadratureRule QuadratureRule::make(Quadrature kind) {
  if (kind == Quadrature::Midpoint) return {{0.5}, {1.0}};
  // three-point Gauss-Legendre, exact to degree five
  const double s = std::sqrt(15.0) / 10.0;
  return {{0.5 - s, 0.5, 0.5 + s}, {5.0 / 18, 8.0 / 18, 5.0 / 18}};
}

double estimate_lambda_max(const SpMat& K, double tol, int max_iterations) {
  if (K.rows() == 0) fail("estimate_lambda_max: empty operator");
  Eigen::VectorXd x(K.rows());
  for (int i = 0; i < x.size(); ++i) x[i] = 1.0 + 0.37 * std::sin(1.0 + i);  // fixed seed vector
  x.normalize();
  double lambda = 0;
  for (int it = 0; it < max_iterations; ++it) {
    Eigen::VectorXd y = K * x;
    double next = x.dot(y);
    double ynorm = y.norm();
    if (ynorm == 0) return 0;
    x = y / ynorm;
    if (it > 0 && std::abs(next - lambda) <= tol * std::abs(next)) return next;
    lambda = next;
  }
  fail("estimate_lambda_max: power iteration did not settle");
}

double cfl_dt(const Eigen::VectorXd& mass, double lambda_max, double safety) {
  if (lambda_max <= 0) fail("cfl_dt: lambda_max must be positive");
  if (mass.size() == 0 || mass.minCoeff() <= 0) fail("cfl_dt: masses must be positive");
  return safety * 2.0 * std::sqrt(mass.minCoeff() / lambda_max);
}

DynamicSolver::DynamicSolver(const Operators& ops, const Material& mat, const ConstraintSet& bc,
                             LoadSpec loads, DynControls controls)
    : ops_(ops), mat_(mat), bc_(bc), loads_(std::move(loads)), controls_(controls),
      rule_(QuadratureRule::make(controls.quadrature)) {
  mat_.validate();
  mass_ = lump_mass(*ops_.mesh, mat_.rho);
  inv_mass_free_ = bc_.restrict_free(mass_).cwiseInverse();
  diameter_ = ops_.mesh->bbox_diameter();

  // CFL worst case: elastic stiffness (no plasticity) on the free dofs.
  SpMat K = assemble_stiffness(ops_, ElasticTensor::from_material(mat_));
  auto red = apply_dirichlet(K, Eigen::VectorXd::Zero(K.rows()), bc_, 0.0);
  lambda_max_ = estimate_lambda_max(red.K);
  dt_ = controls_.dt > 0 ? controls_.dt
                         : cfl_dt(bc_.restrict_free(mass_), lambda_max_, controls_.cfl_safety);
}

Eigen::VectorXd DynamicSolver::force(const Eigen::VectorXd& u, const std::vector<Mat3>& sigma,
                                     double t, Eigen::VectorXd* load_out) {
  Eigen::VectorXd load = assemble_load(*ops_.mesh, *ops_.recon, ops_.dofs, loads_.f, loads_.g,
                                       loads_.neumann_tags, t);
  if (load_out) *load_out = load;
  return load - ops_.internal_force(u, sigma);
}

double DynamicSolver::elastic_energy(const Eigen::VectorXd& u,
                                     const std::vector<CellState>& cells) const {
  auto eps = ops_.cell_strains(u);
  double e = 0;
  for (int c = 0; c < (int)cells.size(); ++c) {
    Mat3 sig = stress(eps[c], cells[c].eps_p, mat_);
    e += 0.5 * ops_.mesh->cells[c].volume * (sig.array() * (eps[c] - cells[c].eps_p).array()).sum();
  }
  // the scheme stores energy in the stabilization term as well
  return e + 0.5 * u.dot(ops_.S * u);
}

double DynamicSolver::plastic_energy(const std::vector<CellState>& cells) const {
  double e = 0;
  const double H = mat_.H();
  for (int c = 0; c < (int)cells.size(); ++c)
    e += ops_.mesh->cells[c].volume *
         (mat_.sigma0 * cells[c].p + 0.5 * H * cells[c].p * cells[c].p);
  return e;
}

double DynamicSolver::kinetic_energy(const Eigen::VectorXd& va, const Eigen::VectorXd& vb) const {
  return 0.5 * va.dot(mass_.cwiseProduct(vb));
}

void DynamicSolver::initialize(const std::function<Vec3(const Vec3&)>& u0,
                               const std::function<Vec3(const Vec3&)>& v0) {
  const DofMap& dofs = ops_.dofs;
  auto sample = [&](const std::function<Vec3(const Vec3&)>& fn) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(dofs.n_dofs());
    if (fn)
      for (int p = 0; p < dofs.n_slots(); ++p) {
        Vec3 v = fn(dofs.slot_position(p));
        for (int k = 0; k < dofs.d; ++k) x[p * dofs.d + k] = v[k];
      }
    return x;
  };
  state_.u = sample(u0);
  state_.v = sample(v0);
  state_.cells.assign(ops_.mesh->cells.size(), CellState{});
  state_.step = 0;
  state_.t = 0;
  bc_.apply_values(state_.u, 0.0);

  // Symmetric half-kick pair around t = 0: v^{1/2} = v_0 + dt/2 a_0 and
  // v^{-1/2} = v^{1/2} - dt a_0. Keeps the two-step scheme second order.
  auto eps = ops_.cell_strains(state_.u);
  std::vector<Mat3> sigma(eps.size());
  for (size_t c = 0; c < eps.size(); ++c) sigma[c] = stress(eps[c], Mat3::Zero(), mat_);
  Eigen::VectorXd f0 = force(state_.u, sigma, 0.0, nullptr);
  Eigen::VectorXd a0 = inv_mass_free_.cwiseProduct(bc_.restrict_free(f0));
  state_.v_prev = state_.v;
  for (int i = 0; i < bc_.n_free(); ++i) {
    state_.v[bc_.free_dofs()[i]] += 0.5 * dt_ * a0[i];
    state_.v_prev[bc_.free_dofs()[i]] -= 0.5 * dt_ * a0[i];
  }
  bc_.apply_rates(state_.v, 0.5 * dt_);
  bc_.apply_rates(state_.v_prev, -0.5 * dt_);

  for (size_t c = 0; c < eps.size(); ++c) state_.cells[c].sigma = sigma[c];
  initial_ = EnergyRow{};
  initial_.e_elas = elastic_energy(state_.u, state_.cells);
  initial_.e_kin = kinetic_energy(state_.v, state_.v_prev);
  e_ext_ = 0;
}

EnergyRow DynamicSolver::step() {
  const int nc = (int)ops_.mesh->cells.size();
  const double t0 = state_.t;

  Eigen::VectorXd force_acc = Eigen::VectorXd::Zero(ops_.n_dofs());
  std::vector<CellState> work = state_.cells;
  std::vector<Mat3> sigma(nc);
  double ext_increment = 0;

  for (size_t k = 0; k < rule_.nodes.size(); ++k) {
    const double tk = t0 + rule_.nodes[k] * dt_;
    Eigen::VectorXd uk = state_.u + (rule_.nodes[k] * dt_) * state_.v;  // free flight
    auto eps = ops_.cell_strains(uk);
    for (int c = 0; c < nc; ++c) {
      auto [ep, p] = plas_exp(work[c].eps_p, work[c].p, eps[c], mat_);
      work[c].eps_p = ep;
      work[c].p = p;
      work[c].sigma = stress(eps[c], ep, mat_);
      sigma[c] = work[c].sigma;
    }
    Eigen::VectorXd load;
    Eigen::VectorXd fk = force(uk, sigma, tk, &load);
    force_acc += (rule_.weights[k] * dt_) * fk;
    // work of external loads as integrated by the scheme's own quadrature
    ext_increment += rule_.weights[k] * dt_ * load.dot(state_.v);
  }

  Eigen::VectorXd v_new = state_.v_prev;
  Eigen::VectorXd acc = inv_mass_free_.cwiseProduct(bc_.restrict_free(force_acc));
  for (int i = 0; i < bc_.n_free(); ++i) v_new[bc_.free_dofs()[i]] += 2.0 * acc[i];
  bc_.apply_rates(v_new, t0 + 1.5 * dt_);

  state_.u += dt_ * state_.v;
  state_.t = t0 + dt_;
  state_.step += 1;
  state_.cells = std::move(work);
  e_ext_ += ext_increment;

  double umax = state_.u.lpNorm<Eigen::Infinity>();
  if (!state_.u.allFinite() || umax > controls_.instability_factor * diameter_)
    fail("dynamics: instability detected at step " + std::to_string(state_.step) +
         " (max |u| = " + std::to_string(umax) + ")");

  EnergyRow row;
  row.step = state_.step;
  row.t = state_.t;
  row.e_elas = elastic_energy(state_.u, state_.cells);
  row.e_kin = kinetic_energy(v_new, state_.v);
  row.e_plas = plastic_energy(state_.cells);
  row.e_ext = e_ext_;
  row.imbalance =
      (row.e_elas + row.e_kin + row.e_plas) - (row.e_ext + initial_.e_elas + initial_.e_kin);

  state_.v_prev = state_.v;
  state_.v = v_new;
  return row;
}

}  // namespace polydem
