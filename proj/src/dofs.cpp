#include "polydem/dofs.hpp"

namespace polydem {

void ConstraintSet::add(int vertex, int k, std::function<double(double)> value) {
  if (finalized_) fail("constraints: table is frozen");
  int b = dofs_.mesh->vertex_to_boundary[vertex];
  if (b < 0)
    fail("Dirichlet value requested at non-boundary vertex " + std::to_string(vertex));
  table_[dofs_.bvertex_dof(b, k)] = std::move(value);
}

void ConstraintSet::add_vector(int vertex, std::function<Vec3(double)> value) {
  for (int k = 0; k < dofs_.d; ++k)
    add(vertex, k, [value, k](double t) { return value(t)[k]; });
}

void ConstraintSet::finalize() {
  fixed_.assign(dofs_.n_dofs(), 0);
  constrained_dofs_.clear();
  for (const auto& [dof, fn] : table_) {
    fixed_[dof] = 1;
    constrained_dofs_.push_back(dof);
  }
  free_to_full_.clear();
  full_to_free_.assign(dofs_.n_dofs(), -1);
  for (int i = 0; i < dofs_.n_dofs(); ++i)
    if (!fixed_[i]) {
      full_to_free_[i] = (int)free_to_full_.size();
      free_to_full_.push_back(i);
    }
  finalized_ = true;
}

void ConstraintSet::apply_values(Eigen::VectorXd& u, double t) const {
  for (const auto& [dof, fn] : table_) u[dof] = fn(t);
}

void ConstraintSet::apply_rates(Eigen::VectorXd& v, double t) const {
  const double h = 1e-6 * (1 + std::abs(t));
  for (const auto& [dof, fn] : table_) v[dof] = (fn(t + h) - fn(t - h)) / (2 * h);
}

Eigen::VectorXd ConstraintSet::restrict_free(const Eigen::VectorXd& full) const {
  Eigen::VectorXd out(n_free());
  for (int i = 0; i < n_free(); ++i) out[i] = full[free_to_full_[i]];
  return out;
}

void ConstraintSet::add_free_into(Eigen::VectorXd& full, const Eigen::VectorXd& free) const {
  for (int i = 0; i < n_free(); ++i) full[free_to_full_[i]] += free[i];
}

Eigen::VectorXd ConstraintSet::zero_fixed(const Eigen::VectorXd& full) const {
  Eigen::VectorXd out = full;
  for (int dof : constrained_dofs_) out[dof] = 0;
  return out;
}

ReducedSystem apply_dirichlet(const Eigen::SparseMatrix<double>& K, const Eigen::VectorXd& rhs,
                              const ConstraintSet& bc, double t) {
  Eigen::VectorXd uc = Eigen::VectorXd::Zero(K.cols());
  bc.apply_values(uc, t);
  Eigen::VectorXd mod = rhs - K * uc;

  std::vector<Eigen::Triplet<double>> trip;
  for (int col = 0; col < K.outerSize(); ++col) {
    int jc = bc.full_to_free(col);
    if (jc < 0) continue;
    for (Eigen::SparseMatrix<double>::InnerIterator it(K, col); it; ++it) {
      int ir = bc.full_to_free((int)it.row());
      if (ir >= 0) trip.emplace_back(ir, jc, it.value());
    }
  }
  ReducedSystem red;
  red.K.resize(bc.n_free(), bc.n_free());
  red.K.setFromTriplets(trip.begin(), trip.end());
  red.rhs = bc.restrict_free(mod);
  return red;
}

}  // namespace polydem
