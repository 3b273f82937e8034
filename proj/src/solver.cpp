#include "polydem/solver.hpp"

#include <cmath>

namespace polydem {

Eigen::VectorXd pcg(const ApplyFn& apply, const ApplyFn& precond, const Eigen::VectorXd& rhs,
                    double tol, int max_iterations, SolveReport* report) {
  const double bnorm = rhs.norm();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(rhs.size());
  if (bnorm == 0) {
    if (report) *report = {0, 0.0};
    return x;
  }
  Eigen::VectorXd r = rhs;
  Eigen::VectorXd z = precond ? precond(r) : r;
  Eigen::VectorXd p = z;
  double rz = r.dot(z);
  int it = 0;
  while (r.norm() > tol * bnorm) {
    if (it++ >= max_iterations)
      fail("pcg: iteration cap reached (residual " + std::to_string(r.norm() / bnorm) + ")");
    Eigen::VectorXd q = apply(p);
    double pq = p.dot(q);
    if (pq <= 0) fail("pcg: negative curvature, operator is not positive definite");
    double alpha = rz / pq;
    x += alpha * p;
    r -= alpha * q;
    z = precond ? precond(r) : r;
    double rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
  if (report) *report = {it, r.norm() / bnorm};
  return x;
}

DirectSolver::DirectSolver(const Eigen::SparseMatrix<double>& K)
    : ldlt_(std::make_shared<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>()) {
  ldlt_->compute(K);
  if (ldlt_->info() != Eigen::Success) fail("direct solver: factorization failed");
}

Eigen::VectorXd DirectSolver::solve(const Eigen::VectorXd& rhs) const {
  return ldlt_->solve(rhs);
}

Eigen::VectorXd linear_solve(const Eigen::SparseMatrix<double>& K, const Eigen::VectorXd& rhs,
                             double tol, int max_iterations, LinearSolverKind kind) {
  if (kind == LinearSolverKind::Auto)
    kind = K.rows() <= 8000 ? LinearSolverKind::Direct : LinearSolverKind::Cg;
  if (kind == LinearSolverKind::Direct) {
    DirectSolver ldlt(K);
    Eigen::VectorXd x = ldlt.solve(rhs);
    double rel = rhs.norm() > 0 ? (K * x - rhs).norm() / rhs.norm() : 0.0;
    if (!x.allFinite() || rel > std::max(tol, 1e-8))
      fail("linear_solve: direct solve inaccurate (relative residual " + std::to_string(rel) + ")");
    return x;
  }
  Eigen::VectorXd dinv = K.diagonal().cwiseMax(1e-300).cwiseInverse();
  return pcg([&](const Eigen::VectorXd& v) { return Eigen::VectorXd(K * v); },
             [&](const Eigen::VectorXd& v) { return Eigen::VectorXd(dinv.asDiagonal() * v); },
             rhs, tol, max_iterations);
}

}  // namespace polydem
