#pragma once

#include "polydem/geometry.hpp"

#include <Eigen/Sparse>

#include <functional>
#include <memory>

namespace polydem {

using ApplyFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct SolveReport {
  int iterations = 0;
  double relative_residual = 0;
};

/// Preconditioned conjugate gradients on an SPD operator. Throws on an
/// iteration cap or when negative curvature reveals an indefinite operator.
Eigen::VectorXd pcg(const ApplyFn& apply, const ApplyFn& precond, const Eigen::VectorXd& rhs,
                    double tol, int max_iterations, SolveReport* report = nullptr);

/// Sparse LDLT factorization held for repeated solves (also used as a
/// preconditioner for tangent systems).
class DirectSolver {
 public:
  explicit DirectSolver(const Eigen::SparseMatrix<double>& K);
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

 private:
  std::shared_ptr<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>> ldlt_;
};

enum class LinearSolverKind { Auto, Direct, Cg };

/// Solves K x = rhs with K symmetric positive definite.
Eigen::VectorXd linear_solve(const Eigen::SparseMatrix<double>& K, const Eigen::VectorXd& rhs,
                             double tol = 1e-12, int max_iterations = 20000,
                             LinearSolverKind kind = LinearSolverKind::Auto);

}  // namespace polydem
