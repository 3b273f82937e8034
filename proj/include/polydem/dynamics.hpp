#pragma once

#include "polydem/operators.hpp"
#include "polydem/solver.hpp"

namespace polydem {

enum class Quadrature { Midpoint, Gauss5 };

/// Symmetric quadrature of the forces over one step, offsets in [0,1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;  // sum to one
  static QuadratureRule make(Quadrature kind);
};

/// Largest stiffness eigenvalue by power iteration (deterministic start).
double estimate_lambda_max(const SpMat& K, double tol = 1e-4, int max_iterations = 50000);

/// CFL bound dt = safety * 2 sqrt(mu_min / lambda_max).
double cfl_dt(const Eigen::VectorXd& mass, double lambda_max, double safety);

struct EnergyRow {
  int step = 0;
  double t = 0;
  double e_elas = 0;
  double e_kin = 0;
  double e_plas = 0;
  double e_ext = 0;
  double imbalance = 0;  // (elas+kin+plas) - (ext + elas0 + kin0)
};

struct DynControls {
  double dt = 0;           // 0: derive from the CFL bound
  double cfl_safety = 0.9;
  double t_end = 1.0;
  Quadrature quadrature = Quadrature::Midpoint;
  double instability_factor = 1e6;  // abort when max|u| exceeds this times the domain diameter
};

struct DynState {
  Eigen::VectorXd u;       // displacement at t_n
  Eigen::VectorXd v_prev;  // velocity at t_{n-1/2}
  Eigen::VectorXd v;       // velocity at t_{n+1/2}
  std::vector<CellState> cells;
  int step = 0;
  double t = 0;
};

/// Explicit two-step pseudo-energy conserving integrator: free-flight
/// displacement prediction, chained explicit plastic updates at the
/// quadrature nodes, and the velocity update
/// v^{n+3/2} = v^{n-1/2} + 2 M^-1 sum_k w_k (l(t_k) - F_int(u_k)).
class DynamicSolver {
 public:
  DynamicSolver(const Operators& ops, const Material& mat, const ConstraintSet& bc,
                LoadSpec loads, DynControls controls);

  /// Samples initial displacement/velocity fields at the dof positions and
  /// bootstraps v^{-1/2} with one backward force evaluation.
  void initialize(const std::function<Vec3(const Vec3&)>& u0,
                  const std::function<Vec3(const Vec3&)>& v0);

  EnergyRow step();

  const DynState& state() const { return state_; }
  double dt() const { return dt_; }
  double lambda_max() const { return lambda_max_; }
  const EnergyRow& initial_energy() const { return initial_; }

 private:
  Eigen::VectorXd force(const Eigen::VectorXd& u, const std::vector<Mat3>& sigma, double t,
                        Eigen::VectorXd* load_out);
  double elastic_energy(const Eigen::VectorXd& u, const std::vector<CellState>& cells) const;
  double plastic_energy(const std::vector<CellState>& cells) const;
  double kinetic_energy(const Eigen::VectorXd& va, const Eigen::VectorXd& vb) const;

  const Operators& ops_;
  Material mat_;
  const ConstraintSet& bc_;
  LoadSpec loads_;
  DynControls controls_;
  QuadratureRule rule_;

  Eigen::VectorXd mass_;
  Eigen::VectorXd inv_mass_free_;
  double lambda_max_ = 0;
  double dt_ = 0;
  double diameter_ = 0;

  DynState state_;
  EnergyRow initial_;
  double e_ext_ = 0;
};

}  // namespace polydem
