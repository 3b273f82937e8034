#pragma once

#include "polydem/operators.hpp"

namespace polydem {

/// Particle-force reinterpretation of the assembled operator: per-dof
/// elasto-plastic fluxes, the two penalty force families, and the
/// higher-order jump-jump correction that makes the decomposition an exact
/// identity with the variational internal force. Diagnostic only; time
/// stepping always uses the assembly.
struct ForceBreakdown {
  Eigen::VectorXd ep;    // elastic fluxes (interior averages + boundary fluxes)
  Eigen::VectorXd pen1;  // direct penalty forces
  Eigen::VectorXd pen2;  // stencil-mediated penalty forces
  Eigen::VectorXd corr;  // neglected jump-jump term of the expansion

  Eigen::VectorXd total(bool with_correction = true) const {
    return with_correction ? Eigen::VectorXd(ep + pen1 + pen2 + corr)
                           : Eigen::VectorXd(ep + pen1 + pen2);
  }
};

/// Per-cell stresses enter as full 3x3 tensors (embedded for d = 2).
ForceBreakdown particle_forces(const Operators& ops, const Eigen::VectorXd& u,
                               const std::vector<Mat3>& sigma);

/// Elastic flux of one interior facet on its minus cell,
/// |F| {Sigma}_F . n_F (the plus cell receives the opposite).
Vec3 elastic_flux(const Operators& ops, int facet, const std::vector<Mat3>& sigma);

struct ForceBalanceReport {
  double defect_with_correction = 0;     // relative, max over probes
  double defect_without_correction = 0;
};

/// Pairs the decomposition against -a_h(eps_p; u, v) for random test vectors
/// on the free dofs. With the correction the defect sits at roundoff.
ForceBalanceReport force_balance_check(const Operators& ops, const Eigen::VectorXd& u,
                                       const std::vector<Mat3>& sigma,
                                       const ConstraintSet& bc, int probes = 20,
                                       unsigned seed = 1);

}  // namespace polydem
