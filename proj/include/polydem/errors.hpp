#pragma once

#include "polydem/operators.hpp"

namespace polydem {

/// Degree-2 quadrature over a cell, by subdivision into simplices fanned
/// from the cell barycentre. Calls fn(point, weight).
void cell_quadrature(const PolyMesh& mesh, int cell,
                     const std::function<void(const Vec3&, double)>& fn);

/// || exact - P1-reconstruction(u) ||_L2(Omega)
double l2_error(const PolyMesh& mesh, const ReconstructionMap& recon, const Eigen::VectorXd& u,
                const std::function<Vec3(const Vec3&)>& exact);

/// Dof vector sampling a field at the dof locations (cells at barycentres,
/// boundary vertices at their positions).
Eigen::VectorXd interpolate_dofs(const DofMap& dofs, const std::function<Vec3(const Vec3&)>& fn);

/// Energy error 1/2 a_h(0; e, e) with e = I_h(exact) - u.
double energy_error(const SpMat& k_elastic, const Eigen::VectorXd& e);

/// order = d log(e1/e2) / log(n2/n1) with n the dof counts.
double convergence_order(double e1, double n1, double e2, double n2, int d);

}  // namespace polydem
