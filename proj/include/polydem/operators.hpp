#pragma once

#include "polydem/dofs.hpp"
#include "polydem/material.hpp"
#include "polydem/plasticity.hpp"
#include "polydem/reconstruction.hpp"

#include <Eigen/SparseCore>

namespace polydem {

using SpMat = Eigen::SparseMatrix<double>;

/// Assembled sparse factors of the discrete operator. With R the facet
/// reconstruction, E the cellwise strain map, C the (block-diagonal) elastic
/// tensor scaled by cell volumes, J the facet jump operator and D the
/// penalty weights eta |F|/h_F, the stiffness is K = (ER)^T C (ER) + J^T D J.
struct Operators {
  const PolyMesh* mesh = nullptr;
  const ReconstructionMap* recon = nullptr;
  DofMap dofs;
  double eta = 0;

  SpMat R;   // (d nF) x (d nP)
  SpMat E;   // (d^2 nC) x (d nF)
  SpMat ER;  // E * R
  SpMat J;   // (d nF) x (d nP); interior rows minus-plus, boundary rows vertex-cell
  SpMat S;   // J^T D J
  Eigen::VectorXd penalty_weight;  // per facet, eta |F| / h_F

  int n_dofs() const { return dofs.n_dofs(); }

  /// Strains of all cells as embedded 3x3 tensors (plane strain in 2D).
  std::vector<Mat3> cell_strains(const Eigen::VectorXd& u) const;

  /// Internal force vector: dof pairing of sum_c |c| sigma_c : eps_c(R .)
  /// plus the penalty term s_h(u, .).
  Eigen::VectorXd internal_force(const Eigen::VectorXd& u,
                                 const std::vector<Mat3>& sigma) const;
};

Operators build_operators(const PolyMesh& mesh, const ReconstructionMap& recon, double eta);

/// Elastic stiffness K = (ER)^T C (ER) + S. Throws when eta <= 0.
SpMat assemble_stiffness(const Operators& ops, const ElasticTensor& c);

/// Tangent stiffness with per-cell fourth-order moduli (9-vector form,
/// restricted in-plane for d = 2).
SpMat assemble_stiffness(const Operators& ops, const std::vector<Mat9>& cell_moduli);

/// Matrix-free tangent application y = (ER)^T C_ep (ER) x + S x.
Eigen::VectorXd apply_tangent(const Operators& ops, const std::vector<Mat9>& cell_moduli,
                              const Eigen::VectorXd& x);

/// Diagonal lumped mass per dof. Interior cells carry rho |c|; cells with a
/// boundary facet cede the barycentric-dual fragments around their boundary
/// vertices to the vertex dofs.
Eigen::VectorXd lump_mass(const PolyMesh& mesh, double rho);

/// Volumetric load f (cell averages) plus Neumann tractions g on the tagged
/// facets, spread to the facet vertex dofs with the reconstruction weights.
using VolumetricLoad = std::function<Vec3(const Vec3&, double)>;
using TractionLoad = std::function<Vec3(const Vec3&, double, const std::string& tag)>;

struct LoadSpec {
  VolumetricLoad f;                       // may be null
  TractionLoad g;                         // may be null
  std::vector<std::string> neumann_tags;
};
Eigen::VectorXd assemble_load(const PolyMesh& mesh, const ReconstructionMap& recon,
                              const DofMap& dofs, const VolumetricLoad& f,
                              const TractionLoad& g_neumann,
                              const std::vector<std::string>& neumann_tags, double t);

}  // namespace polydem
