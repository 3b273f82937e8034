#pragma once

#include "polydem/mesh.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <functional>
#include <map>

namespace polydem {

/// Dof layout: one d-vector per cell followed by one d-vector per boundary
/// vertex. Scalar slot p owns dofs [p*d, p*d+d).
struct DofMap {
  const PolyMesh* mesh = nullptr;
  int d = 0;
  int n_cells = 0;
  int n_bvert = 0;

  DofMap() = default;
  explicit DofMap(const PolyMesh& m)
      : mesh(&m), d(m.dim), n_cells((int)m.cells.size()),
        n_bvert((int)m.boundary_vertices.size()) {}

  int n_slots() const { return n_cells + n_bvert; }
  int n_dofs() const { return d * n_slots(); }
  int cell_dof(int c, int k) const { return c * d + k; }
  int bvertex_slot(int b) const { return n_cells + b; }
  int bvertex_dof(int b, int k) const { return (n_cells + b) * d + k; }

  /// Position carrying a scalar slot (cell barycentre / vertex position).
  Vec3 slot_position(int p) const {
    return p < n_cells ? mesh->cells[p].centroid
                       : mesh->vertices[mesh->boundary_vertices[p - n_cells]].pos;
  }
};

/// Strongly enforced Dirichlet constraints on boundary-vertex dofs with
/// time-dependent prescribed values.
class ConstraintSet {
 public:
  explicit ConstraintSet(const DofMap& dofs) : dofs_(dofs) {}

  /// Prescribes component k of boundary vertex `vertex` (mesh vertex id).
  /// Throws if the vertex is not on the boundary.
  void add(int vertex, int k, std::function<double(double)> value);
  void add_vector(int vertex, std::function<Vec3(double)> value);

  /// Freezes the constraint table and builds the free-dof numbering.
  void finalize();

  bool fixed(int dof) const { return fixed_[dof] != 0; }
  int n_free() const { return (int)free_to_full_.size(); }
  int n_fixed() const { return (int)constrained_dofs_.size(); }
  const std::vector<int>& free_dofs() const { return free_to_full_; }
  int full_to_free(int dof) const { return full_to_free_[dof]; }

  /// Writes the prescribed values u_D(z, t) into the constrained entries.
  void apply_values(Eigen::VectorXd& u, double t) const;
  /// Writes the prescribed rates du_D/dt (central difference in t).
  void apply_rates(Eigen::VectorXd& v, double t) const;

  Eigen::VectorXd restrict_free(const Eigen::VectorXd& full) const;
  void add_free_into(Eigen::VectorXd& full, const Eigen::VectorXd& free) const;
  Eigen::VectorXd zero_fixed(const Eigen::VectorXd& full) const;

  const DofMap& dofs() const { return dofs_; }

 private:
  DofMap dofs_;
  std::map<int, std::function<double(double)>> table_;  // dof -> value(t)
  std::vector<char> fixed_;
  std::vector<int> constrained_dofs_;
  std::vector<int> free_to_full_;
  std::vector<int> full_to_free_;
  bool finalized_ = false;
};

/// K and rhs reduced to the free dofs: rhs_f = (rhs - K u_c)|free.
struct ReducedSystem {
  Eigen::SparseMatrix<double> K;
  Eigen::VectorXd rhs;
};
ReducedSystem apply_dirichlet(const Eigen::SparseMatrix<double>& K, const Eigen::VectorXd& rhs,
                              const ConstraintSet& bc, double t);

}  // namespace polydem
