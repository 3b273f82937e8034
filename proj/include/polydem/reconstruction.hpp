#pragma once

#include "polydem/kdtree.hpp"
#include "polydem/mesh.hpp"

#include <Eigen/SparseCore>

#include <vector>

namespace polydem {

/// Degrees of freedom are ordered cells first, then boundary vertices:
/// scalar dof p in [0, n_cells) is cell p, p in [n_cells, n_cells+n_bvert)
/// is boundary vertex boundary_vertices[p - n_cells]. Vector dofs interleave
/// the d components of each scalar slot.
struct DofRef {
  enum Kind { CellDof, BoundaryVertexDof };
  Kind kind;
  int index;  // cell id or boundary-vertex slot
};

struct StencilEntry {
  DofRef dof;
  double alpha;
};

struct Stencil {
  int facet = -1;
  std::vector<StencilEntry> entries;
  bool is_extrapolation = false;
};

struct ExtrapolationStats {
  int interior_facets = 0;
  int extrapolating = 0;
  double percentage() const {
    return interior_facets ? 100.0 * extrapolating / interior_facets : 0.0;
  }
};

/// The facet reconstruction operator: one barycentric stencil per facet.
/// Boundary facets interpolate from their own vertices only; interior facets
/// use a (d+1)-point simplex of nearby cell barycentres / boundary vertices.
class ReconstructionMap {
 public:
  const PolyMesh* mesh = nullptr;
  std::vector<Stencil> stencils;          // one per facet
  ExtrapolationStats stats;
  int candidate_count = 0;                // the I used to build the map

  int n_cells() const { return (int)mesh->cells.size(); }
  int n_bvertices() const { return (int)mesh->boundary_vertices.size(); }
  int n_scalar_dofs() const { return n_cells() + n_bvertices(); }

  int scalar_index(const DofRef& d) const {
    return d.kind == DofRef::CellDof ? d.index : n_cells() + d.index;
  }
  /// Position of the point carrying a dof (cell barycentre / vertex).
  Vec3 dof_position(const DofRef& d) const {
    return d.kind == DofRef::CellDof
               ? mesh->cells[d.index].centroid
               : mesh->vertices[mesh->boundary_vertices[d.index]].pos;
  }

  /// Scalar sparse form of the operator (facet values from scalar dofs);
  /// vector components all share this pattern.
  Eigen::SparseMatrix<double> scalar_matrix() const;

  /// Facet values of a vector dof field (d rows per facet from d-interleaved dofs).
  Eigen::VectorXd facet_values(const Eigen::VectorXd& dofs) const;

  /// Cellwise constant gradient G_c of a vector dof field (top-left dxd block).
  Mat3 cell_gradient(int cell, const Eigen::VectorXd& facet_vals) const;
  Mat3 cell_strain(int cell, const Eigen::VectorXd& facet_vals) const;
  std::vector<Mat3> all_gradients(const Eigen::VectorXd& facet_vals) const;

  /// Affine evaluation of the cellwise P1 reconstruction at x (x in cell).
  Vec3 cell_p1_eval(const Eigen::VectorXd& dofs, int cell, const Vec3& x) const;
  /// P1 vertex interpolation on a boundary facet at x (x on facet).
  Vec3 boundary_facet_eval(const Eigen::VectorXd& dofs, int facet, const Vec3& x) const;
};

/// Stencil for one interior facet from the I nearest candidate points.
/// Throws when no non-degenerate simplex exists among the candidates.
class StencilSelector;
Stencil select_stencil(const StencilSelector& selector, int facet, int candidates);

/// Builds the stencil selector state (candidate cloud + spatial index) once,
/// then selects every facet. I defaults to 10 in 2D and 25 in 3D.
ReconstructionMap build_reconstruction(const PolyMesh& mesh, int candidates = 0);

/// Candidate cloud (cell barycentres + boundary vertices) with a k-d tree.
class StencilSelector {
 public:
  explicit StencilSelector(const PolyMesh& mesh);
  const PolyMesh& mesh() const { return *mesh_; }
  const DofRef& candidate(int i) const { return refs_[i]; }
  const Vec3& position(int i) const { return tree_.point(i); }
  std::vector<int> nearest(const Vec3& x, int k) const { return tree_.knn(x, k); }
  int size() const { return tree_.size(); }

 private:
  const PolyMesh* mesh_;
  std::vector<DofRef> refs_;
  KdTree tree_;
};

}  // namespace polydem
