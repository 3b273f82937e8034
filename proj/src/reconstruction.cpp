#include "polydem/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace polydem {

namespace {

constexpr double kContainTol = 1e-12;

// Enumerates (d+1)-subsets of {0..n-1} in lexicographic order.
bool next_subset(std::vector<int>& idx, int n) {
  int k = (int)idx.size();
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - (k - i)) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

StencilSelector::StencilSelector(const PolyMesh& mesh) : mesh_(&mesh) {
  std::vector<Vec3> pos;
  for (int c = 0; c < (int)mesh.cells.size(); ++c) {
    refs_.push_back({DofRef::CellDof, c});
    pos.push_back(mesh.cells[c].centroid);
  }
  for (int b = 0; b < (int)mesh.boundary_vertices.size(); ++b) {
    refs_.push_back({DofRef::BoundaryVertexDof, b});
    pos.push_back(mesh.vertices[mesh.boundary_vertices[b]].pos);
  }
  tree_ = KdTree(mesh.dim, std::move(pos));
}

Stencil select_stencil(const StencilSelector& sel, int facet, int candidates) {
  const PolyMesh& mesh = sel.mesh();
  const int d = mesh.dim;
  if (candidates < d + 1) fail("select_stencil: need at least d+1 candidates");
  const Facet& f = mesh.facets[facet];
  if (f.on_boundary()) fail("select_stencil: interior facets only");
  const Vec3& xf = f.centroid;

  std::vector<int> near = sel.nearest(xf, candidates);
  const int n = (int)near.size();
  if (n < d + 1) fail("select_stencil: not enough candidate points");
  std::vector<Vec3> pts(n);
  for (int i = 0; i < n; ++i) pts[i] = sel.position(near[i]);

  // All (d+1)-subsets keyed by the radius of their circumscribed sphere.
  struct Key {
    double radius;
    std::vector<int> subset;
  };
  std::vector<Key> keys;
  std::vector<int> idx(d + 1);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<Vec3> simplex(d + 1);
  do {
    for (int i = 0; i <= d; ++i) simplex[i] = pts[idx[i]];
    keys.push_back({circumradius(d, simplex), idx});
  } while (next_subset(idx, n));
  std::stable_sort(keys.begin(), keys.end(),
                   [](const Key& a, const Key& b) { return a.radius < b.radius; });

  auto make_stencil = [&](const std::vector<int>& subset, const std::vector<double>& alpha,
                          bool extrapolation) {
    Stencil s;
    s.facet = facet;
    s.is_extrapolation = extrapolation;
    for (int i = 0; i <= d; ++i)
      s.entries.push_back({sel.candidate(near[subset[i]]), alpha[i]});
    return s;
  };

  // Interpolation pass: first containing simplex in circumradius order.
  std::vector<double> alpha;
  for (const Key& key : keys) {
    if (!std::isfinite(key.radius)) break;  // degenerate tail
    for (int i = 0; i <= d; ++i) simplex[i] = pts[key.subset[i]];
    if (!try_barycentric(d, simplex, xf, alpha)) continue;
    bool inside = true;
    for (double a : alpha) inside &= (a >= -kContainTol && a <= 1 + kContainTol);
    if (inside) return make_stencil(key.subset, alpha, false);
  }

  // Extrapolation fallback: non-degenerate subset minimizing max |alpha|.
  double best = std::numeric_limits<double>::infinity();
  Stencil out;
  for (const Key& key : keys) {
    if (!std::isfinite(key.radius)) continue;
    for (int i = 0; i <= d; ++i) simplex[i] = pts[key.subset[i]];
    if (!try_barycentric(d, simplex, xf, alpha)) continue;
    double worst = 0;
    for (double a : alpha) worst = std::max(worst, std::abs(a));
    if (worst < best) {
      best = worst;
      out = make_stencil(key.subset, alpha, true);
    }
  }
  if (!std::isfinite(best))
    fail("select_stencil: no non-degenerate simplex among " + std::to_string(candidates) +
         " candidates near facet " + std::to_string(facet) +
         "; increase the candidate count");
  return out;
}

namespace {

std::vector<double> facet_p1_weights(const PolyMesh& mesh, const Facet& f, const Vec3& x) {
  std::vector<Vec3> pts;
  for (int v : f.vertices) pts.push_back(mesh.vertices[v].pos);
  if (mesh.dim == 2) {
    double len = (pts[1] - pts[0]).norm();
    double t = (x - pts[0]).dot((pts[1] - pts[0]).normalized()) / len;
    return {1.0 - t, t};
  }
  // Triangle in 3D: barycentric coordinates solved in the facet plane.
  Vec3 e1 = (pts[1] - pts[0]).normalized();
  Vec3 e2 = f.normal.cross(e1);
  auto project = [&](const Vec3& p) {
    Vec3 q = p - pts[0];
    return Vec3(q.dot(e1), q.dot(e2), 0.0);
  };
  std::vector<Vec3> flat = {project(pts[0]), project(pts[1]), project(pts[2])};
  return solve_barycentric(2, flat, project(x));
}

}  // namespace

ReconstructionMap build_reconstruction(const PolyMesh& mesh, int candidates) {
  if (candidates <= 0) candidates = mesh.dim == 2 ? 10 : 25;
  ReconstructionMap map;
  map.mesh = &mesh;
  map.candidate_count = candidates;
  map.stencils.resize(mesh.facets.size());

  StencilSelector sel(mesh);
  for (int fi = 0; fi < (int)mesh.facets.size(); ++fi) {
    const Facet& f = mesh.facets[fi];
    if (f.on_boundary()) {
      Stencil s;
      s.facet = fi;
      std::vector<double> alpha = facet_p1_weights(mesh, f, f.centroid);
      for (size_t i = 0; i < f.vertices.size(); ++i) {
        int b = mesh.vertex_to_boundary[f.vertices[i]];
        s.entries.push_back({{DofRef::BoundaryVertexDof, b}, alpha[i]});
      }
      map.stencils[fi] = std::move(s);
    } else {
      map.stencils[fi] = select_stencil(sel, fi, candidates);
      ++map.stats.interior_facets;
      if (map.stencils[fi].is_extrapolation) ++map.stats.extrapolating;
    }
  }
  return map;
}

Eigen::SparseMatrix<double> ReconstructionMap::scalar_matrix() const {
  std::vector<Eigen::Triplet<double>> trip;
  for (const auto& s : stencils)
    for (const auto& e : s.entries) trip.emplace_back(s.facet, scalar_index(e.dof), e.alpha);
  Eigen::SparseMatrix<double> R((int)stencils.size(), n_scalar_dofs());
  R.setFromTriplets(trip.begin(), trip.end());
  return R;
}

Eigen::VectorXd ReconstructionMap::facet_values(const Eigen::VectorXd& dofs) const {
  const int d = mesh->dim;
  Eigen::VectorXd vals = Eigen::VectorXd::Zero((int)stencils.size() * d);
  for (const auto& s : stencils)
    for (const auto& e : s.entries) {
      int p = scalar_index(e.dof);
      for (int k = 0; k < d; ++k) vals[s.facet * d + k] += e.alpha * dofs[p * d + k];
    }
  return vals;
}

Mat3 ReconstructionMap::cell_gradient(int cell, const Eigen::VectorXd& facet_vals) const {
  const int d = mesh->dim;
  Mat3 g = Mat3::Zero();
  const Cell& c = mesh->cells[cell];
  for (int fi : c.facets) {
    const Facet& f = mesh->facets[fi];
    Vec3 n = mesh->outward_normal(fi, cell);
    Vec3 v = Vec3::Zero();
    for (int k = 0; k < d; ++k) v[k] = facet_vals[fi * d + k];
    g += (f.area / c.volume) * v * n.transpose();
  }
  return g;
}

Mat3 ReconstructionMap::cell_strain(int cell, const Eigen::VectorXd& facet_vals) const {
  return sym(cell_gradient(cell, facet_vals));
}

std::vector<Mat3> ReconstructionMap::all_gradients(const Eigen::VectorXd& facet_vals) const {
  std::vector<Mat3> g(mesh->cells.size());
  for (int c = 0; c < (int)mesh->cells.size(); ++c) g[c] = cell_gradient(c, facet_vals);
  return g;
}

Vec3 ReconstructionMap::cell_p1_eval(const Eigen::VectorXd& dofs, int cell, const Vec3& x) const {
  const int d = mesh->dim;
  Mat3 g = cell_gradient(cell, facet_values(dofs));
  Vec3 u = Vec3::Zero();
  for (int k = 0; k < d; ++k) u[k] = dofs[cell * d + k];
  return u + g * (x - mesh->cells[cell].centroid);
}

Vec3 ReconstructionMap::boundary_facet_eval(const Eigen::VectorXd& dofs, int facet,
                                            const Vec3& x) const {
  const Facet& f = mesh->facets[facet];
  if (!f.on_boundary()) fail("boundary_facet_eval: facet is interior");
  const int d = mesh->dim;
  std::vector<double> alpha = facet_p1_weights(*mesh, f, x);
  Vec3 u = Vec3::Zero();
  for (size_t i = 0; i < f.vertices.size(); ++i) {
    int p = n_cells() + mesh->vertex_to_boundary[f.vertices[i]];
    for (int k = 0; k < d; ++k) u[k] += alpha[i] * dofs[p * d + k];
  }
  return u;
}

}  // namespace polydem
