#include "polydem/operators.hpp"

#include <algorithm>
#include <set>

namespace polydem {

namespace {

using Triplet = Eigen::Triplet<double>;

SpMat build_R(const ReconstructionMap& recon, const DofMap& dofs) {
  const int d = dofs.d;
  std::vector<Triplet> trip;
  for (const auto& s : recon.stencils)
    for (const auto& e : s.entries) {
      int p = recon.scalar_index(e.dof);
      for (int k = 0; k < d; ++k) trip.emplace_back(s.facet * d + k, p * d + k, e.alpha);
    }
  SpMat R((int)recon.stencils.size() * d, dofs.n_dofs());
  R.setFromTriplets(trip.begin(), trip.end());
  return R;
}

SpMat build_E(const PolyMesh& mesh) {
  const int d = mesh.dim;
  std::vector<Triplet> trip;
  for (int c = 0; c < (int)mesh.cells.size(); ++c) {
    const Cell& cell = mesh.cells[c];
    for (int fi : cell.facets) {
      const Facet& f = mesh.facets[fi];
      Vec3 n = mesh.outward_normal(fi, c);
      double w = f.area / cell.volume;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          // eps_ij picks 0.5 (v_i n_j + v_j n_i)
          trip.emplace_back(c * d * d + i * d + j, fi * d + i, 0.5 * w * n[j]);
          trip.emplace_back(c * d * d + i * d + j, fi * d + j, 0.5 * w * n[i]);
        }
    }
  }
  SpMat E((int)mesh.cells.size() * d * d, (int)mesh.facets.size() * d);
  E.setFromTriplets(trip.begin(), trip.end());
  return E;
}

// Jump of the cellwise P1 reconstructions at the facet barycentre:
// interior rows R(v)_{c-}(x_F) - R(v)_{c+}(x_F), boundary rows
// Rb(v)(x_F) - R(v)_{c-}(x_F).
SpMat build_J(const PolyMesh& mesh, const ReconstructionMap& recon, const DofMap& dofs) {
  const int d = mesh.dim;
  std::vector<Triplet> trip;

  auto add_cell_side = [&](int row_facet, int c, double sign) {
    const Cell& cell = mesh.cells[c];
    const Vec3 xf = mesh.facets[row_facet].centroid;
    for (int k = 0; k < d; ++k)
      trip.emplace_back(row_facet * d + k, dofs.cell_dof(c, k), sign);
    for (int fp : cell.facets) {
      // gradient contribution (|F'|/|c|) (n_{F',c} . (x_F - x_c)) R(v)_{F'}
      double w = mesh.facets[fp].area / cell.volume *
                 mesh.outward_normal(fp, c).dot(xf - cell.centroid);
      for (const auto& e : recon.stencils[fp].entries) {
        int p = recon.scalar_index(e.dof);
        for (int k = 0; k < d; ++k)
          trip.emplace_back(row_facet * d + k, p * d + k, sign * w * e.alpha);
      }
    }
  };

  for (int fi = 0; fi < (int)mesh.facets.size(); ++fi) {
    const Facet& f = mesh.facets[fi];
    if (f.on_boundary()) {
      for (const auto& e : recon.stencils[fi].entries) {
        int p = recon.scalar_index(e.dof);
        for (int k = 0; k < d; ++k) trip.emplace_back(fi * d + k, p * d + k, e.alpha);
      }
      add_cell_side(fi, f.cell_minus, -1.0);
    } else {
      add_cell_side(fi, f.cell_minus, +1.0);
      add_cell_side(fi, f.cell_plus, -1.0);
    }
  }
  SpMat J((int)mesh.facets.size() * d, dofs.n_dofs());
  J.setFromTriplets(trip.begin(), trip.end());
  return J;
}

}  // namespace

Operators build_operators(const PolyMesh& mesh, const ReconstructionMap& recon, double eta) {
  Operators ops{.mesh = &mesh, .recon = &recon, .dofs = DofMap(mesh), .eta = eta};
  const int d = mesh.dim;
  ops.R = build_R(recon, ops.dofs);
  ops.E = build_E(mesh);
  ops.ER = ops.E * ops.R;
  ops.J = build_J(mesh, recon, ops.dofs);

  ops.penalty_weight.resize((int)mesh.facets.size());
  std::vector<Triplet> dtrip;
  for (int fi = 0; fi < (int)mesh.facets.size(); ++fi) {
    const Facet& f = mesh.facets[fi];
    ops.penalty_weight[fi] = eta * f.area / f.diameter;
    for (int k = 0; k < d; ++k)
      dtrip.emplace_back(fi * d + k, fi * d + k, ops.penalty_weight[fi]);
  }
  SpMat D((int)mesh.facets.size() * d, (int)mesh.facets.size() * d);
  D.setFromTriplets(dtrip.begin(), dtrip.end());
  ops.S = SpMat(ops.J.transpose()) * D * ops.J;
  return ops;
}

std::vector<Mat3> Operators::cell_strains(const Eigen::VectorXd& u) const {
  const int d = dofs.d;
  Eigen::VectorXd e = ER * u;
  std::vector<Mat3> out(mesh->cells.size(), Mat3::Zero());
  for (int c = 0; c < (int)mesh->cells.size(); ++c)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) out[c](i, j) = e[c * d * d + i * d + j];
  return out;
}

Eigen::VectorXd Operators::internal_force(const Eigen::VectorXd& u,
                                          const std::vector<Mat3>& sigma) const {
  const int d = dofs.d;
  Eigen::VectorXd sv((int)mesh->cells.size() * d * d);
  for (int c = 0; c < (int)mesh->cells.size(); ++c)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        sv[c * d * d + i * d + j] = mesh->cells[c].volume * sigma[c](i, j);
  return ER.transpose() * sv + S * u;
}

namespace {

SpMat assemble_with_blocks(const Operators& ops,
                           const std::function<Eigen::MatrixXd(int)>& block) {
  const int d = ops.dofs.d;
  const int nc = (int)ops.mesh->cells.size();
  std::vector<Triplet> trip;
  for (int c = 0; c < nc; ++c) {
    Eigen::MatrixXd b = ops.mesh->cells[c].volume * block(c);
    for (int i = 0; i < d * d; ++i)
      for (int j = 0; j < d * d; ++j)
        if (b(i, j) != 0) trip.emplace_back(c * d * d + i, c * d * d + j, b(i, j));
  }
  SpMat C(nc * d * d, nc * d * d);
  C.setFromTriplets(trip.begin(), trip.end());
  SpMat ERt = ops.ER.transpose();
  SpMat K = ERt * C * ops.ER + ops.S;
  K.makeCompressed();
  return K;
}

}  // namespace

SpMat assemble_stiffness(const Operators& ops, const ElasticTensor& c) {
  if (ops.eta <= 0) fail("assemble_stiffness: penalty parameter must be positive");
  Eigen::MatrixXd cm = c.matrix(ops.dofs.d);
  return assemble_with_blocks(ops, [&](int) { return cm; });
}

SpMat assemble_stiffness(const Operators& ops, const std::vector<Mat9>& cell_moduli) {
  if (ops.eta <= 0) fail("assemble_stiffness: penalty parameter must be positive");
  return assemble_with_blocks(
      ops, [&](int c) { return restrict_tangent(cell_moduli[c], ops.dofs.d); });
}

Eigen::VectorXd apply_tangent(const Operators& ops, const std::vector<Mat9>& cell_moduli,
                              const Eigen::VectorXd& x) {
  const int d = ops.dofs.d;
  Eigen::VectorXd e = ops.ER * x;
  for (int c = 0; c < (int)ops.mesh->cells.size(); ++c) {
    Eigen::MatrixXd b = restrict_tangent(cell_moduli[c], d);
    e.segment(c * d * d, d * d) =
        ops.mesh->cells[c].volume * (b * e.segment(c * d * d, d * d));
  }
  return ops.ER.transpose() * e + ops.S * x;
}

namespace {

// Corner fragment of cell c at vertex v: the polytope cut off by the incident
// edge midpoints (the dual quads of the mass figure). Always a strict subset
// of the cell, so the cell remainder stays positive.
double corner_fragment(const PolyMesh& mesh, int c, int v) {
  const Cell& cell = mesh.cells[c];
  const Vec3& z = mesh.vertices[v].pos;
  if (mesh.dim == 2) {
    std::vector<Vec3> mids;
    for (int fi : cell.facets) {
      const Facet& f = mesh.facets[fi];
      if (f.vertices[0] == v || f.vertices[1] == v) mids.push_back(f.centroid);
    }
    if (mids.size() != 2) fail("lump_mass: vertex with unexpected edge count");
    return triangle_area(z, mids[0], mids[1]);
  }
  // 3D: unique cell edges at v, ordered by the facet cycle around the vertex.
  std::map<int, std::vector<int>> adj;  // neighbour endpoint -> endpoints sharing a facet
  for (int fi : cell.facets) {
    const auto& loop = mesh.facets[fi].vertices;
    int n = (int)loop.size();
    for (int i = 0; i < n; ++i) {
      if (loop[i] != v) continue;
      int prev = loop[(i + n - 1) % n], next = loop[(i + 1) % n];
      adj[prev].push_back(next);
      adj[next].push_back(prev);
    }
  }
  if (adj.size() < 3) fail("lump_mass: vertex with fewer than three cell edges");
  std::vector<int> cycle;
  int start = adj.begin()->first;
  int prev = -1, cur = start;
  do {
    cycle.push_back(cur);
    const auto& nb = adj[cur];
    if (nb.size() != 2) fail("lump_mass: vertex cone is not a simple cycle");
    int nxt = (nb[0] == prev) ? nb[1] : nb[0];
    prev = cur;
    cur = nxt;
  } while (cur != start && cycle.size() <= adj.size());
  if (cur != start || cycle.size() != adj.size())
    fail("lump_mass: vertex cone is not a simple cycle");
  std::vector<Vec3> mids;
  for (int o : cycle) mids.push_back(0.5 * (z + mesh.vertices[o].pos));
  double vol = 0;
  for (size_t i = 1; i + 1 < mids.size(); ++i) vol += tet_volume(z, mids[0], mids[i], mids[i + 1]);
  return vol;
}

}  // namespace

Eigen::VectorXd lump_mass(const PolyMesh& mesh, double rho) {
  if (rho <= 0) fail("lump_mass: density must be positive");
  const int d = mesh.dim;
  DofMap dofs(mesh);
  Eigen::VectorXd slot_mass = Eigen::VectorXd::Zero(dofs.n_slots());
  for (int c = 0; c < (int)mesh.cells.size(); ++c) slot_mass[c] = rho * mesh.cells[c].volume;

  for (int c = 0; c < (int)mesh.cells.size(); ++c) {
    std::set<int> bverts;
    for (int fi : mesh.cells[c].facets)
      for (int v : mesh.facets[fi].vertices)
        if (mesh.vertices[v].on_boundary) bverts.insert(v);
    for (int v : bverts) {
      double frag = corner_fragment(mesh, c, v);
      if (frag <= 0) fail("lump_mass: non-positive dual fragment (degenerate cell)");
      slot_mass[dofs.bvertex_slot(mesh.vertex_to_boundary[v])] += rho * frag;
      slot_mass[c] -= rho * frag;
    }
  }
  if (slot_mass.minCoeff() <= 0) fail("lump_mass: non-positive lumped mass entry");

  Eigen::VectorXd m(dofs.n_dofs());
  for (int p = 0; p < dofs.n_slots(); ++p)
    for (int k = 0; k < d; ++k) m[p * d + k] = slot_mass[p];
  return m;
}

Eigen::VectorXd assemble_load(const PolyMesh& mesh, const ReconstructionMap& recon,
                              const DofMap& dofs, const VolumetricLoad& f,
                              const TractionLoad& g_neumann,
                              const std::vector<std::string>& neumann_tags, double t) {
  const int d = dofs.d;
  Eigen::VectorXd l = Eigen::VectorXd::Zero(dofs.n_dofs());
  if (f)
    for (int c = 0; c < (int)mesh.cells.size(); ++c) {
      Vec3 fc = f(mesh.cells[c].centroid, t) * mesh.cells[c].volume;
      for (int k = 0; k < d; ++k) l[dofs.cell_dof(c, k)] += fc[k];
    }
  if (g_neumann) {
    for (int fi = 0; fi < (int)mesh.facets.size(); ++fi) {
      const Facet& fa = mesh.facets[fi];
      if (!fa.on_boundary()) continue;
      if (std::find(neumann_tags.begin(), neumann_tags.end(), fa.tag) == neumann_tags.end())
        continue;
      Vec3 g = g_neumann(fa.centroid, t, fa.tag) * fa.area;
      for (const auto& e : recon.stencils[fi].entries) {
        if (e.dof.kind != DofRef::BoundaryVertexDof)
          fail("assemble_load: boundary stencil with a cell contributor");
        for (int k = 0; k < d; ++k) l[dofs.bvertex_dof(e.dof.index, k)] += e.alpha * g[k];
      }
    }
  }
  return l;
}

}  // namespace polydem
