#include "polydem/demforces.hpp"

#include <random>

namespace polydem {

namespace {

inline void add_vec(Eigen::VectorXd& out, int slot, int d, const Vec3& v, double w = 1.0) {
  for (int k = 0; k < d; ++k) out[slot * d + k] += w * v[k];
}

}  // namespace

Vec3 elastic_flux(const Operators& ops, int facet, const std::vector<Mat3>& sigma) {
  const Facet& f = ops.mesh->facets[facet];
  if (f.on_boundary()) return f.area * (sigma[f.cell_minus] * f.normal);
  Mat3 avg = 0.5 * (sigma[f.cell_minus] + sigma[f.cell_plus]);
  return f.area * (avg * f.normal);
}

ForceBreakdown particle_forces(const Operators& ops, const Eigen::VectorXd& u,
                               const std::vector<Mat3>& sigma) {
  const PolyMesh& mesh = *ops.mesh;
  const ReconstructionMap& recon = *ops.recon;
  const int d = ops.dofs.d;
  const int n = ops.dofs.n_dofs();

  ForceBreakdown out;
  out.ep = Eigen::VectorXd::Zero(n);
  out.pen1 = Eigen::VectorXd::Zero(n);
  out.pen2 = Eigen::VectorXd::Zero(n);
  out.corr = Eigen::VectorXd::Zero(n);

  Eigen::VectorXd jumps = ops.J * u;
  auto jump_of = [&](int fi) {
    Vec3 j = Vec3::Zero();
    for (int k = 0; k < d; ++k) j[k] = jumps[fi * d + k];
    return j;
  };

  for (int fi = 0; fi < (int)mesh.facets.size(); ++fi) {
    const Facet& f = mesh.facets[fi];
    const double w = ops.penalty_weight[fi];
    const Vec3 j = jump_of(fi);
    const Vec3 flux = elastic_flux(ops, fi, sigma);

    if (!f.on_boundary()) {
      // action-reaction pair of the average-stress flux
      add_vec(out.ep, f.cell_minus, d, flux, +1.0);
      add_vec(out.ep, f.cell_plus, d, flux, -1.0);
      add_vec(out.pen1, f.cell_minus, d, j, -w);
      add_vec(out.pen1, f.cell_plus, d, j, +w);
      // neglected term |F| ([Sigma] n) . ({v} - R(v))
      Vec3 t2 = f.area * ((sigma[f.cell_minus] - sigma[f.cell_plus]) * f.normal);
      add_vec(out.corr, f.cell_minus, d, t2, 0.5);
      add_vec(out.corr, f.cell_plus, d, t2, 0.5);
      for (const auto& e : recon.stencils[fi].entries)
        add_vec(out.corr, recon.scalar_index(e.dof), d, t2, -e.alpha);
    } else {
      // the cell side of every boundary facet plus the vertex spread; the
      // stored boundary jump is (vertex interpolation - cell), so the exact
      // gradient of -s_h puts +w j on the cell and -alpha w j on the vertices
      add_vec(out.ep, f.cell_minus, d, flux, +1.0);
      add_vec(out.pen1, f.cell_minus, d, j, +w);
      for (const auto& e : recon.stencils[fi].entries) {
        int slot = recon.scalar_index(e.dof);
        add_vec(out.ep, slot, d, flux, -e.alpha);
        add_vec(out.pen1, slot, d, j, -w * e.alpha);
      }
    }
  }

  // Stencil-mediated penalty: gradient contributions of the cell P1
  // reconstructions inside every jump touching the cell.
  for (int c = 0; c < (int)mesh.cells.size(); ++c) {
    const Cell& cell = mesh.cells[c];
    for (int fp : cell.facets) {
      const Facet& fjump = mesh.facets[fp];
      double coef = fjump.on_boundary() ? -1.0 : (fjump.cell_minus == c ? +1.0 : -1.0);
      Vec3 wj = ops.penalty_weight[fp] * jump_of(fp);
      for (int fs : cell.facets) {
        const Facet& fsten = mesh.facets[fs];
        double geom = fsten.area / cell.volume *
                      mesh.outward_normal(fs, c).dot(fjump.centroid - cell.centroid);
        for (const auto& e : recon.stencils[fs].entries)
          add_vec(out.pen2, recon.scalar_index(e.dof), d, wj, -coef * geom * e.alpha);
      }
    }
  }
  return out;
}

ForceBalanceReport force_balance_check(const Operators& ops, const Eigen::VectorXd& u,
                                       const std::vector<Mat3>& sigma, const ConstraintSet& bc,
                                       int probes, unsigned seed) {
  ForceBreakdown forces = particle_forces(ops, u, sigma);
  Eigen::VectorXd f_int = ops.internal_force(u, sigma);
  Eigen::VectorXd with = bc.restrict_free(forces.total(true) + f_int);
  Eigen::VectorXd without = bc.restrict_free(forces.total(false) + f_int);
  Eigen::VectorXd f_free = bc.restrict_free(f_int);

  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1, 1);
  ForceBalanceReport rep;
  double scale = std::max(f_free.norm(), 1e-300);
  for (int p = 0; p < probes; ++p) {
    Eigen::VectorXd v(f_free.size());
    for (int i = 0; i < v.size(); ++i) v[i] = dist(rng);
    v.normalize();
    rep.defect_with_correction =
        std::max(rep.defect_with_correction, std::abs(with.dot(v)) / scale);
    rep.defect_without_correction =
        std::max(rep.defect_without_correction, std::abs(without.dot(v)) / scale);
  }
  return rep;
}

}  // namespace polydem
