#include "polydem/errors.hpp"

#include <cmath>

namespace polydem {

namespace {

// Degree-2 rules on simplices.
void triangle_rule(const Vec3& a, const Vec3& b, const Vec3& c,
                   const std::function<void(const Vec3&, double)>& fn) {
  double area = triangle_area(a, b, c);
  fn(0.5 * (a + b), area / 3);
  fn(0.5 * (b + c), area / 3);
  fn(0.5 * (c + a), area / 3);
}

void tet_rule(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d,
              const std::function<void(const Vec3&, double)>& fn) {
  double vol = tet_volume(a, b, c, d);
  const double alpha = 0.5854101966249685;  // (5 + 3 sqrt(5)) / 20
  const double beta = 0.1381966011250105;   // (5 - sqrt(5)) / 20
  const Vec3 pts[4] = {a, b, c, d};
  for (int i = 0; i < 4; ++i) {
    Vec3 q = Vec3::Zero();
    for (int j = 0; j < 4; ++j) q += (j == i ? alpha : beta) * pts[j];
    fn(q, vol / 4);
  }
}

}  // namespace

void cell_quadrature(const PolyMesh& mesh, int cell,
                     const std::function<void(const Vec3&, double)>& fn) {
  const Cell& c = mesh.cells[cell];
  if (mesh.dim == 2) {
    auto loop = mesh.cell_vertex_loop(cell);
    for (size_t i = 0; i < loop.size(); ++i)
      triangle_rule(c.centroid, mesh.vertices[loop[i]].pos,
                    mesh.vertices[loop[(i + 1) % loop.size()]].pos, fn);
    return;
  }
  for (int fi : c.facets) {
    const Facet& f = mesh.facets[fi];
    for (size_t i = 1; i + 1 < f.vertices.size(); ++i)
      tet_rule(c.centroid, mesh.vertices[f.vertices[0]].pos, mesh.vertices[f.vertices[i]].pos,
               mesh.vertices[f.vertices[i + 1]].pos, fn);
  }
}

double l2_error(const PolyMesh& mesh, const ReconstructionMap& recon, const Eigen::VectorXd& u,
                const std::function<Vec3(const Vec3&)>& exact) {
  const int d = mesh.dim;
  Eigen::VectorXd facet_vals = recon.facet_values(u);
  double err2 = 0;
  for (int c = 0; c < (int)mesh.cells.size(); ++c) {
    Mat3 g = recon.cell_gradient(c, facet_vals);
    Vec3 uc = Vec3::Zero();
    for (int k = 0; k < d; ++k) uc[k] = u[c * d + k];
    const Vec3 xc = mesh.cells[c].centroid;
    cell_quadrature(mesh, c, [&](const Vec3& x, double w) {
      Vec3 diff = exact(x) - (uc + g * (x - xc));
      err2 += w * diff.squaredNorm();
    });
  }
  return std::sqrt(err2);
}

Eigen::VectorXd interpolate_dofs(const DofMap& dofs, const std::function<Vec3(const Vec3&)>& fn) {
  Eigen::VectorXd u(dofs.n_dofs());
  for (int p = 0; p < dofs.n_slots(); ++p) {
    Vec3 v = fn(dofs.slot_position(p));
    for (int k = 0; k < dofs.d; ++k) u[p * dofs.d + k] = v[k];
  }
  return u;
}

double energy_error(const SpMat& k_elastic, const Eigen::VectorXd& e) {
  return 0.5 * e.dot(k_elastic * e);
}

double convergence_order(double e1, double n1, double e2, double n2, int d) {
  if (e1 <= 0 || e2 <= 0) fail("convergence_order: errors must be positive");
  if (n1 <= 0 || n2 <= 0 || n1 == n2) fail("convergence_order: invalid dof counts");
  return d * std::log(e1 / e2) / std::log(n2 / n1);
}

}  // namespace polydem
