#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polydem/meshgen.hpp"
#include "polydem/operators.hpp"
#include "polydem/solver.hpp"

#include <random>

using namespace polydem;

namespace {

Material steel_like() {
  Material m;
  m.E = 70e3;
  m.nu = 0.3;
  m.rho = 1;
  m.sigma0 = 250;
  return m;
}

Eigen::VectorXd affine_dofs(const DofMap& dofs, const Mat3& A, const Vec3& b) {
  Eigen::VectorXd u(dofs.n_dofs());
  for (int p = 0; p < dofs.n_slots(); ++p) {
    Vec3 v = A * dofs.slot_position(p) + b;
    for (int k = 0; k < dofs.d; ++k) u[p * dofs.d + k] = v[k];
  }
  return u;
}

struct Setup {
  PolyMesh mesh;
  ReconstructionMap recon;
  Operators ops;
};

Setup make_setup(PolyMesh mesh, double eta, int candidates = 0) {
  Setup s;
  s.mesh = std::move(mesh);
  s.recon = build_reconstruction(s.mesh, candidates);
  s.ops = build_operators(s.mesh, s.recon, eta);
  return s;
}

}  // namespace

TEST_CASE("stiffness annihilates rigid modes") {
  Material m = steel_like();
  auto s = make_setup(make_box2d({.nx = 4, .ny = 3, .distort = 0.2, .seed = 9}), m.mu());
  SpMat K = assemble_stiffness(s.ops, ElasticTensor::from_material(m));

  CHECK((Eigen::MatrixXd(K) - Eigen::MatrixXd(K).transpose()).norm() <
        1e-10 * Eigen::MatrixXd(K).norm());

  double knorm = Eigen::MatrixXd(K).norm();
  for (const Vec3& t : {Vec3(1, 0, 0), Vec3(0, 1, 0)}) {
    Eigen::VectorXd u = affine_dofs(s.ops.dofs, Mat3::Zero(), t);
    CHECK((K * u).norm() < 1e-8 * knorm * u.norm());
  }
  Mat3 W = Mat3::Zero();
  W(0, 1) = 1;
  W(1, 0) = -1;  // linearized rotation
  Eigen::VectorXd u = affine_dofs(s.ops.dofs, W, Vec3::Zero());
  CHECK((K * u).norm() < 1e-8 * knorm * u.norm());
}

TEST_CASE("pure Neumann kernel is exactly the rigid modes") {
  Material m = steel_like();
  SUBCASE("2D") {
    auto s = make_setup(make_box2d({.nx = 2, .ny = 2, .distort = 0.15, .seed = 4}), m.mu());
    SpMat K = assemble_stiffness(s.ops, ElasticTensor::from_material(m));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig{Eigen::MatrixXd(K)};
    double scale = eig.eigenvalues().maxCoeff();
    int nearly_zero = (eig.eigenvalues().array() < 1e-10 * scale).count();
    CHECK(nearly_zero == 3);  // d(d+1)/2 for d=2
  }
  SUBCASE("3D") {
    // One single hex (6 tets) is degenerate: the facet-barycentre jump
    // sampling admits extra zero-energy modes there. Any larger mesh has
    // exactly the rigid modes.
    auto s = make_setup(make_box3d({.nx = 2, .ny = 2, .nz = 1}), m.mu());
    SpMat K = assemble_stiffness(s.ops, ElasticTensor::from_material(m));
    REQUIRE(K.rows() <= 200);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig{Eigen::MatrixXd(K)};
    double scale = eig.eigenvalues().maxCoeff();
    int nearly_zero = (eig.eigenvalues().array() < 1e-10 * scale).count();
    CHECK(nearly_zero == 6);  // d(d+1)/2 for d=3
  }
  SUBCASE("3D cylinder slice") {
    auto s = make_setup(make_cylinder3d({.nr = 1, .nt = 6, .nz = 1}), m.mu());
    SpMat K = assemble_stiffness(s.ops, ElasticTensor::from_material(m));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig{Eigen::MatrixXd(K)};
    double scale = eig.eigenvalues().maxCoeff();
    int nearly_zero = (eig.eigenvalues().array() < 1e-10 * scale).count();
    CHECK(nearly_zero == 6);
  }
}

TEST_CASE("reduced stiffness is positive definite with one Dirichlet edge") {
  Material m = steel_like();
  auto s = make_setup(make_box2d({.nx = 2, .ny = 2}), m.mu());
  SpMat K = assemble_stiffness(s.ops, ElasticTensor::from_material(m));
  ConstraintSet bc(s.ops.dofs);
  for (int fi = 0; fi < (int)s.mesh.facets.size(); ++fi) {
    const Facet& f = s.mesh.facets[fi];
    if (f.on_boundary() && f.tag == "left")
      for (int v : f.vertices) bc.add_vector(v, [](double) { return Vec3::Zero(); });
  }
  bc.finalize();
  auto red = apply_dirichlet(K, Eigen::VectorXd::Zero(K.rows()), bc, 0.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig{Eigen::MatrixXd(red.K)};
  CHECK(eig.eigenvalues().minCoeff() > 0);
}

TEST_CASE("elastic block is linear in the material") {
  Material m = steel_like();
  auto s = make_setup(make_box2d({.nx = 3, .ny = 2}), m.mu());
  ElasticTensor c1 = ElasticTensor::from_material(m);
  Material m2 = m;
  m2.E *= 2;
  ElasticTensor c2 = ElasticTensor::from_material(m2);
  SpMat K1 = assemble_stiffness(s.ops, c1);
  SpMat K2 = assemble_stiffness(s.ops, c2);
  Eigen::MatrixXd lhs = Eigen::MatrixXd(K2) - Eigen::MatrixXd(s.ops.S);
  Eigen::MatrixXd rhs = 2.0 * (Eigen::MatrixXd(K1) - Eigen::MatrixXd(s.ops.S));
  CHECK((lhs - rhs).norm() < 1e-10 * lhs.norm());
}

TEST_CASE("assemble_stiffness rejects non-positive penalty") {
  Material m = steel_like();
  auto s = make_setup(make_box2d({.nx = 2, .ny = 2}), 0.0);
  CHECK_THROWS_AS(assemble_stiffness(s.ops, ElasticTensor::from_material(m)), Error);
}

TEST_CASE("jump operator") {
  SUBCASE("affine fields have no jumps") {
    auto s = make_setup(make_box2d({.nx = 4, .ny = 3, .distort = 0.2, .seed = 2}), 1.0);
    Mat3 A = Mat3::Zero();
    A(0, 0) = 0.3;
    A(0, 1) = -0.7;
    A(1, 1) = 0.1;
    Eigen::VectorXd u = affine_dofs(s.ops.dofs, A, Vec3(0.2, 0.5, 0));
    CHECK((s.ops.J * u).norm() < 1e-10);
    CHECK(u.dot(s.ops.S * u) < 1e-16 * u.squaredNorm());
  }
  SUBCASE("two equal constant cells, zero elsewhere: zero interior jump") {
    auto s = make_setup(make_box2d({.nx = 2, .ny = 1, .lx = 2.0}), 1.0);
    Eigen::VectorXd u = Eigen::VectorXd::Zero(s.ops.dofs.n_dofs());
    u[0] = u[2] = 1.0;  // x component of both cells
    int interior = -1;
    for (int fi = 0; fi < (int)s.mesh.facets.size(); ++fi)
      if (!s.mesh.facets[fi].on_boundary()) interior = fi;
    Eigen::VectorXd j = s.ops.J * u;
    CHECK(std::abs(j[interior * 2]) < 1e-14);
    CHECK(std::abs(j[interior * 2 + 1]) < 1e-14);
  }
  SUBCASE("distinct constant cells on the two-square mesh jump by a-b") {
    auto s = make_setup(make_box2d({.nx = 2, .ny = 1, .lx = 2.0}), 1.0);
    Eigen::VectorXd u = Eigen::VectorXd::Zero(s.ops.dofs.n_dofs());
    double a = 0.8, b = -0.5;
    u[s.ops.dofs.cell_dof(0, 0)] = a;
    u[s.ops.dofs.cell_dof(1, 0)] = b;
    int interior = -1;
    for (int fi = 0; fi < (int)s.mesh.facets.size(); ++fi)
      if (!s.mesh.facets[fi].on_boundary()) interior = fi;
    Eigen::VectorXd j = s.ops.J * u;
    double expect = s.mesh.facets[interior].cell_minus == 0 ? a - b : b - a;
    CHECK(j[interior * 2] == doctest::Approx(expect).epsilon(1e-12));
  }
  SUBCASE("rows agree with direct reconstruction evaluation") {
    auto s = make_setup(make_box2d({.nx = 3, .ny = 3, .distort = 0.15, .seed = 12}), 1.0);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> dist(-1, 1);
    Eigen::VectorXd u(s.ops.dofs.n_dofs());
    for (int i = 0; i < u.size(); ++i) u[i] = dist(rng);
    Eigen::VectorXd j = s.ops.J * u;
    for (int fi = 0; fi < (int)s.mesh.facets.size(); ++fi) {
      const Facet& f = s.mesh.facets[fi];
      Vec3 left = s.recon.cell_p1_eval(u, f.cell_minus, f.centroid);
      Vec3 expect;
      if (f.on_boundary())
        expect = s.recon.boundary_facet_eval(u, fi, f.centroid) - left;
      else
        expect = left - s.recon.cell_p1_eval(u, f.cell_plus, f.centroid);
      for (int k = 0; k < 2; ++k)
        CHECK(j[fi * 2 + k] == doctest::Approx(expect[k]).epsilon(1e-11));
    }
  }
}

TEST_CASE("penalty energy is non-negative and vanishes only without jumps") {
  auto s = make_setup(make_box2d({.nx = 3, .ny = 2, .distort = 0.1, .seed = 5}), 2.5);
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> dist(-1, 1);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd u(s.ops.dofs.n_dofs());
    for (int i = 0; i < u.size(); ++i) u[i] = dist(rng);
    double energy = u.dot(s.ops.S * u);
    CHECK(energy >= 0);
    double jumps = (s.ops.J * u).squaredNorm();
    if (jumps > 1e-12) CHECK(energy > 0);
  }
}

TEST_CASE("lumped mass") {
  SUBCASE("interior cell of a 3x3 grid keeps its full mass") {
    PolyMesh mesh = make_box2d({.nx = 3, .ny = 3});
    Eigen::VectorXd m = lump_mass(mesh, 1.0);
    // centre cell: all four vertices interior
    int centre = -1;
    for (int c = 0; c < 9; ++c)
      if ((mesh.cells[c].centroid - Vec3(0.5, 0.5, 0)).norm() < 1e-12) centre = c;
    CHECK(m[centre * 2] == doctest::Approx(1.0 / 9).epsilon(1e-12));
  }
  SUBCASE("partition of the total mass") {
    for (double rho : {1.0, 7.3}) {
      PolyMesh mesh2 = make_box2d({.nx = 4, .ny = 3, .distort = 0.2, .seed = 6});
      Eigen::VectorXd m2 = lump_mass(mesh2, rho);
      double total = 0;
      for (int p = 0; p < m2.size() / 2; ++p) total += m2[p * 2];
      CHECK(total == doctest::Approx(rho * mesh2.total_volume()).epsilon(1e-10));

      PolyMesh mesh3 = make_box3d({.nx = 2, .ny = 2, .nz = 1});
      Eigen::VectorXd m3 = lump_mass(mesh3, rho);
      total = 0;
      for (int p = 0; p < m3.size() / 3; ++p) total += m3[p * 3];
      CHECK(total == doctest::Approx(rho * mesh3.total_volume()).epsilon(1e-10));
      CHECK(m3.minCoeff() > 0);
    }
  }
  SUBCASE("single unit square: four equal vertex fragments of 1/8") {
    PolyMesh mesh = make_box2d({.nx = 1, .ny = 1});
    Eigen::VectorXd m = lump_mass(mesh, 1.0);
    for (int b = 0; b < 4; ++b)
      CHECK(m[(1 + b) * 2] == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(m[0] == doctest::Approx(1.0 - 4 * 0.125));  // cell keeps the remainder
  }
}

TEST_CASE("load assembly") {
  auto s = make_setup(make_box2d({.nx = 2, .ny = 2}), 1.0);
  const DofMap& dofs = s.ops.dofs;

  SUBCASE("no loads give the zero vector") {
    Eigen::VectorXd l = assemble_load(s.mesh, s.recon, dofs, nullptr, nullptr, {}, 0.0);
    CHECK(l.norm() == 0);
  }
  SUBCASE("constant traction on one edge splits between its vertices") {
    Vec3 g(2.0, -1.0, 0);
    int facet = -1;
    for (int fi = 0; fi < (int)s.mesh.facets.size(); ++fi)
      if (s.mesh.facets[fi].on_boundary() && s.mesh.facets[fi].tag == "right" &&
          std::abs(s.mesh.facets[fi].centroid.y() - 0.25) < 1e-12)
        facet = fi;
    REQUIRE(facet >= 0);
    // tag only this facet as loaded by giving it a unique tag
    PolyMesh mesh = s.mesh;
    mesh.facets[facet].tag = "loaded";
    ReconstructionMap recon = build_reconstruction(mesh, 8);
    Eigen::VectorXd l = assemble_load(
        mesh, recon, dofs, nullptr,
        [&](const Vec3&, double, const std::string&) { return g; }, {"loaded"}, 0.0);
    double l0 = mesh.facets[facet].area;
    int nz = 0;
    for (int b = 0; b < dofs.n_bvert; ++b) {
      Eigen::Vector2d v(l[dofs.bvertex_dof(b, 0)], l[dofs.bvertex_dof(b, 1)]);
      if (v.norm() > 0) {
        ++nz;
        CHECK(v.x() == doctest::Approx(g.x() * l0 / 2));
        CHECK(v.y() == doctest::Approx(g.y() * l0 / 2));
      }
    }
    CHECK(nz == 2);
  }
  SUBCASE("body force integrates to b |Omega| over cell dofs") {
    Vec3 b(1.5, -0.5, 0);
    Eigen::VectorXd l = assemble_load(
        s.mesh, s.recon, dofs, [&](const Vec3&, double) { return b; }, nullptr, {}, 0.0);
    Vec3 sum = Vec3::Zero();
    for (int c = 0; c < dofs.n_cells; ++c) {
      sum.x() += l[dofs.cell_dof(c, 0)];
      sum.y() += l[dofs.cell_dof(c, 1)];
    }
    CHECK(sum.x() == doctest::Approx(b.x() * s.mesh.total_volume()));
    CHECK(sum.y() == doctest::Approx(b.y() * s.mesh.total_volume()));
  }
}

TEST_CASE("dirichlet reduction") {
  Material m = steel_like();
  auto s = make_setup(make_box2d({.nx = 3, .ny = 3, .distort = 0.2, .seed = 21}), m.mu());
  SpMat K = assemble_stiffness(s.ops, ElasticTensor::from_material(m));

  SUBCASE("homogeneous values leave the rhs restriction unchanged") {
    ConstraintSet bc(s.ops.dofs);
    for (int v : s.mesh.boundary_vertices)
      bc.add_vector(v, [](double) { return Vec3::Zero(); });
    bc.finalize();
    Eigen::VectorXd rhs = Eigen::VectorXd::Random(K.rows());
    auto red = apply_dirichlet(K, rhs, bc, 0.0);
    CHECK((red.rhs - bc.restrict_free(rhs)).norm() == 0);
  }
  SUBCASE("affine patch test") {
    Mat3 A = Mat3::Zero();
    A(0, 0) = 0.4;
    A(0, 1) = 0.3;
    A(1, 0) = -0.2;
    A(1, 1) = 0.25;
    Vec3 b(0.05, -0.03, 0);
    ConstraintSet bc(s.ops.dofs);
    for (int v : s.mesh.boundary_vertices) {
      Vec3 pos = s.mesh.vertices[v].pos;
      bc.add_vector(v, [A, b, pos](double) { return Vec3(A * pos + b); });
    }
    bc.finalize();
    auto red = apply_dirichlet(K, Eigen::VectorXd::Zero(K.rows()), bc, 1.0);
    Eigen::VectorXd x = linear_solve(red.K, red.rhs, 1e-14);
    Eigen::VectorXd u = affine_dofs(s.ops.dofs, Mat3::Zero(), Vec3::Zero());
    bc.apply_values(u, 1.0);
    bc.add_free_into(u, x);
    Eigen::VectorXd exact = affine_dofs(s.ops.dofs, A, b);
    CHECK((u - exact).lpNorm<Eigen::Infinity>() < 1e-8 * exact.lpNorm<Eigen::Infinity>());
  }
  SUBCASE("time-dependent values scale linearly") {
    ConstraintSet bc(s.ops.dofs);
    Vec3 g(1.0, 2.0, 0);
    for (int v : s.mesh.boundary_vertices)
      bc.add_vector(v, [g](double t) { return Vec3(t * g); });
    bc.finalize();
    Eigen::VectorXd u = Eigen::VectorXd::Zero(K.rows());
    bc.apply_values(u, 0.5);
    Eigen::VectorXd u2 = Eigen::VectorXd::Zero(K.rows());
    bc.apply_values(u2, 1.0);
    CHECK((2 * u - u2).norm() < 1e-12 * u2.norm());
  }
  SUBCASE("constraining a non-boundary vertex fails") {
    ConstraintSet bc(s.ops.dofs);
    int interior = -1;
    for (int v = 0; v < (int)s.mesh.vertices.size(); ++v)
      if (!s.mesh.vertices[v].on_boundary) interior = v;
    REQUIRE(interior >= 0);
    CHECK_THROWS_AS(bc.add(interior, 0, [](double) { return 0.0; }), Error);
  }
}

TEST_CASE("internal force matches K u for elastic states") {
  Material m = steel_like();
  auto s = make_setup(make_box2d({.nx = 3, .ny = 2, .distort = 0.1, .seed = 31}), m.mu());
  SpMat K = assemble_stiffness(s.ops, ElasticTensor::from_material(m));
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> dist(-1, 1);
  Eigen::VectorXd u(s.ops.dofs.n_dofs());
  for (int i = 0; i < u.size(); ++i) u[i] = dist(rng);

  auto strains = s.ops.cell_strains(u);
  std::vector<Mat3> sigma(strains.size());
  for (size_t c = 0; c < strains.size(); ++c) sigma[c] = stress(strains[c], Mat3::Zero(), m);
  Eigen::VectorXd f1 = s.ops.internal_force(u, sigma);
  Eigen::VectorXd f2 = K * u;
  CHECK((f1 - f2).norm() < 1e-10 * f2.norm());

  // matrix-free tangent application agrees with assembly
  std::vector<Mat9> moduli(strains.size(), ElasticTensor::from_material(m).matrix9());
  SpMat Kt = assemble_stiffness(s.ops, moduli);
  CHECK((Eigen::MatrixXd(Kt) - Eigen::MatrixXd(K)).norm() < 1e-10 * Eigen::MatrixXd(K).norm());
  Eigen::VectorXd f3 = apply_tangent(s.ops, moduli, u);
  CHECK((f3 - f2).norm() < 1e-10 * f2.norm());
}
