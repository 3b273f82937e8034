#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polydem/dynamics.hpp"
#include "polydem/meshgen.hpp"

#include <cmath>

using namespace polydem;

namespace {

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

Material elastic_material(double E = 1e3) {
  Material m;
  m.E = E;
  m.nu = 0.3;
  m.rho = 1;
  m.sigma0 = 1e30;
  return m;
}

ConstraintSet clamp_tag(const Setup& s, const std::string& tag) {
  ConstraintSet bc(s.ops.dofs);
  for (const auto& f : s.mesh.facets)
    if (f.on_boundary() && f.tag == tag)
      for (int v : f.vertices) bc.add_vector(v, [](double) { return Vec3::Zero(); });
  bc.finalize();
  return bc;
}

}  // namespace

TEST_CASE("lambda_max estimation") {
  SUBCASE("diagonal operator") {
    SpMat K(3, 3);
    K.insert(0, 0) = 1;
    K.insert(1, 1) = 2;
    K.insert(2, 2) = 3;
    CHECK(estimate_lambda_max(K) == doctest::Approx(3.0).epsilon(1e-3));
  }
  SUBCASE("small mesh against a dense eigensolver") {
    Material m = elastic_material(70e3);
    auto s = make_setup(make_box2d({.nx = 3, .ny = 2, .distort = 0.2, .seed = 13}), m.mu());
    SpMat K = assemble_stiffness(s.ops, ElasticTensor::from_material(m));
    ConstraintSet bc = clamp_tag(s, "left");
    auto red = apply_dirichlet(K, Eigen::VectorXd::Zero(K.rows()), bc, 0.0);
    REQUIRE(red.K.rows() <= 200);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig{Eigen::MatrixXd(red.K)};
    double exact = eig.eigenvalues().maxCoeff();
    CHECK(estimate_lambda_max(red.K) == doctest::Approx(exact).epsilon(0.01));
  }
  SUBCASE("doubling E doubles lambda_max when the penalty follows mu") {
    Material m1 = elastic_material(70e3);
    Material m2 = elastic_material(140e3);
    PolyMesh mesh = make_box2d({.nx = 3, .ny = 3});
    auto recon = build_reconstruction(mesh, 10);
    auto ops1 = build_operators(mesh, recon, m1.mu());
    auto ops2 = build_operators(mesh, recon, m2.mu());
    double l1 = estimate_lambda_max(assemble_stiffness(ops1, ElasticTensor::from_material(m1)));
    double l2 = estimate_lambda_max(assemble_stiffness(ops2, ElasticTensor::from_material(m2)));
    CHECK(l2 / l1 == doctest::Approx(2.0).epsilon(0.01));
  }
}

TEST_CASE("cfl_dt") {
  Eigen::VectorXd m(2);
  m << 1.0, 2.0;
  CHECK(cfl_dt(m, 4.0, 1.0) == doctest::Approx(1.0));
  CHECK(cfl_dt(m, 4.0, 0.9) == doctest::Approx(0.9));
}

TEST_CASE("zero data stays identically zero") {
  Material m = elastic_material();
  auto s = make_setup(make_box3d({.nx = 2, .ny = 1, .nz = 1, .lx = 1, .ly = 0.2, .lz = 0.2}),
                      0.5 * m.mu());
  ConstraintSet bc = clamp_tag(s, "xmin");
  DynamicSolver solver(s.ops, m, bc, {}, {.cfl_safety = 0.9, .t_end = 1});
  solver.initialize(nullptr, nullptr);
  for (int n = 0; n < 50; ++n) {
    EnergyRow row = solver.step();
    CHECK(solver.state().u.norm() == 0);
    CHECK(row.e_elas == 0);
    CHECK(row.e_kin == 0);
    CHECK(row.e_plas == 0);
    CHECK(row.imbalance == 0);
  }
}

TEST_CASE("single-cell oscillator follows the two-step recurrence") {
  Material m = elastic_material(70e3);
  auto s = make_setup(make_box2d({.nx = 1, .ny = 1}), m.mu(), 4);
  // clamp every boundary vertex; only the two cell dofs remain
  ConstraintSet bc(s.ops.dofs);
  for (int v : s.mesh.boundary_vertices) bc.add_vector(v, [](double) { return Vec3::Zero(); });
  bc.finalize();
  REQUIRE(bc.n_free() == 2);

  SpMat K = assemble_stiffness(s.ops, ElasticTensor::from_material(m));
  auto red = apply_dirichlet(K, Eigen::VectorXd::Zero(K.rows()), bc, 0.0);
  Eigen::Matrix2d Kd = Eigen::MatrixXd(red.K);
  double mass = lump_mass(s.mesh, m.rho)[0];

  Vec3 a0(0.37, -0.21, 0);
  DynamicSolver solver(s.ops, m, bc, {}, {.cfl_safety = 0.5});
  solver.initialize([&](const Vec3&) { return a0; }, nullptr);
  double dt = solver.dt();

  // independent recurrence oracle on the reduced 2x2 system,
  // with the symmetric half-kick start
  Eigen::Vector2d u(a0.x(), a0.y());
  Eigen::Vector2d acc0 = (1.0 / mass) * (-Kd * u);
  Eigen::Vector2d v = 0.5 * dt * acc0;
  Eigen::Vector2d vprev = -0.5 * dt * acc0;
  for (int n = 0; n < 200; ++n) {
    Eigen::Vector2d umid = u + 0.5 * dt * v;
    Eigen::Vector2d vnew = vprev + 2.0 * dt * (1.0 / mass) * (-Kd * umid);
    u += dt * v;
    vprev = v;
    v = vnew;
    solver.step();
    Eigen::Vector2d usol(solver.state().u[0], solver.state().u[1]);
    CHECK((usol - u).norm() < 1e-12 * (1 + u.norm()));
  }
}

TEST_CASE("oscillator converges at second order") {
  Material m = elastic_material(70e3);
  auto s = make_setup(make_box2d({.nx = 1, .ny = 1}), m.mu(), 4);
  ConstraintSet bc(s.ops.dofs);
  for (int v : s.mesh.boundary_vertices) bc.add_vector(v, [](double) { return Vec3::Zero(); });
  bc.finalize();
  SpMat K = assemble_stiffness(s.ops, ElasticTensor::from_material(m));
  auto red = apply_dirichlet(K, Eigen::VectorXd::Zero(K.rows()), bc, 0.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig{Eigen::MatrixXd(red.K)};
  double mass = lump_mass(s.mesh, m.rho)[0];
  double omega = std::sqrt(eig.eigenvalues()[0] / mass);
  Eigen::Vector2d mode = eig.eigenvectors().col(0);

  auto error_at = [&](int steps) {
    double T = 4.3 * 2 * M_PI / omega;  // off a full period so phase error dominates
    DynControls ctl;
    ctl.dt = T / steps;
    DynamicSolver solver(s.ops, m, bc, {}, ctl);
    solver.initialize([&](const Vec3&) { return Vec3(mode.x(), mode.y(), 0); }, nullptr);
    for (int n = 0; n < steps; ++n) solver.step();
    Eigen::Vector2d usol(solver.state().u[0], solver.state().u[1]);
    Eigen::Vector2d exact = std::cos(omega * T) * mode;
    return (usol - exact).norm();
  };
  double e1 = error_at(400), e2 = error_at(800);
  double order = std::log2(e1 / e2);
  CHECK(order > 1.9);
  CHECK(order < 2.6);
}

TEST_CASE("energy balance") {
  SUBCASE("elastic runs balance essentially exactly") {
    // With force quadrature of order >= 2 the linear-elastic force integral
    // is exact, so the ledger closes to roundoff at any stable dt.
    Material m = elastic_material();
    auto s = make_setup(make_box3d({.nx = 4, .ny = 1, .nz = 1, .lx = 1, .ly = 0.25, .lz = 0.25}),
                        0.5 * m.mu());
    ConstraintSet bc = clamp_tag(s, "xmin");
    LoadSpec loads;
    loads.g = [](const Vec3&, double t, const std::string&) {
      return Vec3(0, -0.3 * std::sin(8.0 * t) * std::sin(3.0 * t), 0);
    };
    loads.neumann_tags = {"xmax"};
    for (Quadrature q : {Quadrature::Midpoint, Quadrature::Gauss5}) {
      DynControls ctl;
      ctl.cfl_safety = 0.9;
      ctl.quadrature = q;
      DynamicSolver solver(s.ops, m, bc, loads, ctl);
      solver.initialize(nullptr, nullptr);
      EnergyRow row;
      int steps = (int)std::ceil(1.0 / solver.dt());
      for (int n = 0; n < steps; ++n) row = solver.step();
      double scale = std::max({std::abs(row.e_ext), row.e_elas + row.e_kin, 1e-30});
      CHECK(std::abs(row.imbalance) < 1e-9 * scale);
    }
  }
  SUBCASE("plastic imbalance drops at second order in dt") {
    Material m = elastic_material(1e3);
    m.sigma0 = 5;
    m.hardening = Hardening::Linear;
    m.Et = 10;
    auto s = make_setup(make_box3d({.nx = 4, .ny = 1, .nz = 1, .lx = 1, .ly = 0.25, .lz = 0.25}),
                        0.5 * m.mu());
    ConstraintSet bc = clamp_tag(s, "xmin");
    LoadSpec loads;
    loads.g = [](const Vec3&, double t, const std::string&) {
      return Vec3(0, -3.0 * std::min(t / 0.4, 1.0), 0);
    };
    loads.neumann_tags = {"xmax"};
    auto imbalance_at = [&](double factor) {
      DynControls ctl;
      ctl.cfl_safety = 0.5 * factor;
      DynamicSolver solver(s.ops, m, bc, loads, ctl);
      solver.initialize(nullptr, nullptr);
      EnergyRow row;
      int steps = (int)std::ceil(1.0 / solver.dt());
      for (int n = 0; n < steps; ++n) row = solver.step();
      double scale = std::max(std::abs(row.e_ext), row.e_elas + row.e_kin + row.e_plas);
      return std::abs(row.imbalance) / scale;
    };
    double e1 = imbalance_at(1.0);
    double e2 = imbalance_at(0.5);
    CHECK(e1 / e2 > 3.0);
    CHECK(e1 / e2 < 5.0);
  }
}

TEST_CASE("plastic dissipation is monotone and balanced") {
  Material m = elastic_material(1e3);
  m.sigma0 = 5;  // yields quickly under the end load
  m.hardening = Hardening::Linear;
  m.Et = 10;
  auto s = make_setup(make_box3d({.nx = 4, .ny = 1, .nz = 1, .lx = 1, .ly = 0.25, .lz = 0.25}),
                      0.5 * m.mu());
  ConstraintSet bc = clamp_tag(s, "xmin");
  LoadSpec loads;
  loads.g = [](const Vec3&, double t, const std::string&) {
    return Vec3(0, -3.0 * std::min(t / 0.4, 1.0), 0);
  };
  loads.neumann_tags = {"xmax"};
  DynamicSolver solver(s.ops, m, bc, loads, {.cfl_safety = 0.9});
  solver.initialize(nullptr, nullptr);
  double T = 1.0;
  int steps = (int)std::ceil(T / solver.dt());
  double prev_plas = 0;
  EnergyRow row;
  for (int n = 0; n < steps; ++n) {
    row = solver.step();
    CHECK(row.e_plas >= prev_plas - 1e-14);
    prev_plas = row.e_plas;
  }
  CHECK(row.e_plas > 0);
  double scale = std::max(std::abs(row.e_ext), row.e_elas + row.e_kin + row.e_plas);
  CHECK(std::abs(row.imbalance) < 0.05 * scale);
  MESSAGE("plastic fraction of external work: ", row.e_plas / row.e_ext);
}

TEST_CASE("time-dependent Dirichlet ramp is tracked exactly") {
  Material m = elastic_material(1e3);
  auto s = make_setup(make_box3d({.nx = 3, .ny = 1, .nz = 1, .lx = 1, .ly = 0.3, .lz = 0.3}),
                      0.5 * m.mu());
  ConstraintSet bc(s.ops.dofs);
  Vec3 vel(0, 0.05, 0);
  int tracked_vertex = -1;
  for (const auto& f : s.mesh.facets) {
    if (!f.on_boundary()) continue;
    if (f.tag == "xmin")
      for (int v : f.vertices) bc.add_vector(v, [](double) { return Vec3::Zero(); });
    if (f.tag == "xmax")
      for (int v : f.vertices) {
        bc.add_vector(v, [vel](double t) { return Vec3(t * vel); });
        tracked_vertex = v;
      }
  }
  bc.finalize();
  DynamicSolver solver(s.ops, m, bc, {}, {.cfl_safety = 0.8});
  solver.initialize(nullptr, nullptr);
  for (int n = 0; n < 100; ++n) solver.step();
  double t = solver.state().t;
  int b = s.mesh.vertex_to_boundary[tracked_vertex];
  double uy = solver.state().u[s.ops.dofs.bvertex_dof(b, 1)];
  CHECK(uy == doctest::Approx(t * vel.y()).epsilon(1e-9));
}

TEST_CASE("instability guard triggers above the CFL bound") {
  // Needs a mesh where the mass/stiffness CFL bound is nearly tight; the
  // polar cylinder mesh concentrates both the smallest corner mass and the
  // stiffest mode at the axis wedges.
  Material m = elastic_material(70e3);
  auto s = make_setup(make_cylinder3d({.radius = 0.05, .length = 0.2, .nr = 2, .nt = 8, .nz = 3}),
                      0.5 * m.mu());
  ConstraintSet bc = clamp_tag(s, "z0");
  DynControls ctl;
  ctl.cfl_safety = 1.2;
  DynamicSolver solver(s.ops, m, bc, {}, ctl);
  solver.initialize([&](const Vec3& x) { return Vec3(1e-4 * x.z() * x.z(), 0, 0); }, nullptr);
  auto run = [&] {
    for (int n = 0; n < 50000; ++n) solver.step();
  };
  CHECK_THROWS_WITH_AS(run(), doctest::Contains("instability"), Error);
}
