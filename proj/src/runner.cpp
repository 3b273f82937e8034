#include "polydem/runner.hpp"

#include "polydem/demforces.hpp"
#include "polydem/errors.hpp"
#include "polydem/expression.hpp"
#include "polydem/mesh_io.hpp"
#include "polydem/meshgen.hpp"
#include "polydem/outputs.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <set>

namespace polydem {

namespace {

bool log_enabled() {
  const char* v = std::getenv("POLYDEM_LOG");
  return !(v && std::string(v) == "quiet");
}

void log_line(const std::string& msg) {
  if (log_enabled()) std::cout << msg << "\n";
}

int nearest_cell(const PolyMesh& mesh, const Vec3& p) {
  int best = 0;
  double dist = std::numeric_limits<double>::max();
  for (int c = 0; c < (int)mesh.cells.size(); ++c) {
    double d = (mesh.cells[c].centroid - p).norm();
    if (d < dist) {
      dist = d;
      best = c;
    }
  }
  return best;
}

int nearest_boundary_vertex(const PolyMesh& mesh, const Vec3& p) {
  int best = -1;
  double dist = std::numeric_limits<double>::max();
  for (int v : mesh.boundary_vertices) {
    double d = (mesh.vertices[v].pos - p).norm();
    if (d < dist) {
      dist = d;
      best = v;
    }
  }
  return best;
}

std::vector<int> component_mask(const std::string& comps, int dim) {
  std::vector<int> out;
  for (char c : comps) {
    int k = c == 'x' ? 0 : c == 'y' ? 1 : c == 'z' ? 2 : -1;
    if (k < 0 || k >= dim) fail("config: bad component list '" + comps + "'");
    out.push_back(k);
  }
  return out;
}

std::vector<VtkField> state_fields(const PolyMesh& mesh, const Operators& ops,
                                   const Eigen::VectorXd& u,
                                   const std::vector<CellState>& cells) {
  const int nc = (int)mesh.cells.size();
  VtkField disp{"u", std::vector<double>(3 * nc, 0.0), true};
  for (int c = 0; c < nc; ++c)
    for (int k = 0; k < mesh.dim; ++k) disp.values[3 * c + k] = u[c * mesh.dim + k];
  VtkField p{"p", std::vector<double>(nc, 0.0), false};
  VtkField tr{"tr_sigma", std::vector<double>(nc, 0.0), false};
  VtkField vm{"von_mises", std::vector<double>(nc, 0.0), false};
  for (int c = 0; c < nc; ++c) {
    p.values[c] = cells[c].p;
    tr.values[c] = cells[c].sigma.trace();
    vm.values[c] = std::sqrt(1.5) * dev(cells[c].sigma).norm();
  }
  return {disp, p, tr, vm};
}

std::vector<double> probe_row(const CaseSetup& cs, const Eigen::VectorXd& u) {
  std::vector<double> out;
  for (const Vec3& p : cs.probes) {
    int c = nearest_cell(*cs.mesh, p);
    Vec3 v = cs.recon->cell_p1_eval(u, c, p);
    for (int k = 0; k < 3; ++k) out.push_back(v[k]);
  }
  return out;
}

}  // namespace

PolyMesh mesh_from_config(const Config& cfg) {
  if (cfg.has("mesh.path")) return load_mesh(cfg.string("mesh.path"));
  if (!cfg.has("mesh.generator")) fail("config: need mesh.path or mesh.generator");
  std::string gen = cfg.string("mesh.generator");
  if (gen == "box2d") {
    Box2dSpec s;
    s.nx = cfg.integer_or("mesh.nx", 4);
    s.ny = cfg.integer_or("mesh.ny", 4);
    s.x0 = cfg.number_or("mesh.x0", 0);
    s.y0 = cfg.number_or("mesh.y0", 0);
    s.lx = cfg.number_or("mesh.lx", 1);
    s.ly = cfg.number_or("mesh.ly", 1);
    s.distort = cfg.number_or("mesh.distort", 0);
    s.seed = (unsigned)cfg.integer_or("mesh.seed", 1);
    s.triangles = cfg.boolean_or("mesh.triangles", false);
    return make_box2d(s);
  }
  if (gen == "box3d") {
    Box3dSpec s;
    s.nx = cfg.integer_or("mesh.nx", 2);
    s.ny = cfg.integer_or("mesh.ny", 2);
    s.nz = cfg.integer_or("mesh.nz", 2);
    s.x0 = cfg.number_or("mesh.x0", 0);
    s.y0 = cfg.number_or("mesh.y0", 0);
    s.z0 = cfg.number_or("mesh.z0", 0);
    s.lx = cfg.number_or("mesh.lx", 1);
    s.ly = cfg.number_or("mesh.ly", 1);
    s.lz = cfg.number_or("mesh.lz", 1);
    return make_box3d(s);
  }
  if (gen == "annulus2d") {
    Annulus2dSpec s;
    s.ri = cfg.number_or("mesh.ri", 1.0);
    s.ro = cfg.number_or("mesh.ro", 1.3);
    s.nr = cfg.integer_or("mesh.nr", 4);
    s.nt = cfg.integer_or("mesh.nt", 8);
    return make_annulus2d(s);
  }
  if (gen == "cylinder3d") {
    Cylinder3dSpec s;
    s.radius = cfg.number_or("mesh.radius", 0.05);
    s.length = cfg.number_or("mesh.length", 0.2);
    s.nr = cfg.integer_or("mesh.nr", 2);
    s.nt = cfg.integer_or("mesh.nt", 12);
    s.nz = cfg.integer_or("mesh.nz", 4);
    return make_cylinder3d(s);
  }
  fail("config: unknown mesh generator '" + gen + "'");
}

CaseSetup build_case(const Config& cfg, int stencil_override) {
  CaseSetup cs;
  cs.mesh = std::make_unique<PolyMesh>(mesh_from_config(cfg));
  const PolyMesh& mesh = *cs.mesh;

  cs.material.E = cfg.number("material.E");
  cs.material.nu = cfg.number("material.nu");
  cs.material.rho = cfg.number_or("material.rho", 1.0);
  cs.material.sigma0 = cfg.number_or("material.sigma0", 1e30);
  std::string hard = cfg.string_or("material.hardening", "perfect");
  if (hard == "perfect") {
    cs.material.hardening = Hardening::Perfect;
  } else if (hard == "linear") {
    cs.material.hardening = Hardening::Linear;
    cs.material.Et = cfg.number("material.Et");
  } else {
    fail("config: unknown hardening '" + hard + "'");
  }
  cs.material.validate();

  cs.regime = cfg.string("model.regime");
  if (cs.regime != "static" && cs.regime != "quasistatic" && cs.regime != "dynamic")
    fail("config: unknown regime '" + cs.regime + "'");
  cs.penalty_beta = cfg.number_or("model.penalty_beta", 1.0);

  int candidates = stencil_override > 0 ? stencil_override
                                        : cfg.integer_or("model.stencil_candidates", 0);
  cs.recon = std::make_unique<ReconstructionMap>(build_reconstruction(mesh, candidates));
  cs.ops = std::make_unique<Operators>(
      build_operators(mesh, *cs.recon, cs.penalty_beta * cs.material.mu()));
  cs.bc = std::make_unique<ConstraintSet>(cs.ops->dofs);

  // boundary-condition table
  std::set<std::string> mesh_tags;
  for (const auto& f : mesh.facets)
    if (f.on_boundary()) mesh_tags.insert(f.tag);
  std::map<std::string, VectorExpression> tractions;
  const std::vector<std::string> bc_tags = cfg.subtables("bc");
  for (const std::string& tag : bc_tags) {
    if (!mesh_tags.count(tag)) fail("config: bc tag '" + tag + "' not present in the mesh");
    std::string type = cfg.string("bc." + tag + ".type");
    VectorExpression value =
        VectorExpression::parse(cfg.string("bc." + tag + ".value"), mesh.dim);
    if (type == "dirichlet") {
      std::string comps = cfg.string_or("bc." + tag + ".components",
                                        mesh.dim == 2 ? "xy" : "xyz");
      auto mask = component_mask(comps, mesh.dim);
      std::set<int> verts;
      for (const auto& f : mesh.facets)
        if (f.on_boundary() && f.tag == tag)
          for (int v : f.vertices) verts.insert(v);
      for (int v : verts) {
        Vec3 pos = mesh.vertices[v].pos;
        for (int k : mask)
          cs.bc->add(v, k, [value, pos, k](double t) { return value.eval(pos, t)[k]; });
      }
    } else if (type == "neumann") {
      tractions[tag] = value;
      cs.loads.neumann_tags.push_back(tag);
    } else {
      fail("config: unknown bc type '" + type + "' for tag '" + tag + "'");
    }
  }
  for (const std::string& tag : mesh_tags)
    if (std::find(bc_tags.begin(), bc_tags.end(), tag) == bc_tags.end())
      fail("config: mesh boundary tag '" + tag + "' has no boundary condition");

  // point pins (extra Dirichlet constraints at the nearest boundary vertex)
  for (const Config& pin : cfg.table_array("pins")) {
    auto pt = pin.numbers("point");
    Vec3 p = Vec3::Zero();
    for (size_t i = 0; i < pt.size() && i < 3; ++i) p[i] = pt[i];
    int v = nearest_boundary_vertex(mesh, p);
    for (int k : component_mask(pin.string("components"), mesh.dim))
      cs.bc->add(v, k, [](double) { return 0.0; });
  }
  cs.bc->finalize();

  if (!tractions.empty()) {
    auto table = std::make_shared<std::map<std::string, VectorExpression>>(std::move(tractions));
    cs.loads.g = [table](const Vec3& x, double t, const std::string& tag) {
      return table->at(tag).eval(x, t);
    };
  }
  if (cfg.has("load.body")) {
    VectorExpression body = VectorExpression::parse(cfg.string("load.body"), mesh.dim);
    cs.loads.f = [body](const Vec3& x, double t) { return body.eval(x, t); };
  }

  cs.program.steps = cfg.integer_or("quasistatic.steps", 1);
  cs.controls.tolerance = cfg.number_or("quasistatic.tolerance", 1e-8);
  cs.controls.max_iterations = cfg.integer_or("quasistatic.max_iterations", 50);
  std::string linear = cfg.string_or("quasistatic.linear", "auto");
  cs.controls.linear = linear == "direct" ? LinearSolverKind::Direct
                       : linear == "cg"   ? LinearSolverKind::Cg
                                          : LinearSolverKind::Auto;

  cs.dyn.dt = cfg.number_or("dynamic.dt", 0);
  cs.dyn.cfl_safety = cfg.number_or("dynamic.cfl_safety", 0.9);
  cs.dyn.t_end = cfg.number_or("dynamic.t_end", 1.0);
  std::string quad = cfg.string_or("dynamic.quadrature", "midpoint");
  if (quad == "midpoint")
    cs.dyn.quadrature = Quadrature::Midpoint;
  else if (quad == "gauss5")
    cs.dyn.quadrature = Quadrature::Gauss5;
  else
    fail("config: unknown quadrature '" + quad + "'");
  if (cfg.has("dynamic.u0")) cs.u0 = VectorExpression::parse(cfg.string("dynamic.u0"), mesh.dim);
  if (cfg.has("dynamic.v0")) cs.v0 = VectorExpression::parse(cfg.string("dynamic.v0"), mesh.dim);

  cs.out_dir = cfg.string_or("output.directory", ".");
  cs.prefix = cfg.string_or("output.prefix", "case");
  cs.output_every = cfg.integer_or("output.every", 1);
  cs.vtk_every = cfg.integer_or("output.vtk_every", 0);
  for (const Config& probe : cfg.table_array("probes")) {
    auto pt = probe.numbers("point");
    Vec3 p = Vec3::Zero();
    for (size_t i = 0; i < pt.size() && i < 3; ++i) p[i] = pt[i];
    cs.probes.push_back(p);
  }
  return cs;
}

namespace {

std::string out_path(const CaseSetup& cs, const std::string& suffix) {
  std::filesystem::create_directories(cs.out_dir);
  return cs.out_dir + "/" + cs.prefix + suffix;
}

std::vector<std::string> probe_header(const CaseSetup& cs) {
  std::vector<std::string> h;
  for (size_t i = 0; i < cs.probes.size(); ++i)
    for (const char* c : {"ux", "uy", "uz"})
      h.push_back("probe" + std::to_string(i) + "_" + c);
  return h;
}

int run_static(CaseSetup& cs) {
  Eigen::VectorXd u = static_solve(*cs.ops, cs.material, *cs.bc, cs.loads, 1.0, cs.controls);
  std::vector<CellState> cells(cs.mesh->cells.size());
  auto eps = cs.ops->cell_strains(u);
  for (size_t c = 0; c < cells.size(); ++c) cells[c].sigma = stress(eps[c], Mat3::Zero(), cs.material);
  write_vtk(*cs.mesh, state_fields(*cs.mesh, *cs.ops, u, cells), out_path(cs, ".vtk"));

  std::vector<std::string> header = {"dofs"};
  for (auto& h : probe_header(cs)) header.push_back(h);
  CsvWriter csv(out_path(cs, ".csv"), header);
  std::vector<double> row = {(double)cs.ops->n_dofs()};
  for (double v : probe_row(cs, u)) row.push_back(v);
  csv.row(row);
  log_line("static solve done: " + std::to_string(cs.ops->n_dofs()) + " dofs");
  return 0;
}

int run_quasistatic(CaseSetup& cs) {
  std::vector<std::string> header = {"step", "t", "iterations", "residual"};
  for (auto& h : probe_header(cs)) header.push_back(h);
  CsvWriter csv(out_path(cs, "_steps.csv"), header);
  QuasiStaticSolver solver(*cs.ops, cs.material, *cs.bc, cs.loads, cs.program, cs.controls);
  auto final_state = solver.solve([&](const QuasiStaticState& st, const StepDiagnostics& d) {
    std::vector<double> row = {(double)d.step, d.t, (double)d.iterations,
                               d.residual_history.back()};
    for (double v : probe_row(cs, st.u)) row.push_back(v);
    csv.row(row);
    if (cs.vtk_every > 0 && d.step % cs.vtk_every == 0)
      write_vtk(*cs.mesh, state_fields(*cs.mesh, *cs.ops, st.u, st.cells),
                out_path(cs, "_step" + std::to_string(d.step) + ".vtk"));
    log_line("step " + std::to_string(d.step) + ": iterations " +
             std::to_string(d.iterations) + ", residual " +
             std::to_string(d.residual_history.back()));
  });
  write_vtk(*cs.mesh, state_fields(*cs.mesh, *cs.ops, final_state.u, final_state.cells),
            out_path(cs, ".vtk"));
  return 0;
}

int run_dynamic(CaseSetup& cs) {
  DynamicSolver solver(*cs.ops, cs.material, *cs.bc, cs.loads, cs.dyn);
  VectorExpression u0 = cs.u0, v0 = cs.v0;
  solver.initialize(
      u0.empty() ? std::function<Vec3(const Vec3&)>()
                 : [u0](const Vec3& x) { return u0.eval(x, 0.0); },
      v0.empty() ? std::function<Vec3(const Vec3&)>()
                 : [v0](const Vec3& x) { return v0.eval(x, 0.0); });
  log_line("dynamic: dt = " + std::to_string(solver.dt()) +
           ", lambda_max = " + std::to_string(solver.lambda_max()));

  CsvWriter energy(out_path(cs, "_energy.csv"),
                   {"step", "t", "e_elas", "e_kin", "e_plas", "e_ext", "imbalance"});
  std::vector<std::string> ph = {"step", "t"};
  for (auto& h : probe_header(cs)) ph.push_back(h);
  CsvWriter probes(out_path(cs, "_probes.csv"), ph);

  int steps = (int)std::ceil(cs.dyn.t_end / solver.dt());
  for (int n = 0; n < steps; ++n) {
    EnergyRow row = solver.step();
    if (n % cs.output_every == 0 || n == steps - 1) {
      energy.row({(double)row.step, row.t, row.e_elas, row.e_kin, row.e_plas, row.e_ext,
                  row.imbalance});
      std::vector<double> pr = {(double)row.step, row.t};
      for (double v : probe_row(cs, solver.state().u)) pr.push_back(v);
      probes.row(pr);
    }
    if (cs.vtk_every > 0 && row.step % cs.vtk_every == 0)
      write_vtk(*cs.mesh, state_fields(*cs.mesh, *cs.ops, solver.state().u, solver.state().cells),
                out_path(cs, "_step" + std::to_string(row.step) + ".vtk"));
  }
  write_vtk(*cs.mesh, state_fields(*cs.mesh, *cs.ops, solver.state().u, solver.state().cells),
            out_path(cs, ".vtk"));
  return 0;
}

}  // namespace

int run_case(const Config& cfg, int stencil_override) {
  CaseSetup cs = build_case(cfg, stencil_override);
  log_line("mesh: " + std::to_string(cs.mesh->cells.size()) + " cells, " +
           std::to_string(cs.mesh->facets.size()) + " facets, " +
           std::to_string(cs.ops->n_dofs()) + " dofs; extrapolating stencils: " +
           std::to_string(cs.recon->stats.extrapolating) + " (" +
           std::to_string(cs.recon->stats.percentage()) + "%)");
  if (cs.regime == "static") return run_static(cs);
  if (cs.regime == "quasistatic") return run_quasistatic(cs);
  return run_dynamic(cs);
}

int run_check_mesh(const Config& cfg, int stencil_override) {
  PolyMesh mesh = mesh_from_config(cfg);
  int candidates = stencil_override > 0 ? stencil_override
                                        : cfg.integer_or("model.stencil_candidates", 0);
  ReconstructionMap recon = build_reconstruction(mesh, candidates);
  std::cout << "dimension:             " << mesh.dim << "\n";
  std::cout << "cells:                 " << mesh.cells.size() << "\n";
  std::cout << "facets:                " << mesh.facets.size() << "\n";
  std::cout << "boundary facets:       " << mesh.n_boundary_facets() << "\n";
  std::cout << "vertices:              " << mesh.vertices.size() << "\n";
  std::cout << "boundary vertices:     " << mesh.boundary_vertices.size() << "\n";
  std::cout << "volume:                " << mesh.total_volume() << "\n";
  std::cout << "max closure defect:    " << cell_closure_defect(mesh) << "\n";
  std::cout << "stencil candidates I:  " << recon.candidate_count << "\n";
  std::cout << "interior facets:       " << recon.stats.interior_facets << "\n";
  std::cout << "extrapolating facets:  " << recon.stats.extrapolating << " ("
            << recon.stats.percentage() << "%)\n";
  return 0;
}

int run_forces_check(const Config& cfg, int stencil_override) {
  CaseSetup cs = build_case(cfg, stencil_override);
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> dist(-1, 1);
  Eigen::VectorXd u(cs.ops->n_dofs());
  for (int i = 0; i < u.size(); ++i) u[i] = 1e-3 * dist(rng);
  auto eps = cs.ops->cell_strains(u);
  std::vector<Mat3> sigma(eps.size());
  for (size_t c = 0; c < eps.size(); ++c) {
    Mat3 a;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) a(i, j) = a(j, i) = 1e-4 * dist(rng);
    sigma[c] = stress(eps[c], dev(a), cs.material);
  }
  auto rep = force_balance_check(*cs.ops, u, sigma, *cs.bc, 20, 7);
  std::cout << "force decomposition defect (with correction):    "
            << rep.defect_with_correction << "\n";
  std::cout << "force decomposition defect (without correction): "
            << rep.defect_without_correction << "\n";
  return rep.defect_with_correction < 1e-9 ? 0 : 1;
}

int run_meshgen(const Config& cfg, const std::string& out_path) {
  PolyMesh mesh = mesh_from_config(cfg);
  write_mesh_json(mesh, out_path);
  log_line("wrote " + out_path + " (" + std::to_string(mesh.cells.size()) + " cells)");
  return 0;
}

int run_convergence(const Config& cfg, int stencil_override) {
  std::string name = cfg.string("convergence.case");
  std::vector<double> levels = cfg.numbers("convergence.levels");
  std::string dir = cfg.string_or("output.directory", ".");
  std::filesystem::create_directories(dir);
  CsvWriter csv(dir + "/" + cfg.string_or("output.prefix", name) + "_convergence.csv",
                {"level", "h", "dofs", "l2_error", "l2_order", "energy_error", "energy_order"});

  struct Row {
    double h, dofs, l2, energy;
  };
  std::vector<Row> rows;

  for (double level : levels) {
    int scale = (int)level;
    if (name == "manufactured2d") {
      analytic::Manufactured2d ref;
      int nx = cfg.integer_or("convergence.nx", 11) * scale;
      PolyMesh mesh = make_box2d({.nx = nx, .ny = nx, .x0 = -0.5, .y0 = -0.5});
      auto recon = build_reconstruction(mesh, stencil_override);
      auto ops = build_operators(mesh, recon, ref.mat.mu());
      ConstraintSet bc(ops.dofs);
      for (int v : mesh.boundary_vertices) {
        Vec3 pos = mesh.vertices[v].pos;
        bc.add_vector(v, [&ref, pos](double) { return ref.displacement(pos); });
      }
      bc.finalize();
      LoadSpec loads;
      loads.f = [&ref](const Vec3& x, double) { return ref.load(x); };
      Eigen::VectorXd u = static_solve(ops, ref.mat, bc, loads);
      double l2 = l2_error(mesh, recon, u, [&](const Vec3& x) { return ref.displacement(x); });
      SpMat K = assemble_stiffness(ops, ElasticTensor::from_material(ref.mat));
      Eigen::VectorXd e =
          interpolate_dofs(ops.dofs, [&](const Vec3& x) { return ref.displacement(x); }) - u;
      rows.push_back({1.0 / nx, (double)ops.n_dofs(), l2, energy_error(K, e)});
    } else if (name == "torsion") {
      analytic::TorsionBeam ref;
      Cylinder3dSpec spec;
      spec.radius = ref.radius;
      spec.length = ref.length;
      spec.nr = cfg.integer_or("convergence.nr", 2) * scale;
      spec.nt = cfg.integer_or("convergence.nt", 12) * scale;
      spec.nz = cfg.integer_or("convergence.nz", 4) * scale;
      PolyMesh mesh = make_cylinder3d(spec);
      auto recon = build_reconstruction(mesh, stencil_override);
      auto ops = build_operators(mesh, recon, ref.mat.mu());
      double alpha_max = 2 * ref.yield_angle();
      ConstraintSet bc(ops.dofs);
      for (const auto& f : mesh.facets) {
        if (!f.on_boundary()) continue;
        if (f.tag == "z0")
          for (int v : f.vertices) bc.add_vector(v, [](double) { return Vec3::Zero(); });
        if (f.tag == "z1")
          for (int v : f.vertices) {
            Vec3 pos = mesh.vertices[v].pos;
            bc.add_vector(v, [pos, alpha_max](double t) {
              return Vec3(-alpha_max * t * pos.y(), alpha_max * t * pos.x(), 0);
            });
          }
      }
      bc.finalize();
      int steps = cfg.integer_or("convergence.steps", 20);
      QuasiStaticSolver solver(ops, ref.mat, bc, {}, {.steps = steps}, {});
      SpMat K = assemble_stiffness(ops, ElasticTensor::from_material(ref.mat));
      double l2 = 0, energy = 0;
      solver.solve([&](const QuasiStaticState& st, const StepDiagnostics& d) {
        double alpha = alpha_max * d.t;
        l2 = std::max(l2, l2_error(mesh, recon, st.u, [&](const Vec3& x) {
                        return ref.displacement(x, alpha);
                      }));
        Eigen::VectorXd e = interpolate_dofs(ops.dofs, [&](const Vec3& x) {
                              return ref.displacement(x, alpha);
                            }) -
                            st.u;
        energy = std::max(energy, energy_error(K, e));
      });
      double h = ref.radius / spec.nr;
      rows.push_back({h, (double)ops.n_dofs(), l2, energy});
    } else {
      fail("config: unknown convergence case '" + name + "'");
    }
    const Row& r = rows.back();
    double l2_order = 0, en_order = 0;
    if (rows.size() > 1) {
      const Row& prev = rows[rows.size() - 2];
      int d = name == "torsion" ? 3 : 2;
      l2_order = convergence_order(prev.l2, prev.dofs, r.l2, r.dofs, d);
      en_order = convergence_order(prev.energy, prev.dofs, r.energy, r.dofs, d);
    }
    csv.row({level, r.h, r.dofs, r.l2, l2_order, r.energy, en_order});
    log_line("level " + std::to_string(scale) + ": dofs " + std::to_string((int)r.dofs) +
             ", L2 " + std::to_string(r.l2) + " (order " + std::to_string(l2_order) +
             "), energy " + std::to_string(r.energy) + " (order " + std::to_string(en_order) +
             ")");
  }
  return 0;
}

}  // namespace polydem
