#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polydem/mesh.hpp"
#include "polydem/mesh_io.hpp"
#include "polydem/meshgen.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

using namespace polydem;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = std::string("/tmp/") + name;
  std::ofstream out(path);
  out << content;
  return path;
}

const char* kUnitSquareJson = R"({
  "dimension": 2,
  "vertices": [[0,0],[1,0],[1,1],[0,1]],
  "facets": [[0,1],[1,2],[2,3],[3,0]],
  "cells": [[0,1,2,3]],
  "boundary": {"bottom": [0], "right": [1], "top": [2], "left": [3]}
})";

}  // namespace

TEST_CASE("unit square native mesh") {
  auto path = write_temp("unit_square.json", kUnitSquareJson);
  PolyMesh mesh = load_mesh(path);
  CHECK(mesh.dim == 2);
  CHECK(mesh.cells.size() == 1);
  CHECK(mesh.cells[0].volume == doctest::Approx(1.0));
  CHECK(mesh.cells[0].centroid.isApprox(Vec3(0.5, 0.5, 0.0), 1e-14));
  CHECK(mesh.n_boundary_facets() == 4);
  CHECK(cell_closure_defect(mesh) < 1e-14);
  CHECK(mesh.boundary_vertices.size() == 4);
  for (const auto& f : mesh.facets) {
    CHECK(f.area == doctest::Approx(1.0));
    // outward orientation
    CHECK(f.normal.dot(f.centroid - mesh.cells[0].centroid) > 0);
  }
}

TEST_CASE("untagged boundary facet is rejected") {
  const char* bad = R"({
    "dimension": 2,
    "vertices": [[0,0],[1,0],[1,1],[0,1]],
    "facets": [[0,1],[1,2],[2,3],[3,0]],
    "cells": [[0,1,2,3]],
    "boundary": {"bottom": [0], "right": [1], "top": [2]}
  })";
  auto path = write_temp("untagged.json", bad);
  CHECK_THROWS_WITH_AS(load_mesh(path), doctest::Contains("untagged boundary facet"), Error);
}

TEST_CASE("unit cube msh2 with six tetrahedra") {
  // Kuhn subdivision of the unit cube; surface triangles tagged 1.
  std::string msh =
      "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n"
      "$Nodes\n8\n"
      "1 0 0 0\n2 1 0 0\n3 0 1 0\n4 1 1 0\n"
      "5 0 0 1\n6 1 0 1\n7 0 1 1\n8 1 1 1\n"
      "$EndNodes\n"
      "$Elements\n18\n";
  // path tetrahedra on the diagonal 1-8 (msh ids)
  const int tets[6][4] = {{1, 2, 4, 8}, {1, 2, 6, 8}, {1, 3, 4, 8},
                          {1, 3, 7, 8}, {1, 5, 6, 8}, {1, 5, 7, 8}};
  const int tris[12][3] = {{1, 2, 4}, {1, 4, 3},  // z=0
                           {5, 6, 8}, {5, 8, 7},  // z=1
                           {1, 2, 6}, {1, 6, 5},  // y=0
                           {3, 4, 8}, {3, 8, 7},  // y=1
                           {1, 3, 7}, {1, 7, 5},  // x=0
                           {2, 4, 8}, {2, 8, 6}}; // x=1
  int id = 1;
  for (const auto& t : tris)
    msh += std::to_string(id++) + " 2 2 1 1 " + std::to_string(t[0]) + " " +
           std::to_string(t[1]) + " " + std::to_string(t[2]) + "\n";
  for (const auto& t : tets)
    msh += std::to_string(id++) + " 4 2 2 2 " + std::to_string(t[0]) + " " +
           std::to_string(t[1]) + " " + std::to_string(t[2]) + " " + std::to_string(t[3]) + "\n";
  msh += "$EndElements\n";

  auto path = write_temp("cube.msh", msh);
  PolyMesh mesh = load_mesh(path);
  CHECK(mesh.dim == 3);
  CHECK(mesh.cells.size() == 6);
  CHECK(mesh.facets.size() == 18);
  CHECK(mesh.total_volume() == doctest::Approx(1.0));
  double surface = 0;
  for (const auto& f : mesh.facets)
    if (f.on_boundary()) surface += f.area;
  CHECK(surface == doctest::Approx(6.0));
  CHECK(cell_closure_defect(mesh) < 1e-14);
}

TEST_CASE("closure defect flags a flipped facet normal") {
  PolyMesh mesh = make_box2d({.nx = 1, .ny = 1});
  REQUIRE(cell_closure_defect(mesh) < 1e-14);
  Facet& f = mesh.facets[mesh.cells[0].facets[0]];
  double area = f.area;
  f.normal = -f.normal;
  CHECK(cell_closure_defect(mesh) == doctest::Approx(2.0 * area));
}

TEST_CASE("generated meshes validate and have exact volumes") {
  SUBCASE("box2d distorted") {
    PolyMesh mesh = make_box2d({.nx = 6, .ny = 5, .lx = 2.0, .ly = 1.0, .distort = 0.2});
    CHECK(mesh.total_volume() == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(mesh.cells.size() == 30);
  }
  SUBCASE("box2d triangles") {
    PolyMesh mesh = make_box2d({.nx = 3, .ny = 3, .triangles = true});
    CHECK(mesh.cells.size() == 18);
    CHECK(mesh.total_volume() == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("box3d") {
    PolyMesh mesh = make_box3d({.nx = 2, .ny = 2, .nz = 2, .lx = 1, .ly = 2, .lz = 3});
    CHECK(mesh.cells.size() == 48);
    CHECK(mesh.total_volume() == doctest::Approx(6.0).epsilon(1e-12));
    for (const auto& f : mesh.facets)
      if (f.on_boundary()) CHECK(f.vertices.size() == 3);
  }
  SUBCASE("annulus2d") {
    Annulus2dSpec s{.ri = 1.0, .ro = 1.3, .nr = 4, .nt = 8};
    PolyMesh mesh = make_annulus2d(s);
    // polygonal quarter ring: area of the polygon, not of the exact annulus
    double poly = 0.5 * (M_PI / 2) * (s.ro * s.ro - s.ri * s.ri) *
                  std::sin(M_PI / 2 / s.nt) / (M_PI / 2 / s.nt);
    CHECK(mesh.total_volume() == doctest::Approx(poly).epsilon(1e-10));
  }
  SUBCASE("cylinder3d") {
    Cylinder3dSpec s{.radius = 0.05, .length = 0.2, .nr = 2, .nt = 12, .nz = 3};
    PolyMesh mesh = make_cylinder3d(s);
    double ngon = 0.5 * s.nt * s.radius * s.radius * std::sin(2 * M_PI / s.nt);
    CHECK(mesh.total_volume() == doctest::Approx(ngon * s.length).epsilon(1e-10));
    CHECK(cell_closure_defect(mesh) < 1e-15);
  }
}

TEST_CASE("native json round trip") {
  PolyMesh mesh = make_annulus2d({.nr = 2, .nt = 3});
  write_mesh_json(mesh, "/tmp/annulus_rt.json");
  PolyMesh back = load_mesh("/tmp/annulus_rt.json");
  CHECK(back.cells.size() == mesh.cells.size());
  CHECK(back.total_volume() == doctest::Approx(mesh.total_volume()).epsilon(1e-14));
  for (size_t f = 0; f < mesh.facets.size(); ++f) CHECK(back.facets[f].tag == mesh.facets[f].tag);
}
