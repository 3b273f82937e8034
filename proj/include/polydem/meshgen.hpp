#pragma once

#include "polydem/mesh.hpp"

namespace polydem {

// Structured generators used by the convergence harness and the test suites.
// Boundary tags: box2d left/right/bottom/top, box3d xmin/xmax/ymin/ymax/
// zmin/zmax, annulus2d inner/outer/side_y0/side_x0, cylinder3d z0/z1/lateral.

struct Box2dSpec {
  int nx = 4, ny = 4;
  double x0 = 0, y0 = 0, lx = 1, ly = 1;
  double distort = 0;  // interior vertex jitter, fraction of local spacing
  unsigned seed = 1;
  bool triangles = false;  // split quads into two triangles
};
PolyMesh make_box2d(const Box2dSpec& spec);

struct Box3dSpec {
  int nx = 2, ny = 2, nz = 2;
  double x0 = 0, y0 = 0, z0 = 0, lx = 1, ly = 1, lz = 1;
};
/// Hex grid split into six tetrahedra per hex (all diagonals aligned).
PolyMesh make_box3d(const Box3dSpec& spec);

struct Annulus2dSpec {
  double ri = 1.0, ro = 1.3;
  int nr = 4, nt = 8;  // quarter of a ring: nt sectors over 90 degrees
};
PolyMesh make_annulus2d(const Annulus2dSpec& spec);

struct Cylinder3dSpec {
  double radius = 0.05, length = 0.2;
  int nr = 2, nt = 12, nz = 4;
};
/// Triangulated disk extruded into prisms, then split into tetrahedra with
/// quad diagonals chosen through the smallest global vertex id (conforming).
PolyMesh make_cylinder3d(const Cylinder3dSpec& spec);

}  // namespace polydem
