#pragma once

#include "polydem/geometry.hpp"

#include <string>
#include <vector>

namespace polydem {

struct Vertex {
  Vec3 pos = Vec3::Zero();
  bool on_boundary = false;
};

struct Facet {
  std::vector<int> vertices;  // segment endpoints (2D) or polygon loop (3D)
  int cell_minus = -1;
  int cell_plus = -1;  // -1 on boundary facets
  double area = 0;     // |F|
  double diameter = 0;
  Vec3 centroid = Vec3::Zero();
  Vec3 normal = Vec3::Zero();  // unit, oriented minus->plus or outward
  std::string tag;             // empty on interior facets

  bool on_boundary() const { return cell_plus < 0; }
};

struct Cell {
  std::vector<int> facets;
  double volume = 0;  // |c|
  Vec3 centroid = Vec3::Zero();
};

/// Polygonal (2D) / polyhedral (3D) mesh with oriented facets and the derived
/// geometry the scheme needs. Immutable once finalized; concurrent reads are
/// safe.
class PolyMesh {
 public:
  int dim = 0;
  std::vector<Vertex> vertices;
  std::vector<Facet> facets;
  std::vector<Cell> cells;

  // Boundary vertex numbering (the set of vertices sitting on the boundary),
  // ascending in vertex id.
  std::vector<int> boundary_vertices;
  std::vector<int> vertex_to_boundary;  // -1 for interior vertices

  /// Computes facet/cell geometry, orients normals, fills connectivity and
  /// boundary flags. Call once after the topology arrays are set.
  void finalize();

  /// Checks the mesh invariants; throws Error with a description on failure.
  void validate() const;

  Vec3 outward_normal(int facet, int cell) const {
    const Facet& f = facets[facet];
    return cell == f.cell_minus ? f.normal : Vec3(-f.normal);
  }
  double orientation(int facet, int cell) const {
    return cell == facets[facet].cell_minus ? 1.0 : -1.0;
  }

  double closure_defect(int cell) const;  // |sum_F |F| n_{F,c}|
  double total_volume() const;
  double bbox_diameter() const;
  int n_boundary_facets() const;

  /// Ordered vertex loop of a cell in 2D (chained from its edges).
  std::vector<int> cell_vertex_loop(int cell) const;
};

/// Max over cells of the closure defect; mesh quality gate.
double cell_closure_defect(const PolyMesh& mesh);

}  // namespace polydem
