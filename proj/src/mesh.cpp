#include "polydem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace polydem {

namespace {

// Area, area centroid, unit normal and planarity deviation of a facet.
struct FacetGeometry {
  double area = 0;
  Vec3 centroid = Vec3::Zero();
  Vec3 normal = Vec3::Zero();
  double planarity = 0;  // max vertex distance to the facet plane
};

FacetGeometry facet_geometry(int dim, const std::vector<Vertex>& verts,
                             const std::vector<int>& ids) {
  FacetGeometry g;
  if (dim == 2) {
    const Vec3& a = verts[ids[0]].pos;
    const Vec3& b = verts[ids[1]].pos;
    Vec3 e = b - a;
    g.area = e.norm();
    g.centroid = 0.5 * (a + b);
    g.normal = Vec3(e.y(), -e.x(), 0.0).normalized();
    return g;
  }
  // 3D polygon: fan about the vertex average, accumulate triangle areas.
  Vec3 avg = Vec3::Zero();
  for (int v : ids) avg += verts[v].pos;
  avg /= (double)ids.size();
  Vec3 area_vec = Vec3::Zero();
  Vec3 weighted = Vec3::Zero();
  double a = 0;
  for (size_t i = 0; i < ids.size(); ++i) {
    const Vec3& p = verts[ids[i]].pos;
    const Vec3& q = verts[ids[(i + 1) % ids.size()]].pos;
    Vec3 cr = 0.5 * (p - avg).cross(q - avg);
    area_vec += cr;
    a += cr.norm();
    weighted += cr.norm() * (avg + p + q) / 3.0;
  }
  g.area = a;
  g.normal = area_vec.normalized();
  g.centroid = a > 0 ? Vec3(weighted / a) : avg;
  for (int v : ids) g.planarity = std::max(g.planarity, std::abs(g.normal.dot(verts[v].pos - g.centroid)));
  return g;
}

}  // namespace

void PolyMesh::finalize() {
  if (dim != 2 && dim != 3) fail("mesh: dimension must be 2 or 3");

  for (auto& f : facets) {
    f.cell_minus = -1;
    f.cell_plus = -1;
  }
  for (int c = 0; c < (int)cells.size(); ++c) {
    for (int fi : cells[c].facets) {
      Facet& f = facets[fi];
      if (f.cell_minus < 0)
        f.cell_minus = c;
      else if (f.cell_plus < 0)
        f.cell_plus = c;
      else
        fail("mesh: facet " + std::to_string(fi) + " referenced by more than two cells");
    }
  }

  for (auto& f : facets) {
    if (f.cell_minus < 0) fail("mesh: orphan facet (no incident cell)");
    FacetGeometry g = facet_geometry(dim, vertices, f.vertices);
    f.area = g.area;
    f.centroid = g.centroid;
    f.normal = g.normal;
    f.diameter = 0;
    for (size_t i = 0; i < f.vertices.size(); ++i)
      for (size_t j = i + 1; j < f.vertices.size(); ++j)
        f.diameter = std::max(f.diameter,
                              (vertices[f.vertices[i]].pos - vertices[f.vertices[j]].pos).norm());
  }

  // Provisional cell centroids (vertex averages) fix the normal orientation;
  // exact centroids follow from the divergence theorem once normals are set.
  std::vector<Vec3> approx(cells.size(), Vec3::Zero());
  for (int c = 0; c < (int)cells.size(); ++c) {
    Vec3 s = Vec3::Zero();
    int n = 0;
    for (int fi : cells[c].facets)
      for (int v : facets[fi].vertices) {
        s += vertices[v].pos;
        ++n;
      }
    approx[c] = s / (double)n;
  }
  for (auto& f : facets) {
    if (f.on_boundary()) {
      if (f.normal.dot(f.centroid - approx[f.cell_minus]) < 0) f.normal = -f.normal;
    } else {
      if (f.normal.dot(approx[f.cell_plus] - approx[f.cell_minus]) < 0) f.normal = -f.normal;
    }
  }

  for (int c = 0; c < (int)cells.size(); ++c) {
    Cell& cell = cells[c];
    double vol = 0;
    Vec3 mom = Vec3::Zero();
    for (int fi : cell.facets) {
      const Facet& f = facets[fi];
      Vec3 n = outward_normal(fi, c);
      double xn = f.centroid.dot(n);
      vol += f.area * xn;
      mom += f.area * xn * f.centroid;
    }
    cell.volume = vol / dim;
    cell.centroid = cell.volume != 0 ? Vec3(mom / ((dim + 1) * cell.volume)) : approx[c];
  }

  for (auto& v : vertices) v.on_boundary = false;
  for (const auto& f : facets)
    if (f.on_boundary())
      for (int v : f.vertices) vertices[v].on_boundary = true;

  boundary_vertices.clear();
  vertex_to_boundary.assign(vertices.size(), -1);
  for (int v = 0; v < (int)vertices.size(); ++v)
    if (vertices[v].on_boundary) {
      vertex_to_boundary[v] = (int)boundary_vertices.size();
      boundary_vertices.push_back(v);
    }
}

void PolyMesh::validate() const {
  for (const auto& v : vertices)
    if (!v.pos.allFinite()) fail("mesh: non-finite vertex position");

  for (int fi = 0; fi < (int)facets.size(); ++fi) {
    const Facet& f = facets[fi];
    if ((int)f.vertices.size() < dim) fail("mesh: facet with too few vertices");
    if (f.area <= 0) fail("mesh: facet " + std::to_string(fi) + " has non-positive area");
    if (std::abs(f.normal.norm() - 1.0) > 1e-12) fail("mesh: facet normal not unit");
    if (f.on_boundary()) {
      if (f.tag.empty()) fail("untagged boundary facet " + std::to_string(fi));
      if (dim == 3 && f.vertices.size() != 3)
        fail("mesh: 3D boundary facet " + std::to_string(fi) + " is not a triangle");
    } else {
      if (f.cell_minus == f.cell_plus) fail("mesh: interior facet with identical cells");
    }
    if (dim == 3) {
      FacetGeometry g = facet_geometry(dim, vertices, f.vertices);
      if (g.planarity > 1e-8 * f.diameter)
        fail("mesh: facet " + std::to_string(fi) + " is non-planar beyond tolerance");
    }
  }

  for (int c = 0; c < (int)cells.size(); ++c) {
    if (cells[c].volume <= 0)
      fail("mesh: inverted or zero-volume cell " + std::to_string(c));
    double per = 0;
    for (int fi : cells[c].facets) per += facets[fi].area;
    if (closure_defect(c) > 1e-12 * per)
      fail("mesh: cell " + std::to_string(c) + " violates the facet closure identity");
  }
}

double PolyMesh::closure_defect(int cell) const {
  Vec3 s = Vec3::Zero();
  for (int fi : cells[cell].facets) s += facets[fi].area * outward_normal(fi, cell);
  return s.norm();
}

double cell_closure_defect(const PolyMesh& mesh) {
  double worst = 0;
  for (int c = 0; c < (int)mesh.cells.size(); ++c)
    worst = std::max(worst, mesh.closure_defect(c));
  return worst;
}

double PolyMesh::total_volume() const {
  double v = 0;
  for (const auto& c : cells) v += c.volume;
  return v;
}

double PolyMesh::bbox_diameter() const {
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::max());
  Vec3 hi = Vec3::Constant(std::numeric_limits<double>::lowest());
  for (const auto& v : vertices) {
    lo = lo.cwiseMin(v.pos);
    hi = hi.cwiseMax(v.pos);
  }
  return (hi - lo).norm();
}

int PolyMesh::n_boundary_facets() const {
  int n = 0;
  for (const auto& f : facets) n += f.on_boundary() ? 1 : 0;
  return n;
}

std::vector<int> PolyMesh::cell_vertex_loop(int cell) const {
  if (dim != 2) fail("cell_vertex_loop: 2D only");
  std::map<int, std::vector<int>> next;  // vertex -> neighbours along cell edges
  for (int fi : cells[cell].facets) {
    const auto& vs = facets[fi].vertices;
    next[vs[0]].push_back(vs[1]);
    next[vs[1]].push_back(vs[0]);
  }
  std::vector<int> loop;
  int start = next.begin()->first;
  int prev = -1, cur = start;
  do {
    loop.push_back(cur);
    const auto& nb = next[cur];
    int nxt = (nb[0] == prev) ? nb[1] : nb[0];
    prev = cur;
    cur = nxt;
  } while (cur != start && loop.size() <= next.size());
  if (cur != start) fail("cell_vertex_loop: edges of cell do not close");
  // Counter-clockwise ordering (positive shoelace area).
  double a2 = 0;
  for (size_t i = 0; i < loop.size(); ++i) {
    const Vec3& p = vertices[loop[i]].pos;
    const Vec3& q = vertices[loop[(i + 1) % loop.size()]].pos;
    a2 += p.x() * q.y() - q.x() * p.y();
  }
  if (a2 < 0) std::reverse(loop.begin(), loop.end());
  return loop;
}

}  // namespace polydem
