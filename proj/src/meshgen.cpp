#include "polydem/meshgen.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <random>

namespace polydem {

namespace {

using Classifier = std::function<std::string(const Vec3&)>;

PolyMesh from_polygons_2d(std::vector<Vec3> verts, const std::vector<std::vector<int>>& loops,
                          const Classifier& classify) {
  PolyMesh mesh;
  mesh.dim = 2;
  for (const auto& p : verts) mesh.vertices.push_back({p, false});
  std::map<std::pair<int, int>, int> edge_index;
  for (const auto& loop : loops) {
    Cell c;
    for (size_t i = 0; i < loop.size(); ++i) {
      int a = loop[i], b = loop[(i + 1) % loop.size()];
      auto key = std::minmax(a, b);
      auto it = edge_index.find(key);
      int fi;
      if (it == edge_index.end()) {
        fi = (int)mesh.facets.size();
        edge_index[key] = fi;
        Facet f;
        f.vertices = {a, b};
        mesh.facets.push_back(std::move(f));
      } else {
        fi = it->second;
      }
      c.facets.push_back(fi);
    }
    mesh.cells.push_back(std::move(c));
  }
  mesh.finalize();
  for (auto& f : mesh.facets)
    if (f.on_boundary()) f.tag = classify(f.centroid);
  mesh.validate();
  return mesh;
}

PolyMesh from_tets(std::vector<Vec3> verts, const std::vector<std::array<int, 4>>& tets,
                   const Classifier& classify) {
  PolyMesh mesh;
  mesh.dim = 3;
  for (const auto& p : verts) mesh.vertices.push_back({p, false});
  std::map<std::array<int, 3>, int> face_index;
  for (const auto& t : tets) {
    Cell c;
    const std::array<std::array<int, 3>, 4> faces = {{{t[1], t[2], t[3]},
                                                      {t[0], t[3], t[2]},
                                                      {t[0], t[1], t[3]},
                                                      {t[0], t[2], t[1]}}};
    for (const auto& fv : faces) {
      std::array<int, 3> key = fv;
      std::sort(key.begin(), key.end());
      auto it = face_index.find(key);
      int fi;
      if (it == face_index.end()) {
        fi = (int)mesh.facets.size();
        face_index[key] = fi;
        Facet f;
        f.vertices = {fv[0], fv[1], fv[2]};
        mesh.facets.push_back(std::move(f));
      } else {
        fi = it->second;
      }
      c.facets.push_back(fi);
    }
    mesh.cells.push_back(std::move(c));
  }
  mesh.finalize();
  for (auto& f : mesh.facets)
    if (f.on_boundary()) f.tag = classify(f.centroid);
  mesh.validate();
  return mesh;
}

}  // namespace

PolyMesh make_box2d(const Box2dSpec& s) {
  const int nvx = s.nx + 1, nvy = s.ny + 1;
  const double hx = s.lx / s.nx, hy = s.ly / s.ny;
  std::vector<Vec3> verts;
  verts.reserve(nvx * nvy);
  std::mt19937 rng(s.seed);
  std::uniform_real_distribution<double> jitter(-1.0, 1.0);
  for (int j = 0; j < nvy; ++j)
    for (int i = 0; i < nvx; ++i) {
      Vec3 p(s.x0 + i * hx, s.y0 + j * hy, 0.0);
      if (s.distort > 0 && i > 0 && i < s.nx && j > 0 && j < s.ny) {
        p.x() += s.distort * hx * jitter(rng);
        p.y() += s.distort * hy * jitter(rng);
      }
      verts.push_back(p);
    }
  auto vid = [&](int i, int j) { return j * nvx + i; };
  std::vector<std::vector<int>> loops;
  for (int j = 0; j < s.ny; ++j)
    for (int i = 0; i < s.nx; ++i) {
      int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
      if (!s.triangles) {
        loops.push_back({a, b, c, d});
      } else {
        loops.push_back({a, b, c});
        loops.push_back({a, c, d});
      }
    }
  const double tol = 1e-9 * std::max(s.lx, s.ly);
  Classifier classify = [&](const Vec3& p) -> std::string {
    if (std::abs(p.x() - s.x0) < tol) return "left";
    if (std::abs(p.x() - (s.x0 + s.lx)) < tol) return "right";
    if (std::abs(p.y() - s.y0) < tol) return "bottom";
    return "top";
  };
  return from_polygons_2d(std::move(verts), loops, classify);
}

PolyMesh make_box3d(const Box3dSpec& s) {
  const int nvx = s.nx + 1, nvy = s.ny + 1, nvz = s.nz + 1;
  const double hx = s.lx / s.nx, hy = s.ly / s.ny, hz = s.lz / s.nz;
  std::vector<Vec3> verts;
  verts.reserve(nvx * nvy * nvz);
  for (int k = 0; k < nvz; ++k)
    for (int j = 0; j < nvy; ++j)
      for (int i = 0; i < nvx; ++i)
        verts.emplace_back(s.x0 + i * hx, s.y0 + j * hy, s.z0 + k * hz);
  auto vid = [&](int i, int j, int k) { return (k * nvy + j) * nvx + i; };

  std::vector<std::array<int, 4>> tets;
  for (int k = 0; k < s.nz; ++k)
    for (int j = 0; j < s.ny; ++j)
      for (int i = 0; i < s.nx; ++i) {
        int v000 = vid(i, j, k), v100 = vid(i + 1, j, k);
        int v010 = vid(i, j + 1, k), v110 = vid(i + 1, j + 1, k);
        int v001 = vid(i, j, k + 1), v101 = vid(i + 1, j, k + 1);
        int v011 = vid(i, j + 1, k + 1), v111 = vid(i + 1, j + 1, k + 1);
        // Six path tetrahedra sharing the main diagonal v000-v111.
        tets.push_back({v000, v100, v110, v111});
        tets.push_back({v000, v100, v101, v111});
        tets.push_back({v000, v010, v110, v111});
        tets.push_back({v000, v010, v011, v111});
        tets.push_back({v000, v001, v101, v111});
        tets.push_back({v000, v001, v011, v111});
      }
  const double tol = 1e-9 * std::max({s.lx, s.ly, s.lz});
  Classifier classify = [&](const Vec3& p) -> std::string {
    if (std::abs(p.x() - s.x0) < tol) return "xmin";
    if (std::abs(p.x() - (s.x0 + s.lx)) < tol) return "xmax";
    if (std::abs(p.y() - s.y0) < tol) return "ymin";
    if (std::abs(p.y() - (s.y0 + s.ly)) < tol) return "ymax";
    if (std::abs(p.z() - s.z0) < tol) return "zmin";
    return "zmax";
  };
  return from_tets(std::move(verts), tets, classify);
}

PolyMesh make_annulus2d(const Annulus2dSpec& s) {
  const int nvr = s.nr + 1, nvt = s.nt + 1;
  std::vector<Vec3> verts;
  for (int j = 0; j < nvr; ++j)
    for (int i = 0; i < nvt; ++i) {
      double r = s.ri + (s.ro - s.ri) * j / s.nr;
      double th = (M_PI / 2) * i / s.nt;
      verts.emplace_back(r * std::cos(th), r * std::sin(th), 0.0);
    }
  auto vid = [&](int j, int i) { return j * nvt + i; };
  std::vector<std::vector<int>> loops;
  for (int j = 0; j < s.nr; ++j)
    for (int i = 0; i < s.nt; ++i)
      loops.push_back({vid(j, i), vid(j + 1, i), vid(j + 1, i + 1), vid(j, i + 1)});
  const double rmid = 0.5 * (s.ri + s.ro);
  const double tol = 1e-9 * s.ro;
  Classifier classify = [&](const Vec3& p) -> std::string {
    if (std::abs(p.y()) < tol) return "side_y0";
    if (std::abs(p.x()) < tol) return "side_x0";
    return p.norm() < rmid ? "inner" : "outer";
  };
  return from_polygons_2d(std::move(verts), loops, classify);
}

namespace {

// Splits a prism into three tetrahedra, choosing quad-face diagonals through
// the smallest global vertex id so adjacent prisms stay conforming.
void split_prism(std::array<int, 3> a, std::array<int, 3> b,
                 std::vector<std::array<int, 4>>& out) {
  int gmin = std::min(*std::min_element(a.begin(), a.end()),
                      *std::min_element(b.begin(), b.end()));
  bool on_top = (gmin == b[0] || gmin == b[1] || gmin == b[2]);
  if (on_top) std::swap(a, b);
  while (a[0] != gmin) {
    a = {a[1], a[2], a[0]};
    b = {b[1], b[2], b[0]};
  }
  // Quads at a0 take diagonals a0-b1 and a0-b2; the remaining quad
  // (a1,a2,b2,b1) takes the diagonal through its own smallest id.
  int m = std::min({a[1], a[2], b[1], b[2]});
  if (m == a[1] || m == b[2]) {
    out.push_back({a[0], a[1], a[2], b[2]});
    out.push_back({a[0], a[1], b[2], b[1]});
    out.push_back({a[0], b[1], b[2], b[0]});
  } else {
    out.push_back({a[0], a[1], a[2], b[1]});
    out.push_back({a[0], a[2], b[2], b[1]});
    out.push_back({a[0], b[1], b[2], b[0]});
  }
}

}  // namespace

PolyMesh make_cylinder3d(const Cylinder3dSpec& s) {
  // Disk triangulation: centre fan plus ring quads split by min-index diagonal.
  std::vector<Vec3> disk;
  disk.emplace_back(0, 0, 0);
  for (int j = 1; j <= s.nr; ++j) {
    double r = s.radius * j / s.nr;
    for (int i = 0; i < s.nt; ++i) {
      double th = 2 * M_PI * i / s.nt;
      disk.emplace_back(r * std::cos(th), r * std::sin(th), 0.0);
    }
  }
  auto rid = [&](int j, int i) { return 1 + (j - 1) * s.nt + ((i % s.nt + s.nt) % s.nt); };
  std::vector<std::array<int, 3>> tris;
  for (int i = 0; i < s.nt; ++i) tris.push_back({0, rid(1, i), rid(1, i + 1)});
  for (int j = 1; j < s.nr; ++j)
    for (int i = 0; i < s.nt; ++i) {
      int p = rid(j, i), q = rid(j, i + 1), r = rid(j + 1, i + 1), t = rid(j + 1, i);
      // quad (p,q,r,t); diagonal through its smallest id
      if (std::min(p, r) < std::min(q, t)) {
        tris.push_back({p, q, r});
        tris.push_back({p, r, t});
      } else {
        tris.push_back({p, q, t});
        tris.push_back({q, r, t});
      }
    }

  const int nv2 = (int)disk.size();
  std::vector<Vec3> verts;
  for (int k = 0; k <= s.nz; ++k) {
    double z = s.length * k / s.nz;
    for (const auto& p : disk) verts.emplace_back(p.x(), p.y(), z);
  }
  std::vector<std::array<int, 4>> tets;
  for (int k = 0; k < s.nz; ++k)
    for (const auto& t : tris) {
      std::array<int, 3> a = {t[0] + k * nv2, t[1] + k * nv2, t[2] + k * nv2};
      std::array<int, 3> b = {t[0] + (k + 1) * nv2, t[1] + (k + 1) * nv2, t[2] + (k + 1) * nv2};
      split_prism(a, b, tets);
    }
  const double tol = 1e-9 * std::max(s.radius, s.length);
  Classifier classify = [&](const Vec3& p) -> std::string {
    if (std::abs(p.z()) < tol) return "z0";
    if (std::abs(p.z() - s.length) < tol) return "z1";
    return "lateral";
  };
  return from_tets(std::move(verts), tets, classify);
}

}  // namespace polydem
