#include "polydem/mesh_io.hpp"

#include <json.hpp>

#include <array>
#include <fstream>
#include <map>
#include <sstream>

namespace polydem {

namespace {

using nlohmann::json;

PolyMesh load_native_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open mesh file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail("mesh parse failure in " + path + ": " + e.what());
  }

  PolyMesh mesh;
  try {
    mesh.dim = j.at("dimension").get<int>();
    for (const auto& v : j.at("vertices")) {
      Vertex vert;
      vert.pos = Vec3::Zero();
      for (int i = 0; i < mesh.dim; ++i) vert.pos[i] = v.at(i).get<double>();
      mesh.vertices.push_back(vert);
    }
    for (const auto& fv : j.at("facets")) {
      Facet f;
      for (const auto& v : fv) f.vertices.push_back(v.get<int>());
      mesh.facets.push_back(std::move(f));
    }
    for (const auto& cf : j.at("cells")) {
      Cell c;
      for (const auto& fi : cf) c.facets.push_back(fi.get<int>());
      mesh.cells.push_back(std::move(c));
    }
    if (j.contains("boundary"))
      for (auto it = j.at("boundary").begin(); it != j.at("boundary").end(); ++it)
        for (const auto& fi : it.value()) {
          int f = fi.get<int>();
          if (f < 0 || f >= (int)mesh.facets.size())
            fail("mesh boundary tag references missing facet " + std::to_string(f));
          mesh.facets[f].tag = it.key();
        }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail("mesh schema error in " + path + ": " + e.what());
  }
  return mesh;
}

// Gmsh msh v2 ASCII, restricted to triangles (2D) and tetrahedra (3D),
// with lines / triangles as tagged boundary elements.
PolyMesh load_msh2(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open mesh file: " + path);

  std::vector<Vec3> nodes;
  std::map<int, int> node_index;  // msh node id -> 0-based
  std::map<int, std::string> physical_names;
  struct Elem {
    int type;
    int phys;
    std::vector<int> nodes;
  };
  std::vector<Elem> elems;

  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("$MeshFormat", 0) == 0) {
      std::getline(in, line);
      std::istringstream fs(line);
      double version;
      int file_type;
      fs >> version >> file_type;
      if (version < 2.0 || version >= 3.0 || file_type != 0)
        fail("msh reader supports ASCII msh v2 only: " + path);
    } else if (line.rfind("$PhysicalNames", 0) == 0) {
      std::getline(in, line);
      int n = std::stoi(line);
      for (int i = 0; i < n; ++i) {
        std::getline(in, line);
        std::istringstream ls(line);
        int dim, id;
        std::string name;
        ls >> dim >> id >> name;
        if (name.size() >= 2 && name.front() == '"') name = name.substr(1, name.size() - 2);
        physical_names[id] = name;
      }
    } else if (line.rfind("$Nodes", 0) == 0) {
      std::getline(in, line);
      int n = std::stoi(line);
      for (int i = 0; i < n; ++i) {
        std::getline(in, line);
        std::istringstream ls(line);
        int id;
        double x, y, z;
        ls >> id >> x >> y >> z;
        node_index[id] = (int)nodes.size();
        nodes.emplace_back(x, y, z);
      }
    } else if (line.rfind("$Elements", 0) == 0) {
      std::getline(in, line);
      int n = std::stoi(line);
      for (int i = 0; i < n; ++i) {
        std::getline(in, line);
        std::istringstream ls(line);
        int id, type, ntags;
        ls >> id >> type >> ntags;
        int phys = 0, tag;
        for (int t = 0; t < ntags; ++t) {
          ls >> tag;
          if (t == 0) phys = tag;
        }
        static const std::map<int, int> nodes_per_type = {{1, 2}, {2, 3}, {4, 4}, {15, 1}};
        auto it = nodes_per_type.find(type);
        if (it == nodes_per_type.end())
          fail("msh reader: unsupported element type " + std::to_string(type) +
               " (triangles/tetrahedra only)");
        Elem e{type, phys, {}};
        for (int k = 0; k < it->second; ++k) {
          int nid;
          ls >> nid;
          e.nodes.push_back(node_index.at(nid));
        }
        if (type != 15) elems.push_back(std::move(e));
      }
    }
  }

  bool has_tets = false;
  for (const auto& e : elems) has_tets |= (e.type == 4);
  int dim = has_tets ? 3 : 2;

  PolyMesh mesh;
  mesh.dim = dim;
  for (const auto& p : nodes) {
    Vertex v;
    v.pos = p;
    if (dim == 2) v.pos.z() = 0;
    mesh.vertices.push_back(v);
  }

  auto key_of = [](std::vector<int> vs) {
    std::sort(vs.begin(), vs.end());
    return vs;
  };
  std::map<std::vector<int>, int> facet_index;

  int cell_type = dim == 3 ? 4 : 2;
  for (const auto& e : elems) {
    if (e.type != cell_type) continue;
    Cell c;
    std::vector<std::vector<int>> faces;
    if (dim == 3) {
      const auto& n = e.nodes;
      faces = {{n[1], n[2], n[3]}, {n[0], n[3], n[2]}, {n[0], n[1], n[3]}, {n[0], n[2], n[1]}};
    } else {
      const auto& n = e.nodes;
      faces = {{n[0], n[1]}, {n[1], n[2]}, {n[2], n[0]}};
    }
    for (auto& fv : faces) {
      auto key = key_of(fv);
      auto it = facet_index.find(key);
      int fi;
      if (it == facet_index.end()) {
        fi = (int)mesh.facets.size();
        facet_index[key] = fi;
        Facet f;
        f.vertices = fv;
        mesh.facets.push_back(std::move(f));
      } else {
        fi = it->second;
      }
      c.facets.push_back(fi);
    }
    mesh.cells.push_back(std::move(c));
  }

  int boundary_type = dim == 3 ? 2 : 1;
  for (const auto& e : elems) {
    if (e.type != boundary_type) continue;
    auto it = facet_index.find(key_of(e.nodes));
    if (it == facet_index.end()) continue;  // tagged entity not matching a cell face
    std::string name = physical_names.count(e.phys) ? physical_names[e.phys]
                                                    : "phys" + std::to_string(e.phys);
    mesh.facets[it->second].tag = name;
  }
  return mesh;
}

}  // namespace

PolyMesh load_mesh(const std::string& path, MeshFormat format) {
  if (format == MeshFormat::Auto) {
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".msh")
      format = MeshFormat::Msh2;
    else
      format = MeshFormat::NativeJson;
  }
  PolyMesh mesh =
      format == MeshFormat::Msh2 ? load_msh2(path) : load_native_json(path);
  mesh.finalize();
  mesh.validate();
  return mesh;
}

void write_mesh_json(const PolyMesh& mesh, const std::string& path) {
  json j;
  j["dimension"] = mesh.dim;
  json verts = json::array();
  for (const auto& v : mesh.vertices) {
    json p = json::array();
    for (int i = 0; i < mesh.dim; ++i) p.push_back(v.pos[i]);
    verts.push_back(p);
  }
  j["vertices"] = verts;
  json fs = json::array();
  for (const auto& f : mesh.facets) fs.push_back(f.vertices);
  j["facets"] = fs;
  json cs = json::array();
  for (const auto& c : mesh.cells) cs.push_back(c.facets);
  j["cells"] = cs;
  json tags;
  for (int fi = 0; fi < (int)mesh.facets.size(); ++fi)
    if (!mesh.facets[fi].tag.empty()) tags[mesh.facets[fi].tag].push_back(fi);
  j["boundary"] = tags;
  std::ofstream out(path);
  if (!out) fail("cannot write mesh file: " + path);
  out << j.dump(1) << "\n";
}

}  // namespace polydem
