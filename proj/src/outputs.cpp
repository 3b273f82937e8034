#include "polydem/outputs.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace polydem {

namespace {

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : path_(path), columns_(header.size()) {
  std::ofstream out(path_);
  if (!out) fail("cannot write CSV file: " + path_);
  for (size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_) fail("CSV row width mismatch in " + path_);
  std::ofstream out(path_, std::ios::app);
  if (!out) fail("cannot append to CSV file: " + path_);
  for (size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << fmt9(values[i]);
  out << "\n";
}

std::vector<std::vector<double>> read_csv(const std::string& path,
                                          std::vector<std::string>* header) {
  std::ifstream in(path);
  if (!in) fail("cannot read CSV file: " + path);
  std::string line;
  std::vector<std::vector<double>> rows;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        cells.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    cells.push_back(cur);
    if (first) {
      if (header) *header = cells;
      first = false;
      continue;
    }
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(std::stod(c));
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_vtk(const PolyMesh& mesh, const std::vector<VtkField>& fields,
               const std::string& path) {
  std::ofstream out(path);
  if (!out) fail("cannot write VTK file: " + path);
  out << "# vtk DataFile Version 3.0\n";
  out << "polydem fields\n";
  out << "ASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.vertices.size() << " double\n";
  for (const auto& v : mesh.vertices)
    out << fmt9(v.pos.x()) << " " << fmt9(v.pos.y()) << " " << fmt9(v.pos.z()) << "\n";

  std::vector<std::vector<int>> conn(mesh.cells.size());
  std::vector<int> types(mesh.cells.size());
  for (int c = 0; c < (int)mesh.cells.size(); ++c) {
    if (mesh.dim == 2) {
      conn[c] = mesh.cell_vertex_loop(c);
      types[c] = 7;  // VTK_POLYGON
    } else {
      const Cell& cell = mesh.cells[c];
      bool tet = cell.facets.size() == 4;
      for (int fi : cell.facets) tet &= mesh.facets[fi].vertices.size() == 3;
      if (tet) {
        std::vector<int> vs;
        for (int fi : cell.facets)
          for (int v : mesh.facets[fi].vertices)
            if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
        // orient positively
        const Vec3 &a = mesh.vertices[vs[0]].pos, &b = mesh.vertices[vs[1]].pos,
                   &cc = mesh.vertices[vs[2]].pos, &d = mesh.vertices[vs[3]].pos;
        if ((b - a).cross(cc - a).dot(d - a) < 0) std::swap(vs[2], vs[3]);
        conn[c] = vs;
        types[c] = 10;  // VTK_TETRA
      } else {
        // polyhedron face stream: nFaces, then (nPts, ids...) per face
        std::vector<int>& stream = conn[c];
        stream.push_back((int)cell.facets.size());
        for (int fi : cell.facets) {
          stream.push_back((int)mesh.facets[fi].vertices.size());
          for (int v : mesh.facets[fi].vertices) stream.push_back(v);
        }
        types[c] = 42;  // VTK_POLYHEDRON
      }
    }
  }
  size_t total = 0;
  for (const auto& c : conn) total += c.size() + 1;
  out << "CELLS " << mesh.cells.size() << " " << total << "\n";
  for (const auto& c : conn) {
    out << c.size();
    for (int v : c) out << " " << v;
    out << "\n";
  }
  out << "CELL_TYPES " << mesh.cells.size() << "\n";
  for (int t : types) out << t << "\n";

  if (!fields.empty()) {
    out << "CELL_DATA " << mesh.cells.size() << "\n";
    for (const auto& f : fields) {
      if (f.vector) {
        if (f.values.size() != 3 * mesh.cells.size())
          fail("VTK vector field '" + f.name + "' has the wrong size");
        out << "VECTORS " << f.name << " double\n";
        for (size_t c = 0; c < mesh.cells.size(); ++c)
          out << fmt9(f.values[3 * c]) << " " << fmt9(f.values[3 * c + 1]) << " "
              << fmt9(f.values[3 * c + 2]) << "\n";
      } else {
        if (f.values.size() != mesh.cells.size())
          fail("VTK scalar field '" + f.name + "' has the wrong size");
        out << "SCALARS " << f.name << " double 1\n";
        out << "LOOKUP_TABLE default\n";
        for (double v : f.values) out << fmt9(v) << "\n";
      }
    }
  }
}

}  // namespace polydem
