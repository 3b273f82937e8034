#pragma once

#include "polydem/mesh.hpp"

#include <string>
#include <vector>

namespace polydem {

/// Deterministic CSV writer: header row, fixed 9 significant digits.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  void row(const std::vector<double>& values);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::string buffer_;
  size_t columns_ = 0;
};

std::vector<std::vector<double>> read_csv(const std::string& path,
                                          std::vector<std::string>* header = nullptr);

struct VtkField {
  std::string name;
  std::vector<double> values;  // ncells (scalar) or 3*ncells (vector)
  bool vector = false;
};

/// Legacy ASCII VTK unstructured grid with per-cell data (polygons in 2D,
/// tetrahedra or polyhedron face streams in 3D).
void write_vtk(const PolyMesh& mesh, const std::vector<VtkField>& fields,
               const std::string& path);

}  // namespace polydem
