#pragma once

#include "polydem/mesh.hpp"

#include <string>

namespace polydem {

enum class MeshFormat { Auto, NativeJson, Msh2 };

/// Loads a mesh, computes the derived geometry and validates it.
/// Format is inferred from the extension (.json / .msh) unless forced.
PolyMesh load_mesh(const std::string& path, MeshFormat format = MeshFormat::Auto);

/// Writes the native JSON mesh schema (see README for the layout).
void write_mesh_json(const PolyMesh& mesh, const std::string& path);

}  // namespace polydem
