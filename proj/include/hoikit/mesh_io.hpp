#pragma once

#include <string>

#include "hoikit/mesh.hpp"

namespace hoikit {

enum class PlyEncoding { binary_little_endian, ascii };

/// Loads an OBJ or PLY mesh. The format is sniffed from the file content
/// ("ply" magic), not the extension. Vertex order is preserved.
/// Throws IoError / ParseError / IndexRangeError.
TriMesh load_mesh(const std::string& path);

/// Saves by extension: ".obj" writes Wavefront OBJ (labels are not
/// representable there and are dropped with a warning), anything else writes
/// PLY with an optional `label` integer vertex property.
void save_mesh(const TriMesh& mesh, const std::string& path,
               PlyEncoding encoding = PlyEncoding::binary_little_endian);

}  // namespace hoikit
