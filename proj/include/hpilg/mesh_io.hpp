#pragma once

#include <iosfwd>
#include <string>

#include "hpilg/polygon_mesh.hpp"

namespace hpilg {

/// Plain-text mesh format:
///   <vertex count> <triangle count>
///   x y                    (one line per vertex, 17 significant digits)
///   i j k corner_flags     (one line per triangle, 0-based indices)
void write_mesh(std::ostream& out, const HpMesh& mesh);
void write_mesh(const std::string& path, const HpMesh& mesh);

/// Reads a mesh in the format above and validates it against `domain`.
/// Stored corner flags must agree with the recomputed ones.
HpMesh read_mesh(std::istream& in, const PolygonDomain& domain);
HpMesh read_mesh(const std::string& path, const PolygonDomain& domain);

}  // namespace hpilg
