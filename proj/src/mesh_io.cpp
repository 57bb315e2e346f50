#include "hpilg/mesh_io.hpp"

#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>

#include "hpilg/error.hpp"

namespace hpilg {

void write_mesh(std::ostream& out, const HpMesh& mesh) {
  out << mesh.vertex_count() << ' ' << mesh.triangle_count() << '\n';
  out << std::setprecision(17);
  for (const Point2& v : mesh.vertices()) out << v.x << ' ' << v.y << '\n';
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const Triangle& tri = mesh.triangles()[t];
    out << tri[0] << ' ' << tri[1] << ' ' << tri[2] << ' ' << mesh.corner_flags(t) << '\n';
  }
}

void write_mesh(const std::string& path, const HpMesh& mesh) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_mesh(out, mesh);
  if (!out) throw Error("failed writing mesh to '" + path + "'");
}

HpMesh read_mesh(std::istream& in, const PolygonDomain& domain) {
  std::size_t nv = 0, nt = 0;
  if (!(in >> nv >> nt)) throw MeshError("mesh file: missing vertex/triangle counts");
  std::vector<Point2> vertices(nv);
  for (auto& v : vertices)
    if (!(in >> v.x >> v.y)) throw MeshError("mesh file: truncated vertex list");
  std::vector<Triangle> triangles(nt);
  std::vector<std::uint64_t> flags(nt);
  for (std::size_t t = 0; t < nt; ++t)
    if (!(in >> triangles[t][0] >> triangles[t][1] >> triangles[t][2] >> flags[t]))
      throw MeshError("mesh file: truncated triangle list");
  HpMesh mesh(domain, std::move(vertices), std::move(triangles));
  for (std::size_t t = 0; t < nt; ++t)
    if (mesh.corner_flags(t) != flags[t])
      throw MeshError("mesh file: corner flags of triangle " + std::to_string(t) +
                      " disagree with the domain corners");
  return mesh;
}

HpMesh read_mesh(const std::string& path, const PolygonDomain& domain) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open mesh file '" + path + "'");
  return read_mesh(in, domain);
}

}  // namespace hpilg
