#include "hpilg/hp_space.hpp"

#include <stdexcept>

namespace hpilg {

HpSpace::HpSpace(HpMesh mesh, int p) : mesh_(std::move(mesh)), p_(p), shapes_(p) {
  const std::size_t nv = mesh_.vertex_count();
  const std::size_t ne = mesh_.edge_count();
  const std::size_t nt = mesh_.triangle_count();

  std::vector<char> vertex_constrained(nv, 0);
  for (const MeshEdge& e : mesh_.edges())
    if (e.tag == BoundaryTag::dirichlet) {
      vertex_constrained[e.vertices[0]] = 1;
      vertex_constrained[e.vertices[1]] = 1;
    }

  int next = 0;
  vertex_dof_.assign(nv, -1);
  for (std::size_t v = 0; v < nv; ++v)
    if (!vertex_constrained[v]) vertex_dof_[v] = next++;
  edge_dof_.assign(ne, -1);
  if (p_ >= 2)
    for (std::size_t e = 0; e < ne; ++e)
      if (mesh_.edges()[e].tag != BoundaryTag::dirichlet) {
        edge_dof_[e] = next;
        next += p_ - 1;
      }
  n_skeleton_ = static_cast<std::size_t>(next);
  const int n_interior = static_cast<int>(shapes_.interior_mode_count());
  interior_start_.assign(nt, -1);
  for (std::size_t t = 0; t < nt; ++t) {
    if (n_interior == 0) continue;
    interior_start_[t] = next;
    next += n_interior;
  }
  n_free_ = static_cast<std::size_t>(next);
  n_total_ = nv + ne * static_cast<std::size_t>(p_ - 1) + nt * static_cast<std::size_t>(n_interior);

  const std::size_t m = shapes_.size();
  dofs_.assign(nt * m, -1);
  signs_.assign(nt * m, 1.0);
  for (std::size_t t = 0; t < nt; ++t) {
    const Triangle& tri = mesh_.triangles()[t];
    int* dofs = dofs_.data() + t * m;
    double* signs = signs_.data() + t * m;
    for (int v = 0; v < 3; ++v) dofs[shapes_.vertex_mode(v)] = vertex_dof_[tri[v]];
    for (int e = 0; e < 3; ++e) {
      const int edge = mesh_.triangle_edges(t)[e];
      // Global edge direction runs from the lower to the higher vertex index.
      const int orientation = tri[e] < tri[(e + 1) % 3] ? 1 : -1;
      for (int r = 2; r <= p_; ++r) {
        const int mode = shapes_.edge_mode(e, r);
        dofs[mode] = edge_dof(static_cast<std::size_t>(edge), r);
        signs[mode] = edge_orientation_sign(p_, orientation, r);
      }
    }
    const auto& interior = shapes_.interior_modes();
    for (std::size_t s = 0; s < interior.size(); ++s) dofs[interior[s]] = interior_start_[t] + static_cast<int>(s);
  }
}

HpSpace build_space(const HpMesh& mesh, int p) {
  if (p < 1) throw std::invalid_argument("build_space: degree must be at least 1");
  return HpSpace(mesh, p);
}

}  // namespace hpilg
