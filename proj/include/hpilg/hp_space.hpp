#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hpilg/hp_basis.hpp"
#include "hpilg/polygon_mesh.hpp"

namespace hpilg {

/// Continuous piecewise polynomials of uniform degree p on an HpMesh with
/// homogeneous Dirichlet conditions on the Dirichlet-tagged edges.
///
/// Free DOFs are numbered vertices first, then edges (p-1 each, by order),
/// then element interiors, each group in index order. Vertex and edge DOFs
/// form the skeleton block [0, skeleton_count()); interior DOFs follow.
/// Constrained DOFs have index -1.
class HpSpace {
 public:
  HpSpace(HpMesh mesh, int p);

  const HpMesh& mesh() const { return mesh_; }
  int degree() const { return p_; }
  const ShapeTable& shapes() const { return shapes_; }
  std::size_t local_size() const { return shapes_.size(); }

  std::size_t free_count() const { return n_free_; }
  std::size_t skeleton_count() const { return n_skeleton_; }
  std::size_t interior_count() const { return n_free_ - n_skeleton_; }
  /// All DOFs including the Dirichlet-constrained ones.
  std::size_t total_count() const { return n_total_; }
  std::size_t constrained_count() const { return n_total_ - n_free_; }

  /// Global free index per local mode of triangle t (-1 if constrained).
  std::span<const int> element_dofs(std::size_t t) const {
    return {dofs_.data() + t * local_size(), local_size()};
  }
  /// Orientation sign (+1 or -1) per local mode of triangle t.
  std::span<const double> element_signs(std::size_t t) const {
    return {signs_.data() + t * local_size(), local_size()};
  }

  int vertex_dof(std::size_t v) const { return vertex_dof_[v]; }
  /// Global index of the order-r DOF on mesh edge e, or -1.
  int edge_dof(std::size_t e, int r) const {
    return edge_dof_[e] < 0 ? -1 : edge_dof_[e] + (r - 2);
  }
  int interior_dof_start(std::size_t t) const { return interior_start_[t]; }

 private:
  HpMesh mesh_;
  int p_;
  ShapeTable shapes_;
  std::size_t n_free_ = 0;
  std::size_t n_skeleton_ = 0;
  std::size_t n_total_ = 0;
  std::vector<int> vertex_dof_;
  std::vector<int> edge_dof_;
  std::vector<int> interior_start_;
  std::vector<int> dofs_;
  std::vector<double> signs_;
};

HpSpace build_space(const HpMesh& mesh, int p);

}  // namespace hpilg
