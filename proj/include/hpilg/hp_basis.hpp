#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hpilg/geometry.hpp"

namespace hpilg {

enum class ModeKind : std::uint8_t { vertex, edge, interior };

struct Mode {
  ModeKind kind;
  int entity;  ///< local vertex or local edge (0..2); -1 for interior modes
  int order;   ///< polynomial degree of the mode
  int slot;    ///< position within its entity: 0 for vertices, order-2 for edges,
               ///< running index for interior modes
};

/// Values and reference gradients of all modes at one point.
struct BasisValues {
  std::vector<double> value;
  std::vector<double> dx;
  std::vector<double> dy;
};

/// Hierarchic shape functions of total degree p on the reference triangle
/// with vertices (0,0), (1,0), (0,1):
///   vertex v:          lambda_v
///   edge e, order r:   lambda_a lambda_b kappa_{r-2}(lambda_b - lambda_a),
///                      (a, b) = (e, e+1 mod 3); its trace is the Lobatto
///                      function l_r on the edge run from a to b
///   interior (i, j):   lambda_0 lambda_1 lambda_2 kappa_i(lambda_2 - lambda_1)
///                      kappa_j(lambda_1 - lambda_0),  i + j <= p - 3
/// Modes are ordered by degree, so the first (p)(p+1)/2 modes of the table
/// for p are exactly the table for p - 1.
class ShapeTable {
 public:
  explicit ShapeTable(int p);

  int degree() const { return p_; }
  std::size_t size() const { return modes_.size(); }
  const std::vector<Mode>& modes() const { return modes_; }
  const Mode& mode(std::size_t i) const { return modes_[i]; }

  int vertex_mode(int v) const { return vertex_modes_[v]; }
  /// Table index of the order-r mode on local edge e, 2 <= r <= p.
  int edge_mode(int e, int r) const { return edge_modes_[e][r - 2]; }
  /// Table indices of interior modes in slot order.
  const std::vector<int>& interior_modes() const { return interior_modes_; }
  /// Table indices of vertex and edge modes in table order.
  const std::vector<int>& skeleton_modes() const { return skeleton_modes_; }

  std::size_t edge_mode_count() const { return 3 * static_cast<std::size_t>(p_ - 1); }
  std::size_t interior_mode_count() const { return interior_modes_.size(); }

  /// Fills values and reference gradients; spans must have size() entries.
  /// Throws if `ref` lies outside the reference triangle by more than 1e-12.
  void eval(Point2 ref, std::span<double> value, std::span<double> dx, std::span<double> dy) const;
  BasisValues eval(Point2 ref) const;

 private:
  int p_;
  std::vector<Mode> modes_;
  std::vector<int> vertex_modes_;
  std::vector<std::vector<int>> edge_modes_;
  std::vector<int> interior_modes_;
  std::vector<int> skeleton_modes_;
  std::vector<std::pair<int, int>> interior_indices_;  // (i, j) per interior slot
};

/// Kernel functions kappa_k, k = 0..kmax, and their derivatives at xi.
/// kappa_k(xi) (1 - xi^2) / 4 = l_{k+2}(xi), the Lobatto function.
void lobatto_kernels(double xi, int kmax, std::span<double> kappa, std::span<double> dkappa);

/// Lobatto function l_r(xi) = (P_r(xi) - P_{r-2}(xi)) / sqrt(2 (2r - 1)), r >= 2.
double lobatto(int r, double xi);

/// Coefficient sign that makes an edge mode of order r conforming when the
/// local edge direction disagrees with the global one (orientation = -1).
int edge_orientation_sign(int p, int orientation, int r);

}  // namespace hpilg
