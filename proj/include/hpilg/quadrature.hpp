#pragma once

#include <vector>

#include "hpilg/geometry.hpp"

namespace hpilg {

struct GaussRule1D {
  std::vector<double> points;   ///< on [-1, 1], ascending
  std::vector<double> weights;  ///< sum to 2
};

/// n-point Gauss-Legendre rule, exact for degree 2n - 1.
GaussRule1D gauss_1d(int n);

/// Rule on the reference triangle {x, y >= 0, x + y <= 1}.
struct TriangleRule {
  int degree = 0;  ///< guaranteed exactness degree
  std::vector<Point2> points;
  std::vector<double> weights;  ///< positive, sum to 1/2

  std::size_t size() const { return points.size(); }
};

/// Collapsed (Duffy) tensor Gauss rule exact for all polynomials of total
/// degree <= d, with ceil((d + 2) / 2) points per direction.
TriangleRule triangle_rule(int d);

/// Exactness degree that covers the nonlinear form (2p(q+1)), the load term
/// with data of degree `data_degree` (data_degree + p) and the stiffness (2p).
int required_degree(int p, int q, int data_degree);

}  // namespace hpilg
