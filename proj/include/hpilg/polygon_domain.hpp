#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hpilg/geometry.hpp"

namespace hpilg {

enum class BoundaryTag : std::uint8_t { interior, dirichlet, neumann };

std::string to_string(BoundaryTag tag);

/// Simple polygon with straight edges, corners in counterclockwise order.
/// Edge i joins corner i to corner (i + 1) mod m and is tagged Dirichlet or
/// Neumann; at least one edge must be Dirichlet.
class PolygonDomain {
 public:
  PolygonDomain(std::vector<Point2> corners, std::vector<BoundaryTag> edge_tags);

  /// Unit square (0,1)^2.
  static PolygonDomain unit_square();
  /// (-1,1)^2 minus [0,1) x (-1,0].
  static PolygonDomain l_shape();

  /// Same polygon, new Dirichlet set; every other edge becomes Neumann.
  PolygonDomain with_dirichlet_edges(const std::vector<std::size_t>& dirichlet) const;

  std::size_t corner_count() const { return corners_.size(); }
  const std::vector<Point2>& corners() const { return corners_; }
  Point2 corner(std::size_t i) const { return corners_[i]; }
  BoundaryTag edge_tag(std::size_t i) const { return tags_[i]; }
  const std::vector<BoundaryTag>& edge_tags() const { return tags_; }
  std::vector<std::size_t> dirichlet_edges() const;
  std::vector<std::size_t> neumann_edges() const;

  double area() const;
  /// Interior angle at corner i in (0, 2 pi).
  double interior_angle(std::size_t i) const;
  double diameter() const;
  /// Closed-polygon membership with absolute tolerance `tol`.
  bool contains(Point2 x, double tol = 1e-12) const;
  /// Index of the edge containing x within `tol`, or -1.
  int edge_containing(Point2 x, double tol) const;

 private:
  std::vector<Point2> corners_;
  std::vector<BoundaryTag> tags_;
};

}  // namespace hpilg
