#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hpilg/geometry.hpp"
#include "hpilg/polygon_domain.hpp"

namespace hpilg {

using Triangle = std::array<int, 3>;

struct MeshEdge {
  std::array<int, 2> vertices{};     // vertices[0] < vertices[1]
  std::array<int, 2> triangles{-1, -1};  // triangles[1] == -1 on the boundary
  BoundaryTag tag = BoundaryTag::interior;
  int domain_edge = -1;
};

struct MeshViolation {
  enum class Kind { conformity, orientation, grading, corner_size, min_angle };
  Kind kind;
  int element;  ///< offending triangle, -1 when not element specific
  std::string detail;
};

std::string to_string(MeshViolation::Kind kind);

struct GeometricReport {
  std::vector<MeshViolation> violations;
  /// Extremes of diam(T)/dist(T, corners) over triangles not touching a corner.
  double max_grading_ratio = 0.0;
  double min_grading_ratio = 0.0;
  /// Smallest C with diam(T) <= C sigma^k for every corner triangle T.
  double corner_constant = 0.0;
  double min_angle_deg = 0.0;

  bool ok() const { return violations.empty(); }
};

/// Bounds used by `validate_geometric`. Grading ratios must lie in
/// [sigma / family_constant, family_constant / sigma]; corner triangles must
/// satisfy diam(T) <= corner_factor * d_1 * sigma^(k-1), with d_1 the
/// initial corner diameter.
struct GeometricTolerance {
  double family_constant = 1.0 + 1e-9;
  double corner_factor = 1.0 + 1e-12;
  double min_angle_deg = 10.0;
};

/// Built-in starting triangulations.
enum class BuiltinMesh {
  square_32,  ///< unit square, 4x4 cells, each split in two
  lshape_24,  ///< L-shape, twelve 1/2-cells, each split in two
  square_2,   ///< unit square split along one diagonal
};

/// Conforming triangulation of a polygon, geometrically refined toward all
/// domain corners by red refinement with transient green closure.
///
/// The mesh is a value type and immutable once built. Besides the conforming
/// triangles it keeps the red (closure-free) triangulation and the midpoint
/// table, so that `refine_corner_layer` can undo the green closure before
/// refining again.
class HpMesh {
 public:
  /// Grading factor produced by midpoint subdivision.
  static constexpr double sigma = 0.5;
  /// Minimum interior angle allowed after refinement, in degrees.
  static constexpr double min_angle_floor_deg = 10.0;

  /// Validates an explicit triangle list against the domain: conformity,
  /// orientation, tiling, and that every domain corner is a vertex.
  HpMesh(PolygonDomain domain, std::vector<Point2> vertices, std::vector<Triangle> triangles);

  /// Builds the edge tables without rejecting invalid input; problems are
  /// kept and surface through `validate_geometric`. Diagnostic use only.
  static HpMesh unchecked(PolygonDomain domain, std::vector<Point2> vertices,
                          std::vector<Triangle> triangles);

  const PolygonDomain& domain() const { return domain_; }
  const std::vector<Point2>& vertices() const { return vertices_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<MeshEdge>& edges() const { return edges_; }
  /// Edge indices of triangle t; local edge e joins local vertices e and (e+1) mod 3.
  const std::array<int, 3>& triangle_edges(std::size_t t) const { return triangle_edges_[t]; }
  /// Bitmask of domain corners touched by triangle t (bit i = corner i).
  std::uint64_t corner_flags(std::size_t t) const { return corner_flags_[t]; }
  const std::vector<std::uint64_t>& corner_flags() const { return corner_flags_; }
  /// Mesh vertex index of domain corner i.
  int corner_vertex(std::size_t i) const { return corner_vertices_[i]; }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t triangle_count() const { return triangles_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  int layer_count() const { return layer_count_; }
  /// Largest diameter among the corner triangles of the starting mesh.
  double initial_corner_diameter() const { return initial_corner_diameter_; }

  std::array<Point2, 3> triangle_points(std::size_t t) const;
  AffineMap affine_map(std::size_t t) const { return {vertices_[triangles_[t][0]], vertices_[triangles_[t][1]], vertices_[triangles_[t][2]]}; }
  double triangle_area(std::size_t t) const;
  double triangle_diameter(std::size_t t) const;
  double total_area() const;
  /// Number of triangles in the red triangulation that are not green halves.
  std::size_t red_triangle_count() const { return red_triangles_.size(); }

  friend HpMesh refine_corner_layer(const HpMesh& mesh);

 private:
  HpMesh() = default;
  static HpMesh from_red(PolygonDomain domain, std::vector<Point2> vertices,
                         std::vector<Triangle> red, std::map<std::pair<int, int>, int> midpoints,
                         int layer_count, double initial_corner_diameter);
  /// Fills edges, corner data and tags; returns every conformity problem
  /// found, or throws on the first one when `strict`.
  std::vector<MeshViolation> derive_tables(bool strict);

  PolygonDomain domain_ = PolygonDomain::unit_square();
  std::vector<Point2> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<MeshEdge> edges_;
  std::vector<std::array<int, 3>> triangle_edges_;
  std::vector<std::uint64_t> corner_flags_;
  std::vector<int> corner_vertices_;
  int layer_count_ = 1;
  double initial_corner_diameter_ = 0.0;

  std::vector<Triangle> red_triangles_;
  std::map<std::pair<int, int>, int> midpoints_;
  std::vector<MeshViolation> construction_issues_;

  friend GeometricReport validate_geometric(const HpMesh&, const GeometricTolerance&);
};

/// Builds one of the built-in starting meshes on `domain`. The domain's
/// corners must match the built-in geometry; its edge tags are kept.
HpMesh build_initial_mesh(const PolygonDomain& domain, BuiltinMesh which);
HpMesh build_initial_mesh(const PolygonDomain& domain, std::vector<Point2> vertices,
                          std::vector<Triangle> triangles);

/// Adds one geometric layer: removes the green closure, red-refines every
/// triangle touching a domain corner, restores 1-irregularity, and closes
/// the remaining hanging nodes with green bisections.
HpMesh refine_corner_layer(const HpMesh& mesh);
/// Convenience overload; `domain` must be the mesh's own domain.
HpMesh refine_corner_layer(const HpMesh& mesh, const PolygonDomain& domain);

/// Starting mesh refined until it carries `layers` corner layers.
HpMesh build_geometric_mesh(const PolygonDomain& domain, BuiltinMesh which, int layers);
HpMesh build_geometric_mesh(HpMesh initial, int layers);

/// Starting mesh of a general simple polygon by ear clipping, using only
/// the polygon corners as vertices.
HpMesh triangulate_polygon(const PolygonDomain& domain);

GeometricReport validate_geometric(const HpMesh& mesh, const GeometricTolerance& tol = {});

}  // namespace hpilg
