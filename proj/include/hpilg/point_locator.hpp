#pragma once

#include <vector>

#include "hpilg/polygon_mesh.hpp"

namespace hpilg {

struct Location {
  int triangle = -1;
  Point2 ref;  ///< coordinates in the reference triangle
};

/// Uniform bucket grid over the mesh bounding box. Holds a pointer to the
/// mesh, which must outlive the locator.
class PointLocator {
 public:
  explicit PointLocator(const HpMesh& mesh);

  /// Triangle containing x, lowest index first on ties. Points slightly
  /// outside the mesh (within 1e-10 of the polygon) are clamped onto the
  /// nearest triangle; anything farther throws PointLocationError.
  Location locate(Point2 x) const;

  /// Ascending indices of triangles whose bounding box meets [lo, hi].
  std::vector<int> candidates(Point2 lo, Point2 hi) const;

  const HpMesh& mesh() const { return *mesh_; }

 private:
  int bucket_x(double x) const;
  int bucket_y(double y) const;

  const HpMesh* mesh_;
  Point2 lo_, hi_;
  int nx_ = 1, ny_ = 1;
  double hx_ = 1.0, hy_ = 1.0;
  std::vector<std::vector<int>> buckets_;
  std::vector<AffineMap> maps_;
};

Location locate_point(const HpMesh& mesh, Point2 x);

}  // namespace hpilg
