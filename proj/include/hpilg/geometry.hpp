#pragma once

#include <array>
#include <cmath>

namespace hpilg {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point2 a, Point2 b) = default;
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline Point2 midpoint(Point2 a, Point2 b) { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }

/// Twice the signed area of (a, b, c); positive for counterclockwise order.
inline double orient2d(Point2 a, Point2 b, Point2 c) { return cross(b - a, c - a); }

double triangle_area(Point2 a, Point2 b, Point2 c);
double triangle_diameter(Point2 a, Point2 b, Point2 c);
/// Smallest interior angle in radians.
double triangle_min_angle(Point2 a, Point2 b, Point2 c);
double point_segment_distance(Point2 x, Point2 a, Point2 b);
/// Distance from x to the closed triangle (zero inside).
double point_triangle_distance(Point2 x, Point2 a, Point2 b, Point2 c);

/// Affine map from the reference triangle {x, y >= 0, x + y <= 1} onto a
/// physical triangle: x = offset + matrix * xi.
class AffineMap {
 public:
  AffineMap(Point2 a, Point2 b, Point2 c);

  Point2 forward(Point2 ref) const;
  Point2 inverse(Point2 phys) const;

  double det() const { return det_; }
  /// Column-major 2x2 entries of B.
  const std::array<double, 4>& matrix() const { return b_; }
  /// Entries of B^{-1} (row-major).
  const std::array<double, 4>& inverse_matrix() const { return binv_; }
  /// Maps a reference gradient to the physical gradient, B^{-T} g.
  Point2 push_gradient(double gx, double gy) const {
    return {binv_[0] * gx + binv_[2] * gy, binv_[1] * gx + binv_[3] * gy};
  }
  Point2 offset() const { return offset_; }

 private:
  Point2 offset_;
  std::array<double, 4> b_{};     // b00, b10, b01, b11
  std::array<double, 4> binv_{};  // i00, i01, i10, i11
  double det_ = 0.0;
};

}  // namespace hpilg
