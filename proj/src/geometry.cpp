#include "hpilg/geometry.hpp"

#include <algorithm>
#include <numbers>

namespace hpilg {

double triangle_area(Point2 a, Point2 b, Point2 c) { return 0.5 * orient2d(a, b, c); }

double triangle_diameter(Point2 a, Point2 b, Point2 c) {
  return std::max({distance(a, b), distance(b, c), distance(c, a)});
}

double triangle_min_angle(Point2 a, Point2 b, Point2 c) {
  const std::array<Point2, 3> v{a, b, c};
  double best = std::numbers::pi;
  for (int i = 0; i < 3; ++i) {
    const Point2 e1 = v[(i + 1) % 3] - v[i];
    const Point2 e2 = v[(i + 2) % 3] - v[i];
    const double angle = std::atan2(std::abs(cross(e1, e2)), dot(e1, e2));
    best = std::min(best, angle);
  }
  return best;
}

double point_segment_distance(Point2 x, Point2 a, Point2 b) {
  const Point2 d = b - a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return distance(x, a);
  const double t = std::clamp(dot(x - a, d) / len2, 0.0, 1.0);
  return distance(x, a + t * d);
}

double point_triangle_distance(Point2 x, Point2 a, Point2 b, Point2 c) {
  const double o1 = orient2d(a, b, x);
  const double o2 = orient2d(b, c, x);
  const double o3 = orient2d(c, a, x);
  if (o1 >= 0.0 && o2 >= 0.0 && o3 >= 0.0) return 0.0;
  return std::min({point_segment_distance(x, a, b), point_segment_distance(x, b, c),
                   point_segment_distance(x, c, a)});
}

AffineMap::AffineMap(Point2 a, Point2 b, Point2 c) : offset_(a) {
  const Point2 e1 = b - a;
  const Point2 e2 = c - a;
  b_ = {e1.x, e1.y, e2.x, e2.y};
  det_ = e1.x * e2.y - e2.x * e1.y;
  const double inv = 1.0 / det_;
  binv_ = {e2.y * inv, -e2.x * inv, -e1.y * inv, e1.x * inv};
}

Point2 AffineMap::forward(Point2 ref) const {
  return {offset_.x + b_[0] * ref.x + b_[2] * ref.y, offset_.y + b_[1] * ref.x + b_[3] * ref.y};
}

Point2 AffineMap::inverse(Point2 phys) const {
  const Point2 d = phys - offset_;
  return {binv_[0] * d.x + binv_[1] * d.y, binv_[2] * d.x + binv_[3] * d.y};
}

}  // namespace hpilg
