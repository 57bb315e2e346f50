#include "hpilg/point_locator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hpilg/error.hpp"

namespace hpilg {

PointLocator::PointLocator(const HpMesh& mesh) : mesh_(&mesh) {
  lo_ = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  hi_ = {-lo_.x, -lo_.y};
  for (const Point2& v : mesh.vertices()) {
    lo_ = {std::min(lo_.x, v.x), std::min(lo_.y, v.y)};
    hi_ = {std::max(hi_.x, v.x), std::max(hi_.y, v.y)};
  }
  const int n = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(mesh.triangle_count()))));
  nx_ = ny_ = n;
  hx_ = (hi_.x - lo_.x) / nx_;
  hy_ = (hi_.y - lo_.y) / ny_;
  buckets_.assign(static_cast<std::size_t>(nx_) * ny_, {});
  maps_.reserve(mesh.triangle_count());
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    maps_.push_back(mesh.affine_map(t));
    const auto p = mesh.triangle_points(t);
    const int x0 = bucket_x(std::min({p[0].x, p[1].x, p[2].x}));
    const int x1 = bucket_x(std::max({p[0].x, p[1].x, p[2].x}));
    const int y0 = bucket_y(std::min({p[0].y, p[1].y, p[2].y}));
    const int y1 = bucket_y(std::max({p[0].y, p[1].y, p[2].y}));
    for (int j = y0; j <= y1; ++j)
      for (int i = x0; i <= x1; ++i) buckets_[static_cast<std::size_t>(j) * nx_ + i].push_back(static_cast<int>(t));
  }
}

int PointLocator::bucket_x(double x) const {
  return std::clamp(static_cast<int>(std::floor((x - lo_.x) / hx_)), 0, nx_ - 1);
}

int PointLocator::bucket_y(double y) const {
  return std::clamp(static_cast<int>(std::floor((y - lo_.y) / hy_)), 0, ny_ - 1);
}

std::vector<int> PointLocator::candidates(Point2 lo, Point2 hi) const {
  // Widen by a relative tolerance so that boundary-touching boxes are found.
  const double pad = 1e-12 * std::max(hi_.x - lo_.x, hi_.y - lo_.y);
  const int x0 = bucket_x(lo.x - pad), x1 = bucket_x(hi.x + pad);
  const int y0 = bucket_y(lo.y - pad), y1 = bucket_y(hi.y + pad);
  std::vector<int> out;
  for (int j = y0; j <= y1; ++j)
    for (int i = x0; i <= x1; ++i) {
      const auto& b = buckets_[static_cast<std::size_t>(j) * nx_ + i];
      out.insert(out.end(), b.begin(), b.end());
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Location PointLocator::locate(Point2 x) const {
  constexpr double tol = 1e-12;
  const auto& bucket = buckets_[static_cast<std::size_t>(bucket_y(x.y)) * nx_ + bucket_x(x.x)];
  for (int t : bucket) {
    const Point2 ref = maps_[t].inverse(x);
    if (ref.x >= -tol && ref.y >= -tol && ref.x + ref.y <= 1.0 + tol) return {t, ref};
  }

  const PolygonDomain& domain = mesh_->domain();
  const double scale = domain.diameter();
  if (!domain.contains(x, 1e-10 * scale))
    throw PointLocationError("point (" + std::to_string(x.x) + ", " + std::to_string(x.y) +
                             ") lies outside the domain");
  // Clamp onto the nearest triangle.
  int best = -1;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < mesh_->triangle_count(); ++t) {
    const auto p = mesh_->triangle_points(t);
    const double d = point_triangle_distance(x, p[0], p[1], p[2]);
    if (d < best_dist) {
      best_dist = d;
      best = static_cast<int>(t);
    }
  }
  if (best < 0 || best_dist > 1e-10 * scale)
    throw PointLocationError("no triangle within tolerance of point (" + std::to_string(x.x) + ", " +
                             std::to_string(x.y) + ")");
  Point2 ref = maps_[best].inverse(x);
  ref.x = std::max(ref.x, 0.0);
  ref.y = std::max(ref.y, 0.0);
  const double s = ref.x + ref.y;
  if (s > 1.0) ref = {ref.x / s, ref.y / s};
  return {best, ref};
}

Location locate_point(const HpMesh& mesh, Point2 x) { return PointLocator(mesh).locate(x); }

}  // namespace hpilg
