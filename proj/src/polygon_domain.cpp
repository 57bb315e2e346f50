#include "hpilg/polygon_domain.hpp"

#include <algorithm>
#include <numbers>

#include "hpilg/error.hpp"

namespace hpilg {

std::string to_string(BoundaryTag tag) {
  switch (tag) {
    case BoundaryTag::interior:
      return "interior";
    case BoundaryTag::dirichlet:
      return "dirichlet";
    case BoundaryTag::neumann:
      return "neumann";
  }
  return "unknown";
}

namespace {

bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d) {
  const double o1 = orient2d(a, b, c);
  const double o2 = orient2d(a, b, d);
  const double o3 = orient2d(c, d, a);
  const double o4 = orient2d(c, d, b);
  if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0)))
    return true;
  const auto on_segment = [](Point2 p, Point2 q, Point2 r) {
    return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
           r.y <= std::max(p.y, q.y);
  };
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

}  // namespace

PolygonDomain::PolygonDomain(std::vector<Point2> corners, std::vector<BoundaryTag> edge_tags)
    : corners_(std::move(corners)), tags_(std::move(edge_tags)) {
  const std::size_t m = corners_.size();
  if (m < 3) throw DomainError("polygon needs at least 3 corners");
  if (tags_.size() != m) throw DomainError("need exactly one boundary tag per polygon edge");
  bool has_dirichlet = false;
  for (BoundaryTag t : tags_) {
    if (t == BoundaryTag::interior) throw DomainError("polygon edges must be dirichlet or neumann");
    has_dirichlet = has_dirichlet || t == BoundaryTag::dirichlet;
  }
  if (!has_dirichlet) throw DomainError("the Dirichlet edge set must be nonempty");
  if (area() <= 0.0) throw DomainError("polygon corners must be in counterclockwise order");

  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == m - 1);
      if (adjacent) continue;
      if (segments_intersect(corners_[i], corners_[(i + 1) % m], corners_[j], corners_[(j + 1) % m]))
        throw DomainError("polygon is not simple: edges " + std::to_string(i) + " and " +
                          std::to_string(j) + " intersect");
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    const double w = interior_angle(i);
    if (!(w > 0.0 && w < 2.0 * std::numbers::pi) || std::abs(w - std::numbers::pi) < 1e-14)
      throw DomainError("corner " + std::to_string(i) + " has a degenerate interior angle");
  }
}

PolygonDomain PolygonDomain::unit_square() {
  return PolygonDomain({{0, 0}, {1, 0}, {1, 1}, {0, 1}},
                       std::vector<BoundaryTag>(4, BoundaryTag::dirichlet));
}

PolygonDomain PolygonDomain::l_shape() {
  return PolygonDomain({{-1, -1}, {0, -1}, {0, 0}, {1, 0}, {1, 1}, {-1, 1}},
                       std::vector<BoundaryTag>(6, BoundaryTag::dirichlet));
}

PolygonDomain PolygonDomain::with_dirichlet_edges(const std::vector<std::size_t>& dirichlet) const {
  std::vector<BoundaryTag> tags(corners_.size(), BoundaryTag::neumann);
  for (std::size_t e : dirichlet) {
    if (e >= tags.size()) throw DomainError("Dirichlet edge index " + std::to_string(e) + " out of range");
    tags[e] = BoundaryTag::dirichlet;
  }
  return PolygonDomain(corners_, std::move(tags));
}

std::vector<std::size_t> PolygonDomain::dirichlet_edges() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < tags_.size(); ++i)
    if (tags_[i] == BoundaryTag::dirichlet) out.push_back(i);
  return out;
}

std::vector<std::size_t> PolygonDomain::neumann_edges() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < tags_.size(); ++i)
    if (tags_[i] == BoundaryTag::neumann) out.push_back(i);
  return out;
}

double PolygonDomain::area() const {
  double twice = 0.0;
  const std::size_t m = corners_.size();
  for (std::size_t i = 0; i < m; ++i) twice += cross(corners_[i], corners_[(i + 1) % m]);
  return 0.5 * twice;
}

double PolygonDomain::interior_angle(std::size_t i) const {
  const std::size_t m = corners_.size();
  const Point2 prev = corners_[(i + m - 1) % m];
  const Point2 next = corners_[(i + 1) % m];
  const Point2 to_next = next - corners_[i];
  const Point2 to_prev = prev - corners_[i];
  // Counterclockwise angle from the outgoing edge to the incoming edge.
  double w = std::atan2(cross(to_next, to_prev), dot(to_next, to_prev));
  if (w < 0.0) w += 2.0 * std::numbers::pi;
  return w;
}

double PolygonDomain::diameter() const {
  double d = 0.0;
  for (const Point2& a : corners_)
    for (const Point2& b : corners_) d = std::max(d, distance(a, b));
  return d;
}

int PolygonDomain::edge_containing(Point2 x, double tol) const {
  const std::size_t m = corners_.size();
  for (std::size_t i = 0; i < m; ++i)
    if (point_segment_distance(x, corners_[i], corners_[(i + 1) % m]) <= tol) return static_cast<int>(i);
  return -1;
}

bool PolygonDomain::contains(Point2 x, double tol) const {
  if (edge_containing(x, tol) >= 0) return true;
  // Winding by ray crossing.
  bool inside = false;
  const std::size_t m = corners_.size();
  for (std::size_t i = 0, j = m - 1; i < m; j = i++) {
    const Point2 a = corners_[i];
    const Point2 b = corners_[j];
    if ((a.y > x.y) != (b.y > x.y)) {
      const double xc = a.x + (x.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (x.x < xc) inside = !inside;
    }
  }
  return inside;
}

}  // namespace hpilg
