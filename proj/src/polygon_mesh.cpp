#include "hpilg/polygon_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hpilg/error.hpp"

namespace hpilg {

std::string to_string(MeshViolation::Kind kind) {
  switch (kind) {
    case MeshViolation::Kind::conformity:
      return "conformity";
    case MeshViolation::Kind::orientation:
      return "orientation";
    case MeshViolation::Kind::grading:
      return "grading";
    case MeshViolation::Kind::corner_size:
      return "corner_size";
    case MeshViolation::Kind::min_angle:
      return "min_angle";
  }
  return "unknown";
}

namespace {

std::pair<int, int> edge_key(int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

double rad_to_deg(double r) { return r * 180.0 / std::numbers::pi; }

double initial_corner_diameter_of(const std::vector<Point2>& v, const std::vector<Triangle>& tris,
                                  const std::vector<std::uint64_t>& flags) {
  double d = 0.0;
  for (std::size_t t = 0; t < tris.size(); ++t)
    if (flags[t] != 0)
      d = std::max(d, triangle_diameter(v[tris[t][0]], v[tris[t][1]], v[tris[t][2]]));
  return d;
}

}  // namespace

HpMesh::HpMesh(PolygonDomain domain, std::vector<Point2> vertices, std::vector<Triangle> triangles)
    : domain_(std::move(domain)), vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
  derive_tables(/*strict=*/true);
  red_triangles_ = triangles_;
  initial_corner_diameter_ = initial_corner_diameter_of(vertices_, triangles_, corner_flags_);
}

HpMesh HpMesh::unchecked(PolygonDomain domain, std::vector<Point2> vertices,
                         std::vector<Triangle> triangles) {
  HpMesh mesh;
  mesh.domain_ = std::move(domain);
  mesh.vertices_ = std::move(vertices);
  mesh.triangles_ = std::move(triangles);
  mesh.construction_issues_ = mesh.derive_tables(/*strict=*/false);
  mesh.red_triangles_ = mesh.triangles_;
  mesh.initial_corner_diameter_ =
      initial_corner_diameter_of(mesh.vertices_, mesh.triangles_, mesh.corner_flags_);
  return mesh;
}

std::vector<MeshViolation> HpMesh::derive_tables(bool strict) {
  std::vector<MeshViolation> issues;
  const auto report = [&](MeshViolation::Kind kind, int element, std::string detail) {
    if (strict) throw MeshError(detail);
    issues.push_back({kind, element, std::move(detail)});
  };

  const int nv = static_cast<int>(vertices_.size());
  const double scale = domain_.diameter();
  const double tol = 1e-10 * scale;

  std::vector<char> used(vertices_.size(), 0);
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    for (int v : triangles_[t]) {
      if (v < 0 || v >= nv) throw MeshError("triangle " + std::to_string(t) + " references a missing vertex");
      used[v] = 1;
    }
    const auto& tri = triangles_[t];
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
      report(MeshViolation::Kind::conformity, static_cast<int>(t),
             "triangle " + std::to_string(t) + " repeats a vertex");
    if (orient2d(vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]) <= 0.0)
      report(MeshViolation::Kind::orientation, static_cast<int>(t),
             "triangle " + std::to_string(t) + " is not positively oriented");
  }
  for (int v = 0; v < nv; ++v)
    if (!used[v]) report(MeshViolation::Kind::conformity, -1, "vertex " + std::to_string(v) + " is unused");

  // Edges in order of first appearance.
  edges_.clear();
  triangle_edges_.assign(triangles_.size(), {-1, -1, -1});
  std::map<std::pair<int, int>, int> index;
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    for (int e = 0; e < 3; ++e) {
      const int a = triangles_[t][e];
      const int b = triangles_[t][(e + 1) % 3];
      const auto key = edge_key(a, b);
      auto [it, inserted] = index.try_emplace(key, static_cast<int>(edges_.size()));
      if (inserted) {
        MeshEdge edge;
        edge.vertices = {key.first, key.second};
        edge.triangles = {static_cast<int>(t), -1};
        edges_.push_back(edge);
      } else {
        MeshEdge& edge = edges_[it->second];
        if (edge.triangles[1] != -1) {
          report(MeshViolation::Kind::conformity, static_cast<int>(t),
                 "edge (" + std::to_string(a) + "," + std::to_string(b) +
                     ") is shared by more than two triangles");
        } else {
          edge.triangles[1] = static_cast<int>(t);
          // Both triangles positively oriented implies opposite traversal.
          const auto& other = triangles_[edge.triangles[0]];
          for (int f = 0; f < 3; ++f)
            if (other[f] == a && other[(f + 1) % 3] == b)
              report(MeshViolation::Kind::conformity, static_cast<int>(t),
                     "triangles " + std::to_string(edge.triangles[0]) + " and " + std::to_string(t) +
                         " traverse a shared edge in the same direction");
        }
      }
      triangle_edges_[t][e] = it->second;
    }
  }

  // Boundary edges must lie on a domain edge.
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    MeshEdge& edge = edges_[i];
    if (edge.triangles[1] != -1) continue;
    const Point2 a = vertices_[edge.vertices[0]];
    const Point2 b = vertices_[edge.vertices[1]];
    const std::size_t m = domain_.corner_count();
    int found = -1;
    for (std::size_t d = 0; d < m && found < 0; ++d) {
      const Point2 c0 = domain_.corner(d);
      const Point2 c1 = domain_.corner((d + 1) % m);
      if (point_segment_distance(a, c0, c1) <= tol && point_segment_distance(b, c0, c1) <= tol)
        found = static_cast<int>(d);
    }
    if (found < 0) {
      report(MeshViolation::Kind::conformity, edge.triangles[0],
             "boundary edge (" + std::to_string(edge.vertices[0]) + "," + std::to_string(edge.vertices[1]) +
                 ") does not lie on the polygon boundary; the triangles do not tile the domain");
      continue;
    }
    edge.domain_edge = found;
    edge.tag = domain_.edge_tag(static_cast<std::size_t>(found));
  }

  // Hanging nodes: no vertex may lie in the relative interior of an edge.
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Point2 a = vertices_[edges_[i].vertices[0]];
    const Point2 b = vertices_[edges_[i].vertices[1]];
    const double len = distance(a, b);
    const double xmin = std::min(a.x, b.x) - tol, xmax = std::max(a.x, b.x) + tol;
    const double ymin = std::min(a.y, b.y) - tol, ymax = std::max(a.y, b.y) + tol;
    for (int v = 0; v < nv; ++v) {
      if (v == edges_[i].vertices[0] || v == edges_[i].vertices[1]) continue;
      const Point2 x = vertices_[v];
      if (x.x < xmin || x.x > xmax || x.y < ymin || x.y > ymax) continue;
      if (point_segment_distance(x, a, b) <= 1e-12 * len)
        report(MeshViolation::Kind::conformity, edges_[i].triangles[0],
               "hanging node: vertex " + std::to_string(v) + " lies on edge (" +
                   std::to_string(edges_[i].vertices[0]) + "," + std::to_string(edges_[i].vertices[1]) + ")");
    }
  }

  double area = 0.0;
  for (std::size_t t = 0; t < triangles_.size(); ++t) area += triangle_area(t);
  if (std::abs(area - domain_.area()) > 1e-12 * domain_.area())
    report(MeshViolation::Kind::conformity, -1,
           "triangle areas sum to " + std::to_string(area) + " but the polygon area is " +
               std::to_string(domain_.area()));

  // Corners must be mesh vertices.
  const std::size_t m = domain_.corner_count();
  if (m > 64) throw MeshError("at most 64 polygon corners are supported");
  corner_vertices_.assign(m, -1);
  for (std::size_t c = 0; c < m; ++c) {
    for (int v = 0; v < nv; ++v)
      if (distance(vertices_[v], domain_.corner(c)) <= tol) {
        corner_vertices_[c] = v;
        break;
      }
    if (corner_vertices_[c] < 0)
      report(MeshViolation::Kind::conformity, -1,
             "polygon corner " + std::to_string(c) + " is not a mesh vertex");
  }
  corner_flags_.assign(triangles_.size(), 0);
  for (std::size_t t = 0; t < triangles_.size(); ++t)
    for (std::size_t c = 0; c < m; ++c)
      for (int v : triangles_[t])
        if (v == corner_vertices_[c]) corner_flags_[t] |= std::uint64_t{1} << c;
  return issues;
}

std::array<Point2, 3> HpMesh::triangle_points(std::size_t t) const {
  return {vertices_[triangles_[t][0]], vertices_[triangles_[t][1]], vertices_[triangles_[t][2]]};
}

double HpMesh::triangle_area(std::size_t t) const {
  const auto p = triangle_points(t);
  return hpilg::triangle_area(p[0], p[1], p[2]);
}

double HpMesh::triangle_diameter(std::size_t t) const {
  const auto p = triangle_points(t);
  return hpilg::triangle_diameter(p[0], p[1], p[2]);
}

double HpMesh::total_area() const {
  double a = 0.0;
  for (std::size_t t = 0; t < triangles_.size(); ++t) a += triangle_area(t);
  return a;
}

HpMesh HpMesh::from_red(PolygonDomain domain, std::vector<Point2> vertices, std::vector<Triangle> red,
                        std::map<std::pair<int, int>, int> midpoints, int layer_count,
                        double initial_corner_diameter) {
  HpMesh mesh;
  mesh.domain_ = std::move(domain);
  mesh.vertices_ = std::move(vertices);
  mesh.red_triangles_ = std::move(red);
  mesh.midpoints_ = std::move(midpoints);
  mesh.layer_count_ = layer_count;
  mesh.initial_corner_diameter_ = initial_corner_diameter;

  // Green closure: a red leaf with exactly one split edge is bisected from
  // the edge midpoint to the opposite vertex.
  mesh.triangles_.reserve(mesh.red_triangles_.size() + mesh.red_triangles_.size() / 4);
  for (const Triangle& t : mesh.red_triangles_) {
    int split = -1;
    int count = 0;
    for (int e = 0; e < 3; ++e)
      if (mesh.midpoints_.contains(edge_key(t[e], t[(e + 1) % 3]))) {
        split = e;
        ++count;
      }
    if (count == 0) {
      mesh.triangles_.push_back(t);
      continue;
    }
    if (count > 1) throw MeshError("red triangulation is not closable by green bisection");
    const int a = t[split];
    const int b = t[(split + 1) % 3];
    const int o = t[(split + 2) % 3];
    const int mid = mesh.midpoints_.at(edge_key(a, b));
    mesh.triangles_.push_back({a, mid, o});
    mesh.triangles_.push_back({mid, b, o});
  }
  mesh.derive_tables(/*strict=*/true);
  return mesh;
}

HpMesh build_initial_mesh(const PolygonDomain& domain, std::vector<Point2> vertices,
                          std::vector<Triangle> triangles) {
  return HpMesh(domain, std::move(vertices), std::move(triangles));
}

namespace {

void require_corners(const PolygonDomain& domain, const std::vector<Point2>& expected, const char* name) {
  if (domain.corners() != expected)
    throw MeshError(std::string("domain corners do not match the built-in mesh '") + name + "'");
}

// Uniform grid of square cells with spacing h, each split along the
// diagonal from its lower-left to its upper-right vertex.
HpMesh grid_mesh(const PolygonDomain& domain, double x0, double y0, double h, int nx, int ny,
                 bool (*keep)(double, double)) {
  std::vector<int> id((nx + 1) * (ny + 1), -1);
  std::vector<Point2> vertices;
  std::vector<Triangle> triangles;
  const auto vertex = [&](int i, int j) {
    int& slot = id[j * (nx + 1) + i];
    if (slot < 0) {
      slot = static_cast<int>(vertices.size());
      vertices.push_back({x0 + h * i, y0 + h * j});
    }
    return slot;
  };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      if (!keep(x0 + h * (i + 0.5), y0 + h * (j + 0.5))) continue;
      const int v00 = vertex(i, j), v10 = vertex(i + 1, j), v11 = vertex(i + 1, j + 1), v01 = vertex(i, j + 1);
      triangles.push_back({v00, v10, v11});
      triangles.push_back({v00, v11, v01});
    }
  return HpMesh(domain, std::move(vertices), std::move(triangles));
}

}  // namespace

HpMesh build_initial_mesh(const PolygonDomain& domain, BuiltinMesh which) {
  switch (which) {
    case BuiltinMesh::square_32:
      require_corners(domain, PolygonDomain::unit_square().corners(), "square_32");
      return grid_mesh(domain, 0.0, 0.0, 0.25, 4, 4, [](double, double) { return true; });
    case BuiltinMesh::square_2:
      require_corners(domain, PolygonDomain::unit_square().corners(), "square_2");
      return HpMesh(domain, {{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2}, {0, 2, 3}});
    case BuiltinMesh::lshape_24:
      require_corners(domain, PolygonDomain::l_shape().corners(), "lshape_24");
      return grid_mesh(domain, -1.0, -1.0, 0.5, 4, 4,
                       [](double x, double y) { return !(x > 0.0 && y < 0.0); });
  }
  throw MeshError("unknown built-in mesh");
}

HpMesh refine_corner_layer(const HpMesh& mesh, const PolygonDomain& domain) {
  if (domain.corners() != mesh.domain().corners() || domain.edge_tags() != mesh.domain().edge_tags())
    throw MeshError("refinement domain differs from the mesh domain");
  return refine_corner_layer(mesh);
}

HpMesh refine_corner_layer(const HpMesh& mesh) {
  std::vector<Point2> vertices = mesh.vertices_;
  std::vector<Triangle> red = mesh.red_triangles_;
  std::map<std::pair<int, int>, int> midpoints = mesh.midpoints_;

  const auto mid = [&](int a, int b) {
    auto [it, inserted] = midpoints.try_emplace(edge_key(a, b), static_cast<int>(vertices.size()));
    if (inserted) vertices.push_back(midpoint(vertices[a], vertices[b]));
    return it->second;
  };
  const auto red_refine = [&](const std::vector<char>& marked) {
    std::vector<Triangle> next;
    next.reserve(red.size() + 3 * static_cast<std::size_t>(std::count(marked.begin(), marked.end(), 1)));
    for (std::size_t t = 0; t < red.size(); ++t) {
      if (!marked[t]) {
        next.push_back(red[t]);
        continue;
      }
      const auto [a, b, c] = red[t];
      const int ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
      next.push_back({a, ab, ca});
      next.push_back({ab, b, bc});
      next.push_back({ca, bc, c});
      next.push_back({ab, bc, ca});
    }
    red = std::move(next);
  };
  const auto is_split = [&](int a, int b) { return midpoints.contains(edge_key(a, b)); };

  std::vector<char> marked(red.size(), 0);
  std::vector<char> is_corner(vertices.size(), 0);
  for (std::size_t c = 0; c < mesh.domain().corner_count(); ++c) is_corner[mesh.corner_vertex(c)] = 1;
  for (std::size_t t = 0; t < red.size(); ++t)
    for (int v : red[t])
      if (is_corner[v]) marked[t] = 1;
  red_refine(marked);

  // Restore 1-irregularity: a leaf with two or more split edges, or with a
  // split edge whose halves are split again, is red-refined as well.
  for (;;) {
    marked.assign(red.size(), 0);
    bool any = false;
    for (std::size_t t = 0; t < red.size(); ++t) {
      int split = 0;
      bool deep = false;
      for (int e = 0; e < 3; ++e) {
        const int a = red[t][e];
        const int b = red[t][(e + 1) % 3];
        if (!is_split(a, b)) continue;
        ++split;
        const int m = midpoints.at(edge_key(a, b));
        deep = deep || is_split(a, m) || is_split(m, b);
      }
      if (split >= 2 || deep) {
        marked[t] = 1;
        any = true;
      }
    }
    if (!any) break;
    red_refine(marked);
  }

  HpMesh refined = HpMesh::from_red(mesh.domain(), std::move(vertices), std::move(red), std::move(midpoints),
                                    mesh.layer_count() + 1, mesh.initial_corner_diameter());
  for (std::size_t t = 0; t < refined.triangle_count(); ++t) {
    const auto p = refined.triangle_points(t);
    const double angle = rad_to_deg(triangle_min_angle(p[0], p[1], p[2]));
    if (angle < HpMesh::min_angle_floor_deg)
      throw MeshError("refinement produced triangle " + std::to_string(t) + " with minimum angle " +
                      std::to_string(angle) + " degrees, below the floor of " +
                      std::to_string(HpMesh::min_angle_floor_deg));
  }
  return refined;
}

HpMesh build_geometric_mesh(const PolygonDomain& domain, BuiltinMesh which, int layers) {
  return build_geometric_mesh(build_initial_mesh(domain, which), layers);
}

HpMesh build_geometric_mesh(HpMesh initial, int layers) {
  if (layers < 1) throw MeshError("layer count must be at least 1");
  for (int k = 1; k < layers; ++k) initial = refine_corner_layer(initial);
  return initial;
}

HpMesh triangulate_polygon(const PolygonDomain& domain) {
  const std::vector<Point2>& c = domain.corners();
  std::vector<int> ring(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) ring[i] = static_cast<int>(i);
  std::vector<Triangle> triangles;
  while (ring.size() > 3) {
    // Among the ears, clip the one whose triangle has the largest minimum angle.
    int best = -1;
    double best_angle = -1.0;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
      const int a = ring[(i + n - 1) % n], b = ring[i], d = ring[(i + 1) % n];
      if (orient2d(c[a], c[b], c[d]) <= 0.0) continue;
      bool empty = true;
      for (int v : ring) {
        if (v == a || v == b || v == d) continue;
        if (orient2d(c[a], c[b], c[v]) >= 0.0 && orient2d(c[b], c[d], c[v]) >= 0.0 &&
            orient2d(c[d], c[a], c[v]) >= 0.0) {
          empty = false;
          break;
        }
      }
      if (!empty) continue;
      const double angle = triangle_min_angle(c[a], c[b], c[d]);
      if (angle > best_angle) {
        best_angle = angle;
        best = static_cast<int>(i);
      }
    }
    if (best < 0) throw MeshError("ear clipping failed: polygon is not simple");
    const std::size_t i = static_cast<std::size_t>(best);
    triangles.push_back({ring[(i + n - 1) % n], ring[i], ring[(i + 1) % n]});
    ring.erase(ring.begin() + best);
  }
  triangles.push_back({ring[0], ring[1], ring[2]});
  return build_initial_mesh(domain, c, std::move(triangles));
}

GeometricReport validate_geometric(const HpMesh& mesh, const GeometricTolerance& tol) {
  GeometricReport report;
  report.violations = mesh.construction_issues_;
  const double sigma = HpMesh::sigma;
  const int k = mesh.layer_count();
  const std::size_t m = mesh.domain().corner_count();

  report.min_grading_ratio = std::numeric_limits<double>::infinity();
  report.min_angle_deg = 180.0;
  const double corner_bound =
      tol.corner_factor * mesh.initial_corner_diameter() * std::pow(sigma, k - 1);
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const auto p = mesh.triangle_points(t);
    const int ti = static_cast<int>(t);
    const double area2 = orient2d(p[0], p[1], p[2]);
    const bool already_flagged =
        std::any_of(report.violations.begin(), report.violations.end(), [&](const MeshViolation& v) {
          return v.kind == MeshViolation::Kind::orientation && v.element == ti;
        });
    if (area2 <= 0.0 && !already_flagged)
      report.violations.push_back({MeshViolation::Kind::orientation, ti,
                                   "triangle " + std::to_string(t) + " is not positively oriented"});

    const double angle = rad_to_deg(triangle_min_angle(p[0], p[1], p[2]));
    report.min_angle_deg = std::min(report.min_angle_deg, angle);
    if (angle < tol.min_angle_deg)
      report.violations.push_back({MeshViolation::Kind::min_angle, ti,
                                   "triangle " + std::to_string(t) + " has minimum angle " +
                                       std::to_string(angle) + " degrees"});

    const double diam = triangle_diameter(p[0], p[1], p[2]);
    if (mesh.corner_flags(t) != 0) {
      report.corner_constant = std::max(report.corner_constant, diam / std::pow(sigma, k));
      if (diam > corner_bound)
        report.violations.push_back({MeshViolation::Kind::corner_size, ti,
                                     "corner triangle " + std::to_string(t) + " has diameter " +
                                         std::to_string(diam) + " > " + std::to_string(corner_bound)});
      continue;
    }
    double dist = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < m; ++c)
      dist = std::min(dist, point_triangle_distance(mesh.domain().corner(c), p[0], p[1], p[2]));
    const double ratio = diam / dist;
    report.max_grading_ratio = std::max(report.max_grading_ratio, ratio);
    report.min_grading_ratio = std::min(report.min_grading_ratio, ratio);
    if (ratio > tol.family_constant / sigma || ratio < sigma / tol.family_constant)
      report.violations.push_back({MeshViolation::Kind::grading, ti,
                                   "triangle " + std::to_string(t) + " has diam/dist ratio " +
                                       std::to_string(ratio)});
  }
  if (!std::isfinite(report.min_grading_ratio)) report.min_grading_ratio = 0.0;
  return report;
}

}  // namespace hpilg
