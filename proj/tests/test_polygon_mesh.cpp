#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "hpilg/error.hpp"
#include "hpilg/mesh_io.hpp"
#include "hpilg/point_locator.hpp"
#include "hpilg/polygon_mesh.hpp"

using namespace hpilg;

namespace {

std::size_t corner_triangles(const HpMesh& mesh) {
  std::size_t n = 0;
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) n += mesh.corner_flags(t) != 0;
  return n;
}

double max_corner_diameter(const HpMesh& mesh) {
  double d = 0.0;
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t)
    if (mesh.corner_flags(t)) d = std::max(d, mesh.triangle_diameter(t));
  return d;
}

// Brute-force grading ratios diam(T) / dist(T, corners) for non-corner triangles.
std::pair<double, double> grading_range(const HpMesh& mesh) {
  double lo = INFINITY, hi = 0.0;
  const auto& corners = mesh.domain().corners();
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    if (mesh.corner_flags(t)) continue;
    const auto p = mesh.triangle_points(t);
    double dist = INFINITY;
    for (Point2 c : corners) dist = std::min(dist, point_triangle_distance(c, p[0], p[1], p[2]));
    const double r = mesh.triangle_diameter(t) / dist;
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return {lo, hi};
}

}  // namespace

TEST_CASE("polygon domain invariants") {
  const PolygonDomain sq = PolygonDomain::unit_square();
  CHECK(sq.area() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sq.dirichlet_edges().size() == 4);
  CHECK(sq.neumann_edges().empty());

  const PolygonDomain l = PolygonDomain::l_shape();
  CHECK(l.area() == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(l.interior_angle(2) == doctest::Approx(1.5 * M_PI));

  const PolygonDomain mixed = sq.with_dirichlet_edges({0, 2});
  CHECK(mixed.dirichlet_edges() == std::vector<std::size_t>{0, 2});
  CHECK(mixed.neumann_edges() == std::vector<std::size_t>{1, 3});

  CHECK_THROWS_AS(sq.with_dirichlet_edges({}), DomainError);
  CHECK_THROWS_AS(sq.with_dirichlet_edges({7}), DomainError);
  // Clockwise order.
  CHECK_THROWS_AS(PolygonDomain({{0, 0}, {0, 1}, {1, 1}, {1, 0}}, std::vector<BoundaryTag>(4, BoundaryTag::dirichlet)),
                  DomainError);
  // Bow tie.
  CHECK_THROWS_AS(PolygonDomain({{0, 0}, {1, 1}, {1, 0}, {0, 1}}, std::vector<BoundaryTag>(4, BoundaryTag::dirichlet)),
                  DomainError);
}

TEST_CASE("built-in starting meshes") {
  const HpMesh sq = build_initial_mesh(PolygonDomain::unit_square(), BuiltinMesh::square_32);
  CHECK(sq.triangle_count() == 32);
  CHECK(sq.vertex_count() == 25);
  // Euler: V - E + F = 1 for a triangulated disk.
  CHECK(sq.vertex_count() + sq.triangle_count() - sq.edge_count() == 1);
  CHECK(validate_geometric(sq).ok());

  const HpMesh l = build_initial_mesh(PolygonDomain::l_shape(), BuiltinMesh::lshape_24);
  CHECK(l.triangle_count() == 24);
  CHECK(l.vertex_count() + l.triangle_count() - l.edge_count() == 1);
  CHECK(validate_geometric(l).ok());

  const HpMesh two = build_initial_mesh(PolygonDomain::unit_square(), BuiltinMesh::square_2);
  CHECK(two.triangle_count() == 2);
  CHECK(two.vertex_count() == 4);
  CHECK(validate_geometric(two).ok());

  for (std::size_t i = 0; i < 4; ++i) CHECK(sq.vertices()[sq.corner_vertex(i)] == sq.domain().corner(i));
  CHECK_THROWS_AS(build_initial_mesh(PolygonDomain::l_shape(), BuiltinMesh::square_32), MeshError);
}

TEST_CASE("explicit triangle lists are validated") {
  const PolygonDomain sq = PolygonDomain::unit_square();
  const std::vector<Point2> v{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK_NOTHROW(build_initial_mesh(sq, v, {{0, 1, 2}, {0, 2, 3}}));
  // Does not tile the square.
  CHECK_THROWS_AS(build_initial_mesh(sq, v, {{0, 1, 2}}), MeshError);
  // Clockwise triangle.
  CHECK_THROWS_AS(build_initial_mesh(sq, v, {{0, 2, 1}, {0, 2, 3}}), MeshError);
  // Hanging node at (0.5, 0.5) on the diagonal.
  const std::vector<Point2> h{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
  CHECK_THROWS_AS(build_initial_mesh(sq, h, {{0, 1, 4}, {1, 2, 4}, {0, 2, 3}}), MeshError);
  // Corner (1, 1) not a vertex.
  const PolygonDomain tri({{0, 0}, {1, 0}, {0, 1}}, std::vector<BoundaryTag>(3, BoundaryTag::dirichlet));
  CHECK_THROWS_AS(build_initial_mesh(sq, {{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}}), MeshError);
  CHECK_NOTHROW(build_initial_mesh(tri, {{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}}));
}

TEST_CASE("validate_geometric names a flipped triangle") {
  const HpMesh good = build_initial_mesh(PolygonDomain::unit_square(), BuiltinMesh::square_32);
  std::vector<Triangle> tris = good.triangles();
  std::swap(tris[7][1], tris[7][2]);
  const HpMesh bad = HpMesh::unchecked(good.domain(), good.vertices(), tris);
  const GeometricReport report = validate_geometric(bad);
  REQUIRE_FALSE(report.ok());
  bool named = false;
  for (const MeshViolation& v : report.violations)
    named = named || (v.kind == MeshViolation::Kind::orientation && v.element == 7);
  CHECK(named);
}

TEST_CASE("corner refinement") {
  for (BuiltinMesh which : {BuiltinMesh::square_32, BuiltinMesh::lshape_24}) {
    const PolygonDomain domain =
        which == BuiltinMesh::square_32 ? PolygonDomain::unit_square() : PolygonDomain::l_shape();
    CAPTURE(static_cast<int>(which));
    const HpMesh m1 = build_initial_mesh(domain, which);
    const double d1 = max_corner_diameter(m1);
    const std::size_t c1 = corner_triangles(m1);
    // Frozen growth constants: triangles added per layer.
    const std::size_t growth = which == BuiltinMesh::square_32 ? 24 : 52;

    HpMesh mesh = m1;
    for (int k = 1; k <= 15; ++k) {
      if (k > 1) mesh = refine_corner_layer(mesh, domain);
      CAPTURE(k);
      CHECK(mesh.layer_count() == k);
      CHECK(corner_triangles(mesh) == c1);
      CHECK(max_corner_diameter(mesh) == doctest::Approx(d1 * std::pow(0.5, k - 1)).epsilon(1e-12));
      CHECK(mesh.triangle_count() <= m1.triangle_count() + growth * (k - 1));
      CHECK(std::abs(mesh.total_area() - domain.area()) <= 1e-12 * domain.area());

      const GeometricReport report = validate_geometric(mesh);
      CHECK(report.ok());
      CHECK(report.min_angle_deg >= HpMesh::min_angle_floor_deg);
      if (k >= 2) {
        const auto [lo, hi] = grading_range(mesh);
        CHECK(hi == doctest::Approx(report.max_grading_ratio));
        CHECK(lo == doctest::Approx(report.min_grading_ratio));
        CHECK(hi <= 2.0 + 1e-9);
        CHECK(lo >= 0.5 - 1e-9);
      }
    }
  }
}

TEST_CASE("red refinement halves corner triangles exactly") {
  const HpMesh m1 = build_initial_mesh(PolygonDomain::unit_square(), BuiltinMesh::square_32);
  const HpMesh m2 = refine_corner_layer(m1);
  std::multiset<double> before, after;
  for (std::size_t t = 0; t < m1.triangle_count(); ++t)
    if (m1.corner_flags(t)) before.insert(m1.triangle_diameter(t));
  for (std::size_t t = 0; t < m2.triangle_count(); ++t)
    if (m2.corner_flags(t)) after.insert(m2.triangle_diameter(t));
  REQUIRE(before.size() == after.size());
  for (auto a = before.begin(), b = after.begin(); a != before.end(); ++a, ++b) CHECK(*b == 0.5 * *a);
}

TEST_CASE("edge tags follow the domain") {
  const PolygonDomain domain = PolygonDomain::l_shape().with_dirichlet_edges({0, 3});
  const HpMesh mesh = build_geometric_mesh(domain, BuiltinMesh::lshape_24, 3);
  std::size_t interior = 0;
  for (const MeshEdge& e : mesh.edges()) {
    if (e.triangles[1] >= 0) {
      CHECK(e.tag == BoundaryTag::interior);
      ++interior;
      continue;
    }
    REQUIRE(e.domain_edge >= 0);
    CHECK(e.tag == domain.edge_tag(e.domain_edge));
    const Point2 mid = midpoint(mesh.vertices()[e.vertices[0]], mesh.vertices()[e.vertices[1]]);
    CHECK(domain.edge_containing(mid, 1e-12) == e.domain_edge);
  }
  // Every interior edge is shared by two triangles: 3T = 2 E_int + E_bnd.
  CHECK(3 * mesh.triangle_count() == 2 * interior + (mesh.edge_count() - interior));
}

TEST_CASE("point location") {
  const HpMesh mesh = build_geometric_mesh(PolygonDomain::l_shape(), BuiltinMesh::lshape_24, 4);
  const PointLocator locator(mesh);

  for (std::size_t t = 0; t < mesh.triangle_count(); t += 7) {
    const auto p = mesh.triangle_points(t);
    const Point2 c{(p[0].x + p[1].x + p[2].x) / 3, (p[0].y + p[1].y + p[2].y) / 3};
    const Location loc = locator.locate(c);
    CHECK(loc.triangle == static_cast<int>(t));
    CHECK(loc.ref.x == doctest::Approx(1.0 / 3));
    CHECK(loc.ref.y == doctest::Approx(1.0 / 3));
  }

  // Shared vertex: lowest incident triangle index.
  for (std::size_t v = 0; v < mesh.vertex_count(); v += 5) {
    int lowest = -1;
    for (std::size_t t = 0; t < mesh.triangle_count() && lowest < 0; ++t)
      for (int k = 0; k < 3; ++k)
        if (mesh.triangles()[t][k] == static_cast<int>(v)) lowest = static_cast<int>(t);
    CHECK(locator.locate(mesh.vertices()[v]).triangle == lowest);
  }

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int n = 0;
  while (n < 1000) {
    const Point2 x{u(rng), u(rng)};
    if (!mesh.domain().contains(x)) continue;
    ++n;
    const Location loc = locate_point(mesh, x);
    REQUIRE(loc.triangle >= 0);
    const Point2 back = mesh.affine_map(loc.triangle).forward(loc.ref);
    CHECK(distance(back, x) <= 1e-10);
  }

  CHECK_THROWS_AS(locator.locate({0.5, -0.5}), PointLocationError);
  CHECK_THROWS_AS(locator.locate({3.0, 0.0}), PointLocationError);
}

TEST_CASE("affine maps round trip") {
  const HpMesh mesh = build_geometric_mesh(PolygonDomain::unit_square(), BuiltinMesh::square_32, 5);
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const AffineMap map = mesh.affine_map(t);
    CHECK(map.det() == doctest::Approx(2.0 * mesh.triangle_area(t)).epsilon(1e-13));
    const Point2 ref{0.2, 0.3};
    CHECK(distance(map.inverse(map.forward(ref)), ref) <= 1e-13);
  }
}

TEST_CASE("mesh text format round trip") {
  const HpMesh mesh = build_geometric_mesh(PolygonDomain::l_shape(), BuiltinMesh::lshape_24, 3);
  std::stringstream ss;
  write_mesh(ss, mesh);
  const HpMesh back = read_mesh(ss, mesh.domain());
  CHECK(back.vertices() == mesh.vertices());
  CHECK(back.triangles() == mesh.triangles());
  CHECK(back.corner_flags() == mesh.corner_flags());

  std::stringstream first;
  write_mesh(first, build_initial_mesh(PolygonDomain::unit_square(), BuiltinMesh::square_2));
  std::string line;
  std::getline(first, line);
  CHECK(line == "4 2");
}

TEST_CASE("ear clipping of a general polygon") {
  const PolygonDomain domain({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}},
                             std::vector<BoundaryTag>(6, BoundaryTag::dirichlet));
  const HpMesh mesh = triangulate_polygon(domain);
  CHECK(mesh.triangle_count() == 4);
  CHECK(mesh.total_area() == doctest::Approx(domain.area()).epsilon(1e-14));
  const HpMesh fine = build_geometric_mesh(mesh, 4);
  CHECK(fine.layer_count() == 4);
  CHECK(validate_geometric(fine, {.family_constant = 3.0}).violations.empty());
}
