#include <doctest.h>

#include <cmath>
#include <random>

#include "hpilg/energy_error.hpp"
#include "hpilg/projection.hpp"

using namespace hpilg;

namespace {

HpSpace square_space(int layers, int p, std::vector<std::size_t> dirichlet = {}) {
  PolygonDomain d = PolygonDomain::unit_square();
  if (!dirichlet.empty()) d = d.with_dirichlet_edges(dirichlet);
  return HpSpace(build_geometric_mesh(d, BuiltinMesh::square_32, layers), p);
}

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> x(n);
  for (double& v : x) v = u(rng);
  return x;
}

double polygon_area(const std::vector<Point2>& p) {
  double a = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Point2 u = p[i], v = p[(i + 1) % p.size()];
    a += u.x * v.y - v.x * u.y;
  }
  return 0.5 * a;
}

}  // namespace

TEST_CASE("identical functions have zero error") {
  const HpSpace s = square_space(3, 4);
  const DiscreteFunction u(s, random_vector(s.free_count(), 1));
  CHECK(compute_energy_error(u, u) <= 1e-12);
}

TEST_CASE("a discrete function against its embedding in a finer space") {
  const HpSpace coarse = square_space(2, 3), fine = square_space(4, 5);
  const DiscreteFunction u(coarse, random_vector(coarse.free_count(), 2));
  const DiscreteFunction v(fine, project_initial_guess(u, fine));
  CHECK(compute_energy_error(u, v) <= 1e-10);
}

TEST_CASE("affine function against zero") {
  // u = x with Dirichlet on the left edge: |grad u| = 1 on the unit square.
  const HpSpace s = square_space(2, 2, {3});
  std::vector<double> c(s.free_count(), 0.0);
  for (std::size_t v = 0; v < s.mesh().vertex_count(); ++v)
    if (s.vertex_dof(v) >= 0) c[s.vertex_dof(v)] = s.mesh().vertices()[v].x;
  const DiscreteFunction u(s, c);
  const HpSpace ref = square_space(3, 4, {3});
  const DiscreteFunction zero(ref, std::vector<double>(ref.free_count(), 0.0));
  CHECK(compute_energy_error(u, zero) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(compute_energy_error(zero, u) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(energy_error_exact(u, Polynomial2D()) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("extra quadrature degree does not change the overlay integral") {
  const HpSpace a = square_space(2, 3), b(build_geometric_mesh(PolygonDomain::unit_square(), BuiltinMesh::square_32, 5), 5);
  const DiscreteFunction u(a, random_vector(a.free_count(), 3)), v(b, random_vector(b.free_count(), 4));
  const double e0 = compute_energy_error(u, v, 0), e6 = compute_energy_error(u, v, 6);
  CHECK(std::abs(e0 - e6) <= 1e-10 * e6);
}

TEST_CASE("overlay error agrees with exact integration of a polynomial") {
  // Interpolate the manufactured solution in a fine space of degree 4, where
  // it is reproduced exactly, then compare both error paths on a coarse one.
  const Polynomial2D exact = manufactured_solution();
  const Field f = [&](Point2 x) { return FieldValue{exact(x), exact.gradient(x)}; };
  const HpSpace fine = square_space(4, 4), coarse = square_space(2, 2);
  const DiscreteFunction ref(fine, interpolate(fine, f));
  CHECK(energy_error_exact(ref, exact) <= 1e-12);
  const DiscreteFunction u(coarse, interpolate(coarse, f));
  const double overlay = compute_energy_error(u, ref), direct = energy_error_exact(u, exact);
  CHECK(direct > 1e-3);
  CHECK(overlay == doctest::Approx(direct).epsilon(1e-11));
}

TEST_CASE("exact energy norm of the manufactured solution") {
  // ||grad u*||^2 = 2 * int (1-2x)^2 * int (y(1-y))^2 = 2 * (1/3) * (1/30).
  const HpSpace s = square_space(1, 1);
  const DiscreteFunction zero(s, std::vector<double>(s.free_count(), 0.0));
  CHECK(energy_error_exact(zero, manufactured_solution()) == doctest::Approx(std::sqrt(1.0 / 45)).epsilon(1e-14));
}

TEST_CASE("triangle clipping") {
  const Point2 a{0, 0}, b{1, 0}, c{0, 1};
  // Unit square clipped by the lower-left half.
  const std::vector<Point2> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(polygon_area(clip_to_triangle(square, a, b, c)) == doctest::Approx(0.5).epsilon(1e-15));
  // A triangle inside stays.
  const std::vector<Point2> inner{{0.1, 0.1}, {0.3, 0.1}, {0.1, 0.3}};
  const std::vector<Point2> kept = clip_to_triangle(inner, a, b, c);
  CHECK(polygon_area(kept) == doctest::Approx(polygon_area(inner)).epsilon(1e-15));
  // Disjoint polygons vanish.
  const std::vector<Point2> far{{2, 2}, {3, 2}, {2, 3}};
  CHECK(polygon_area(clip_to_triangle(far, a, b, c)) == 0.0);
  // [0.25, 0.75]^2 loses the half beyond x + y = 1.
  const std::vector<Point2> mid{{0.25, 0.25}, {0.75, 0.25}, {0.75, 0.75}, {0.25, 0.75}};
  CHECK(polygon_area(clip_to_triangle(mid, a, b, c)) == doctest::Approx(0.25 - 0.125).epsilon(1e-15));
}

TEST_CASE("overlay areas partition the domain") {
  // Clipping every fine triangle against every coarse one covers the domain once.
  const HpMesh coarse = build_geometric_mesh(PolygonDomain::l_shape(), BuiltinMesh::lshape_24, 2);
  const HpMesh fine = build_geometric_mesh(PolygonDomain::l_shape(), BuiltinMesh::lshape_24, 4);
  double total = 0.0;
  for (std::size_t s = 0; s < fine.triangle_count(); ++s) {
    const Triangle& ts = fine.triangles()[s];
    const std::vector<Point2> subject{fine.vertices()[ts[0]], fine.vertices()[ts[1]], fine.vertices()[ts[2]]};
    for (std::size_t t = 0; t < coarse.triangle_count(); ++t) {
      const Triangle& tt = coarse.triangles()[t];
      const std::vector<Point2> piece =
          clip_to_triangle(subject, coarse.vertices()[tt[0]], coarse.vertices()[tt[1]], coarse.vertices()[tt[2]]);
      if (piece.size() >= 3) total += polygon_area(piece);
    }
  }
  CHECK(total == doctest::Approx(3.0).epsilon(1e-12));
}
