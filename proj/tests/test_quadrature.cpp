#include <doctest.h>

#include <cmath>

#include "hpilg/assembly.hpp"
#include "hpilg/quadrature.hpp"

using namespace hpilg;

namespace {

// a! b! / (a + b + 2)! without overflow: 1 / ((n + 1)(n + 2) C(n, a)).
double monomial_integral(int a, int b) {
  const int n = a + b;
  double binom = 1.0;
  for (int i = 1; i <= a; ++i) binom = binom * (n - a + i) / i;
  return 1.0 / ((n + 1.0) * (n + 2.0) * binom);
}

double integrate(const TriangleRule& rule, int a, int b) {
  double s = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k)
    s += rule.weights[k] * std::pow(rule.points[k].x, a) * std::pow(rule.points[k].y, b);
  return s;
}

}  // namespace

TEST_CASE("1d Gauss-Legendre") {
  const GaussRule1D g1 = gauss_1d(1);
  REQUIRE(g1.points.size() == 1);
  CHECK(g1.points[0] == doctest::Approx(0.0));
  CHECK(g1.weights[0] == doctest::Approx(2.0));

  const GaussRule1D g2 = gauss_1d(2);
  CHECK(g2.points[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(g2.points[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(g2.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g2.weights[1] == doctest::Approx(1.0).epsilon(1e-15));

  const GaussRule1D g16 = gauss_1d(16);
  double s = 0.0;
  for (std::size_t i = 0; i < 16; ++i) s += g16.weights[i] * std::pow(g16.points[i], 30);
  CHECK(std::abs(s - 2.0 / 31) <= 1e-14 * 2.0 / 31);

  for (int n = 1; n <= 30; ++n) {
    const GaussRule1D g = gauss_1d(n);
    for (int d = 0; d <= 2 * n - 1; ++d) {
      double v = 0.0;
      for (int i = 0; i < n; ++i) v += g.weights[i] * std::pow(g.points[i], d);
      const double exact = d % 2 ? 0.0 : 2.0 / (d + 1);
      CHECK(std::abs(v - exact) <= 1e-14);
    }
  }
}

TEST_CASE("triangle rule examples") {
  CHECK(std::abs(integrate(triangle_rule(0), 0, 0) - 0.5) <= 1e-15);
  CHECK(integrate(triangle_rule(2), 1, 1) == doctest::Approx(1.0 / 24).epsilon(1e-14));
  const TriangleRule r8 = triangle_rule(8);
  int count = 0;
  for (int a = 0; a <= 8; ++a)
    for (int b = 0; a + b <= 8; ++b, ++count)
      CHECK(std::abs(integrate(r8, a, b) - monomial_integral(a, b)) <= 1e-13 * monomial_integral(a, b));
  CHECK(count == 45);
}

TEST_CASE("triangle rules are exact up to degree 40, positive and interior") {
  for (int d = 0; d <= 40; ++d) {
    CAPTURE(d);
    const TriangleRule rule = triangle_rule(d);
    CHECK(rule.degree >= d);
    const std::size_t n = static_cast<std::size_t>((d + 3) / 2);
    CHECK(rule.size() == n * n);
    double wsum = 0.0;
    for (std::size_t k = 0; k < rule.size(); ++k) {
      CHECK(rule.weights[k] > 0.0);
      const Point2 x = rule.points[k];
      CHECK(x.x > 0.0);
      CHECK(x.y > 0.0);
      CHECK(x.x + x.y < 1.0);
      wsum += rule.weights[k];
    }
    CHECK(std::abs(wsum - 0.5) <= 1e-14);
    for (int a = 0; a <= d; ++a)
      for (int b = 0; a + b <= d; ++b) {
        const double exact = monomial_integral(a, b);
        CHECK(std::abs(integrate(rule, a, b) - exact) <= 1e-13 * exact);
      }
  }
}

TEST_CASE("required degree") {
  CHECK(required_degree(3, 1, 0) == 12);
  CHECK(required_degree(1, 0, 0) == 2);
  CHECK(required_degree(5, 2, 20) == 30);
  CHECK(required_degree(2, 0, 9) == 11);
}

TEST_CASE("stiffness is insensitive to over-integration") {
  for (int p = 1; p <= 8; ++p) {
    CAPTURE(p);
    const ShapeTable shapes(p);
    const std::size_t m = shapes.size();
    // Reference stiffness integrated by hand with two rules.
    auto stiffness = [&](int degree) {
      const TriangleRule rule = triangle_rule(degree);
      std::vector<double> k(m * m, 0.0);
      for (std::size_t q = 0; q < rule.size(); ++q) {
        const BasisValues b = shapes.eval(rule.points[q]);
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < m; ++j)
            k[i * m + j] += rule.weights[q] * (b.dx[i] * b.dx[j] + b.dy[i] * b.dy[j]);
      }
      return k;
    };
    const std::vector<double> a = stiffness(2 * p), b = stiffness(2 * p + 6);
    double scale = 0.0, diff = 0.0;
    for (std::size_t i = 0; i < m * m; ++i) {
      scale = std::max(scale, std::abs(a[i]));
      diff = std::max(diff, std::abs(a[i] - b[i]));
    }
    CHECK(diff <= 1e-13 * scale);
  }
}
