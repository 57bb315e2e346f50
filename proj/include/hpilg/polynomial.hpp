#pragma once

#include <string>
#include <vector>

#include "hpilg/geometry.hpp"

namespace hpilg {

/// Bivariate polynomial sum c_ab x^a y^b with dense coefficient storage.
class Polynomial2D {
 public:
  Polynomial2D() = default;
  static Polynomial2D constant(double c);
  static Polynomial2D monomial(double c, int a, int b);

  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  double coefficient(int a, int b) const;
  void add_term(double c, int a, int b);

  double operator()(Point2 x) const;
  Point2 gradient(Point2 x) const;

  Polynomial2D derivative_x() const;
  Polynomial2D derivative_y() const;
  Polynomial2D laplacian() const;

  Polynomial2D& operator+=(const Polynomial2D& other);
  friend Polynomial2D operator+(Polynomial2D a, const Polynomial2D& b) { return a += b; }
  friend Polynomial2D operator-(const Polynomial2D& a, const Polynomial2D& b);
  friend Polynomial2D operator*(const Polynomial2D& a, const Polynomial2D& b);
  friend Polynomial2D operator*(double s, Polynomial2D a);
  Polynomial2D pow(int n) const;

  std::string to_string() const;

 private:
  void reserve_degree(int d);
  int size_ = 0;  // coefficients stored for a, b < size_
  std::vector<double> c_;
};

/// u*(x, y) = x (1 - x) y (1 - y).
Polynomial2D manufactured_solution();
/// f = -Laplace(u*) + lambda (u*)^(2q+1) for the polynomial u*.
Polynomial2D manufactured_forcing(const Polynomial2D& exact, double lambda, int q);

}  // namespace hpilg
