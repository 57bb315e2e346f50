#include "hpilg/polynomial.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hpilg {

Polynomial2D Polynomial2D::constant(double c) { return monomial(c, 0, 0); }

Polynomial2D Polynomial2D::monomial(double c, int a, int b) {
  Polynomial2D p;
  p.add_term(c, a, b);
  return p;
}

void Polynomial2D::reserve_degree(int d) {
  if (d + 1 <= size_) return;
  const int n = d + 1;
  std::vector<double> next(static_cast<std::size_t>(n) * n, 0.0);
  for (int a = 0; a < size_; ++a)
    for (int b = 0; b < size_; ++b) next[a * n + b] = c_[a * size_ + b];
  c_ = std::move(next);
  size_ = n;
}

int Polynomial2D::degree() const {
  int d = -1;
  for (int a = 0; a < size_; ++a)
    for (int b = 0; b < size_; ++b)
      if (c_[a * size_ + b] != 0.0) d = std::max(d, a + b);
  return d;
}

double Polynomial2D::coefficient(int a, int b) const {
  if (a < 0 || b < 0 || a >= size_ || b >= size_) return 0.0;
  return c_[a * size_ + b];
}

void Polynomial2D::add_term(double c, int a, int b) {
  if (a < 0 || b < 0) throw std::invalid_argument("Polynomial2D: negative exponent");
  reserve_degree(std::max(a, b));
  c_[a * size_ + b] += c;
}

double Polynomial2D::operator()(Point2 x) const {
  // Horner in x over Horner-in-y rows.
  double result = 0.0;
  for (int a = size_ - 1; a >= 0; --a) {
    double row = 0.0;
    for (int b = size_ - 1; b >= 0; --b) row = row * x.y + c_[a * size_ + b];
    result = result * x.x + row;
  }
  return result;
}

Point2 Polynomial2D::gradient(Point2 x) const { return {derivative_x()(x), derivative_y()(x)}; }

Polynomial2D Polynomial2D::derivative_x() const {
  Polynomial2D out;
  for (int a = 1; a < size_; ++a)
    for (int b = 0; b < size_; ++b)
      if (c_[a * size_ + b] != 0.0) out.add_term(a * c_[a * size_ + b], a - 1, b);
  return out;
}

Polynomial2D Polynomial2D::derivative_y() const {
  Polynomial2D out;
  for (int a = 0; a < size_; ++a)
    for (int b = 1; b < size_; ++b)
      if (c_[a * size_ + b] != 0.0) out.add_term(b * c_[a * size_ + b], a, b - 1);
  return out;
}

Polynomial2D Polynomial2D::laplacian() const {
  return derivative_x().derivative_x() + derivative_y().derivative_y();
}

Polynomial2D& Polynomial2D::operator+=(const Polynomial2D& other) {
  for (int a = 0; a < other.size_; ++a)
    for (int b = 0; b < other.size_; ++b) {
      const double c = other.c_[a * other.size_ + b];
      if (c != 0.0) add_term(c, a, b);
    }
  return *this;
}

Polynomial2D operator-(const Polynomial2D& a, const Polynomial2D& b) { return a + (-1.0) * b; }

Polynomial2D operator*(double s, Polynomial2D a) {
  for (double& c : a.c_) c *= s;
  return a;
}

Polynomial2D operator*(const Polynomial2D& p, const Polynomial2D& q) {
  Polynomial2D out;
  for (int a = 0; a < p.size_; ++a)
    for (int b = 0; b < p.size_; ++b) {
      const double cp = p.c_[a * p.size_ + b];
      if (cp == 0.0) continue;
      for (int c = 0; c < q.size_; ++c)
        for (int d = 0; d < q.size_; ++d) {
          const double cq = q.c_[c * q.size_ + d];
          if (cq != 0.0) out.add_term(cp * cq, a + c, b + d);
        }
    }
  return out;
}

Polynomial2D Polynomial2D::pow(int n) const {
  if (n < 0) throw std::invalid_argument("Polynomial2D::pow: negative exponent");
  Polynomial2D out = constant(1.0);
  for (int i = 0; i < n; ++i) out = out * *this;
  return out;
}

std::string Polynomial2D::to_string() const {
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (int a = 0; a < size_; ++a)
    for (int b = 0; b < size_; ++b) {
      const double c = c_[a * size_ + b];
      if (c == 0.0) continue;
      if (!first) os << ',';
      os << c << ':' << a << ':' << b;
      first = false;
    }
  if (first) os << "0:0:0";
  return os.str();
}

Polynomial2D manufactured_solution() {
  const Polynomial2D x = Polynomial2D::monomial(1.0, 1, 0);
  const Polynomial2D y = Polynomial2D::monomial(1.0, 0, 1);
  const Polynomial2D one = Polynomial2D::constant(1.0);
  return x * (one - x) * y * (one - y);
}

Polynomial2D manufactured_forcing(const Polynomial2D& exact, double lambda, int q) {
  return (-1.0) * exact.laplacian() + lambda * exact.pow(2 * q + 1);
}

}  // namespace hpilg
