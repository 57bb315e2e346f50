#include "hpilg/hp_basis.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "hpilg/error.hpp"

namespace hpilg {

namespace {

// Legendre polynomials with first and second derivatives, degree 0..n.
void legendre_with_derivatives(double x, int n, std::span<double> p, std::span<double> dp,
                               std::span<double> ddp) {
  p[0] = 1.0;
  dp[0] = 0.0;
  ddp[0] = 0.0;
  if (n == 0) return;
  p[1] = x;
  dp[1] = 1.0;
  ddp[1] = 0.0;
  for (int k = 1; k < n; ++k) {
    p[k + 1] = ((2.0 * k + 1.0) * x * p[k] - k * p[k - 1]) / (k + 1.0);
    dp[k + 1] = dp[k - 1] + (2.0 * k + 1.0) * p[k];
    ddp[k + 1] = ddp[k - 1] + (2.0 * k + 1.0) * dp[k];
  }
}

constexpr std::array<std::array<double, 2>, 3> grad_lambda{{{-1.0, -1.0}, {1.0, 0.0}, {0.0, 1.0}}};

}  // namespace

void lobatto_kernels(double xi, int kmax, std::span<double> kappa, std::span<double> dkappa) {
  if (kmax < 0) return;
  // kappa_k = c_{k+2} P'_{k+1}, c_r = -4 sqrt((2r-1)/2) / (r (r-1)), from
  // (2r-1)(1-x^2) P'_{r-1} = r(r-1)(P_{r-2} - P_r).
  const int n = kmax + 1;
  std::vector<double> p(n + 1), dp(n + 1), ddp(n + 1);
  legendre_with_derivatives(xi, n, p, dp, ddp);
  for (int k = 0; k <= kmax; ++k) {
    const double r = k + 2.0;
    const double c = -4.0 * std::sqrt((2.0 * r - 1.0) / 2.0) / (r * (r - 1.0));
    kappa[k] = c * dp[k + 1];
    dkappa[k] = c * ddp[k + 1];
  }
}

double lobatto(int r, double xi) {
  if (r < 2) throw std::invalid_argument("lobatto: order must be at least 2");
  std::vector<double> p(r + 1), dp(r + 1), ddp(r + 1);
  legendre_with_derivatives(xi, r, p, dp, ddp);
  return (p[r] - p[r - 2]) / std::sqrt(2.0 * (2.0 * r - 1.0));
}

int edge_orientation_sign(int /*p*/, int orientation, int r) {
  if (orientation >= 0) return 1;
  return (r % 2 == 0) ? 1 : -1;
}

ShapeTable::ShapeTable(int p) : p_(p) {
  if (p < 1) throw std::invalid_argument("ShapeTable: degree must be at least 1");
  vertex_modes_.resize(3);
  edge_modes_.assign(3, std::vector<int>(static_cast<std::size_t>(p - 1)));
  for (int v = 0; v < 3; ++v) {
    vertex_modes_[v] = static_cast<int>(modes_.size());
    modes_.push_back({ModeKind::vertex, v, 1, 0});
  }
  for (int r = 2; r <= p; ++r) {
    for (int e = 0; e < 3; ++e) {
      edge_modes_[e][r - 2] = static_cast<int>(modes_.size());
      modes_.push_back({ModeKind::edge, e, r, r - 2});
    }
    for (int i = 0; i <= r - 3; ++i) {
      const int j = r - 3 - i;
      const int slot = static_cast<int>(interior_modes_.size());
      interior_modes_.push_back(static_cast<int>(modes_.size()));
      interior_indices_.emplace_back(i, j);
      modes_.push_back({ModeKind::interior, -1, r, slot});
    }
  }
  for (std::size_t i = 0; i < modes_.size(); ++i)
    if (modes_[i].kind != ModeKind::interior) skeleton_modes_.push_back(static_cast<int>(i));
}

void ShapeTable::eval(Point2 ref, std::span<double> value, std::span<double> dx,
                      std::span<double> dy) const {
  constexpr double tol = 1e-12;
  if (ref.x < -tol || ref.y < -tol || ref.x + ref.y > 1.0 + tol)
    throw Error("basis evaluation point (" + std::to_string(ref.x) + ", " + std::to_string(ref.y) +
                ") lies outside the reference triangle");
  if (value.size() < size() || dx.size() < size() || dy.size() < size())
    throw std::invalid_argument("ShapeTable::eval: output spans too small");

  const std::array<double, 3> lam{1.0 - ref.x - ref.y, ref.x, ref.y};
  for (int v = 0; v < 3; ++v) {
    const int m = vertex_modes_[v];
    value[m] = lam[v];
    dx[m] = grad_lambda[v][0];
    dy[m] = grad_lambda[v][1];
  }
  if (p_ < 2) return;

  const int kmax = p_ - 2;
  std::vector<double> kappa(kmax + 1), dkappa(kmax + 1);
  for (int e = 0; e < 3; ++e) {
    const int a = e;
    const int b = (e + 1) % 3;
    const double s = lam[b] - lam[a];
    const double gsx = grad_lambda[b][0] - grad_lambda[a][0];
    const double gsy = grad_lambda[b][1] - grad_lambda[a][1];
    const double prod = lam[a] * lam[b];
    const double gpx = lam[b] * grad_lambda[a][0] + lam[a] * grad_lambda[b][0];
    const double gpy = lam[b] * grad_lambda[a][1] + lam[a] * grad_lambda[b][1];
    lobatto_kernels(s, kmax, kappa, dkappa);
    for (int r = 2; r <= p_; ++r) {
      const int m = edge_modes_[e][r - 2];
      const double k = kappa[r - 2];
      const double dk = dkappa[r - 2];
      value[m] = prod * k;
      dx[m] = gpx * k + prod * dk * gsx;
      dy[m] = gpy * k + prod * dk * gsy;
    }
  }
  if (interior_modes_.empty()) return;

  const int imax = p_ - 3;
  const double bubble = lam[0] * lam[1] * lam[2];
  const double gbx = lam[1] * lam[2] * grad_lambda[0][0] + lam[0] * lam[2] * grad_lambda[1][0] +
                     lam[0] * lam[1] * grad_lambda[2][0];
  const double gby = lam[1] * lam[2] * grad_lambda[0][1] + lam[0] * lam[2] * grad_lambda[1][1] +
                     lam[0] * lam[1] * grad_lambda[2][1];
  const double s1 = lam[2] - lam[1];
  const double s2 = lam[1] - lam[0];
  const double g1x = grad_lambda[2][0] - grad_lambda[1][0], g1y = grad_lambda[2][1] - grad_lambda[1][1];
  const double g2x = grad_lambda[1][0] - grad_lambda[0][0], g2y = grad_lambda[1][1] - grad_lambda[0][1];
  std::vector<double> k1(imax + 1), dk1(imax + 1), k2(imax + 1), dk2(imax + 1);
  lobatto_kernels(s1, imax, k1, dk1);
  lobatto_kernels(s2, imax, k2, dk2);
  for (std::size_t slot = 0; slot < interior_modes_.size(); ++slot) {
    const int m = interior_modes_[slot];
    const auto [i, j] = interior_indices_[slot];
    const double kk = k1[i] * k2[j];
    value[m] = bubble * kk;
    dx[m] = gbx * kk + bubble * (dk1[i] * k2[j] * g1x + k1[i] * dk2[j] * g2x);
    dy[m] = gby * kk + bubble * (dk1[i] * k2[j] * g1y + k1[i] * dk2[j] * g2y);
  }
}

BasisValues ShapeTable::eval(Point2 ref) const {
  BasisValues out{std::vector<double>(size()), std::vector<double>(size()), std::vector<double>(size())};
  eval(ref, out.value, out.dx, out.dy);
  return out;
}

}  // namespace hpilg
