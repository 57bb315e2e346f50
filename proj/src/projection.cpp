#include "hpilg/projection.hpp"

#include <cmath>

#include "hpilg/dense_cholesky.hpp"
#include "hpilg/quadrature.hpp"
#include "kernels.hpp"

namespace hpilg {

namespace {

// Derivative of the Lobatto function l_r: sqrt((2r - 1) / 2) P_{r-1}.
void lobatto_derivatives(double xi, int p, std::vector<double>& out) {
  out.assign(p + 1, 0.0);
  double p0 = 1.0, p1 = xi;  // P_0, P_1
  for (int n = 1; n <= p - 1; ++n) {
    // p1 holds P_n here.
    out[n + 1] = std::sqrt((2.0 * (n + 1) - 1.0) / 2.0) * p1;
    const double p2 = ((2.0 * n + 1.0) * xi * p1 - n * p0) / (n + 1.0);
    p0 = p1;
    p1 = p2;
  }
}

}  // namespace

std::vector<double> interpolate(const HpSpace& space, const Field& u) {
  const HpMesh& mesh = space.mesh();
  const int p = space.degree();
  std::vector<double> c(space.free_count(), 0.0);

  for (std::size_t v = 0; v < mesh.vertex_count(); ++v)
    if (space.vertex_dof(v) >= 0) c[space.vertex_dof(v)] = u(mesh.vertices()[v]).value;

  if (p >= 2) {
    const GaussRule1D gauss = gauss_1d(p + 4);
    std::vector<double> dl;
    for (std::size_t e = 0; e < mesh.edge_count(); ++e) {
      if (space.edge_dof(e, 2) < 0) continue;
      const Point2 a = mesh.vertices()[mesh.edges()[e].vertices[0]];
      const Point2 b = mesh.vertices()[mesh.edges()[e].vertices[1]];
      const Point2 half = 0.5 * (b - a);
      for (std::size_t k = 0; k < gauss.points.size(); ++k) {
        const double xi = gauss.points[k];
        const Point2 x = midpoint(a, b) + xi * half;
        // d/dxi of u along the edge; the linear part integrates to zero
        // against every l_r', r >= 2.
        const double du = dot(u(x).gradient, half);
        lobatto_derivatives(xi, p, dl);
        for (int r = 2; r <= p; ++r) c[space.edge_dof(e, r)] += gauss.weights[k] * du * dl[r];
      }
    }
  }

  const auto& interior = space.shapes().interior_modes();
  const std::size_t ni = interior.size();
  if (ni == 0) return c;
  const std::size_t m = space.local_size();
  const detail::ReferenceStiffness ref = detail::reference_stiffness(space.shapes());
  const Tabulation tab = tabulate(space.shapes(), triangle_rule(2 * p + 2));

  detail::for_each_element(Execution::parallel, mesh.triangle_count(), [&](std::size_t t) {
    std::vector<double> k(m * m), cl(m, 0.0), rhs(ni, 0.0), kii(kernels::packed_size(ni));
    detail::element_stiffness(space, ref, t, k.data());
    const auto dofs = space.element_dofs(t);
    const auto signs = space.element_signs(t);
    for (int mode : space.shapes().skeleton_modes())
      if (dofs[mode] >= 0) cl[mode] = signs[mode] * c[dofs[mode]];

    const AffineMap map = mesh.affine_map(t);
    const double area = std::abs(map.det());
    for (std::size_t q = 0; q < tab.rule.size(); ++q) {
      const Point2 gu = u(map.forward(tab.rule.points[q])).gradient;
      const double w = area * tab.rule.weights[q];
      for (std::size_t i = 0; i < ni; ++i) {
        const std::size_t idx = q * m + interior[i];
        rhs[i] += w * dot(gu, map.push_gradient(tab.dx[idx], tab.dy[idx]));
      }
    }
    // Interior signs are +1, so signed and unsigned blocks agree on I x I;
    // the coupling to mode j needs its sign back.
    for (std::size_t i = 0; i < ni; ++i) {
      const std::size_t row = interior[i] * m;
      for (int mode : space.shapes().skeleton_modes()) rhs[i] -= k[row + mode] * signs[mode] * cl[mode];
      for (std::size_t j = 0; j <= i; ++j) kii[kernels::packed_index(i, j)] = k[row + interior[j]];
    }
    kernels::cholesky_unblocked(kii.data(), ni);
    kernels::solve_lower(kii.data(), ni, rhs.data());
    kernels::solve_upper(kii.data(), ni, rhs.data());
    for (std::size_t i = 0; i < ni; ++i) c[space.interior_dof_start(t) + i] = rhs[i];
  });
  return c;
}

std::vector<double> project_initial_guess(const DiscreteFunction& previous, const HpSpace& next) {
  previous.locator();
  return interpolate(next, [&](Point2 x) { return previous.evaluate(x); });
}

}  // namespace hpilg
