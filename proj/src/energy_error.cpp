#include "hpilg/energy_error.hpp"

#include <algorithm>
#include <cmath>

#include "hpilg/quadrature.hpp"
#include "kernels.hpp"

namespace hpilg {

namespace {

// Gradients of a discrete function on triangle t at many reference points.
class GradientEvaluator {
 public:
  explicit GradientEvaluator(const DiscreteFunction& u)
      : u_(u), m_(u.space().local_size()), c_(m_), v_(m_), dx_(m_), dy_(m_) {}

  void select(std::size_t t) {
    if (t == t_) return;
    t_ = t;
    u_.local_coefficients(t, c_.data());
    map_ = u_.space().mesh().affine_map(t);
  }
  Point2 gradient_at(Point2 x) {
    Point2 ref = map_.inverse(x);
    ref = {std::max(ref.x, 0.0), std::max(ref.y, 0.0)};
    if (ref.x + ref.y > 1.0) {
      const double s = ref.x + ref.y;
      ref = {ref.x / s, ref.y / s};
    }
    u_.space().shapes().eval(ref, v_, dx_, dy_);
    double gx = 0.0, gy = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      gx += c_[i] * dx_[i];
      gy += c_[i] * dy_[i];
    }
    return map_.push_gradient(gx, gy);
  }

 private:
  const DiscreteFunction& u_;
  std::size_t m_;
  std::size_t t_ = static_cast<std::size_t>(-1);
  AffineMap map_{{0, 0}, {1, 0}, {0, 1}};
  std::vector<double> c_, v_, dx_, dy_;
};

}  // namespace

std::vector<Point2> clip_to_triangle(std::vector<Point2> subject, Point2 a, Point2 b, Point2 c) {
  const std::array<Point2, 3> tri{a, b, c};
  for (int e = 0; e < 3 && !subject.empty(); ++e) {
    const Point2 p = tri[e];
    const Point2 q = tri[(e + 1) % 3];
    std::vector<Point2> out;
    const std::size_t n = subject.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point2 s = subject[i];
      const Point2 t = subject[(i + 1) % n];
      const double ds = orient2d(p, q, s);
      const double dt = orient2d(p, q, t);
      if (ds >= 0.0) out.push_back(s);
      if ((ds >= 0.0) != (dt >= 0.0)) {
        const double lambda = ds / (ds - dt);
        out.push_back(s + lambda * (t - s));
      }
    }
    subject = std::move(out);
  }
  return subject;
}

double compute_energy_error(const DiscreteFunction& u, const DiscreteFunction& u_ref, int extra_degree,
                            Execution exec) {
  const HpMesh& fine = u_ref.space().mesh();
  const PointLocator& locator = u.locator();
  const int p_max = std::max(u.space().degree(), u_ref.space().degree());
  const TriangleRule rule = triangle_rule(2 * p_max + extra_degree);
  std::vector<double> per_element(fine.triangle_count(), 0.0);

  auto work = [&](std::size_t t, GradientEvaluator& gu, GradientEvaluator& gr) {
    const auto pts = fine.triangle_points(t);
    const double area_t = fine.triangle_area(t);
    Point2 lo = pts[0], hi = pts[0];
    for (const Point2& x : pts) {
      lo = {std::min(lo.x, x.x), std::min(lo.y, x.y)};
      hi = {std::max(hi.x, x.x), std::max(hi.y, x.y)};
    }
    gr.select(t);
    double sum = 0.0;
    for (int ct : locator.candidates(lo, hi)) {
      const auto cp = u.space().mesh().triangle_points(ct);
      const auto piece = clip_to_triangle({pts[0], pts[1], pts[2]}, cp[0], cp[1], cp[2]);
      if (piece.size() < 3) continue;
      gu.select(ct);
      for (std::size_t k = 1; k + 1 < piece.size(); ++k) {
        const double det = orient2d(piece[0], piece[k], piece[k + 1]);
        if (!(std::abs(det) > 1e-14 * area_t)) continue;
        const Point2 e1 = piece[k] - piece[0];
        const Point2 e2 = piece[k + 1] - piece[0];
        for (std::size_t q = 0; q < rule.size(); ++q) {
          const Point2 x = piece[0] + rule.points[q].x * e1 + rule.points[q].y * e2;
          const Point2 d = gu.gradient_at(x) - gr.gradient_at(x);
          sum += std::abs(det) * rule.weights[q] * dot(d, d);
        }
      }
    }
    per_element[t] = sum;
  };

  if (exec == Execution::serial) {
    GradientEvaluator gu(u), gr(u_ref);
    for (std::size_t t = 0; t < fine.triangle_count(); ++t) work(t, gu, gr);
  } else {
    const auto nt = static_cast<long>(fine.triangle_count());
#pragma omp parallel
    {
      GradientEvaluator gu(u), gr(u_ref);
#pragma omp for schedule(dynamic, 8)
      for (long t = 0; t < nt; ++t) work(static_cast<std::size_t>(t), gu, gr);
    }
  }
  double total = 0.0;
  for (double s : per_element) total += s;
  return std::sqrt(total);
}

double energy_error_exact(const DiscreteFunction& u, const Polynomial2D& exact, Execution exec) {
  const HpMesh& mesh = u.space().mesh();
  const Polynomial2D ex = exact.derivative_x();
  const Polynomial2D ey = exact.derivative_y();
  const TriangleRule rule = triangle_rule(2 * std::max(u.space().degree(), exact.degree()));
  std::vector<double> per_element(mesh.triangle_count(), 0.0);
  detail::for_each_element(exec, mesh.triangle_count(), [&](std::size_t t) {
    GradientEvaluator gu(u);
    gu.select(t);
    const AffineMap map = mesh.affine_map(t);
    const double area = std::abs(map.det());
    double sum = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Point2 x = map.forward(rule.points[q]);
      const Point2 d = gu.gradient_at(x) - Point2{ex(x), ey(x)};
      sum += area * rule.weights[q] * dot(d, d);
    }
    per_element[t] = sum;
  });
  double total = 0.0;
  for (double s : per_element) total += s;
  return std::sqrt(total);
}

}  // namespace hpilg
