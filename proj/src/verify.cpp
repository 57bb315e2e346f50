#include "hpilg/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>
#include <utility>

#include "hpilg/experiment.hpp"
#include "hpilg/ilg_solver.hpp"
#include "hpilg/linear_solve.hpp"
#include "hpilg/quadrature.hpp"

namespace hpilg {

namespace {

using Check = std::function<CheckResult()>;

// int_T x^a y^b = a! b! / (a + b + 2)! = 1 / ((n + 1)(n + 2) C(n, a)), n = a + b.
double monomial_integral(int a, int b) {
  const int n = a + b;
  double binom = 1.0;
  for (int i = 1; i <= a; ++i) binom = binom * (n - a + i) / i;
  return 1.0 / ((n + 1.0) * (n + 2.0) * binom);
}

CheckResult manufactured() {
  ExperimentConfig c;
  c.p_max = 8;
  c.f = ForcingSpec::parse("manufactured");
  c.stopping = StoppingRule::relative(1e-12);
  const ExperimentResult r = run_experiment(c);
  double worst = 0.0;
  for (const ConvergenceRecord& rec : r.records)
    if (rec.p >= 4) worst = std::max(worst, rec.error_energy);
  std::ostringstream os;
  os << "max error for p = 4..8: " << worst;
  return {"manufactured solution", worst <= 1e-9, os.str()};
}

CheckResult quadrature() {
  double worst = 0.0;
  for (int d = 0; d <= 40; ++d) {
    const TriangleRule rule = triangle_rule(d);
    for (int a = 0; a <= d; ++a)
      for (int b = 0; a + b <= d; ++b) {
        double s = 0.0;
        for (std::size_t k = 0; k < rule.size(); ++k)
          s += rule.weights[k] * std::pow(rule.points[k].x, a) * std::pow(rule.points[k].y, b);
        const double exact = monomial_integral(a, b);
        worst = std::max(worst, std::abs(s - exact) / exact);
      }
  }
  std::ostringstream os;
  os << "max relative monomial error, degree <= 40: " << worst;
  return {"quadrature exactness", worst <= 1e-13, os.str()};
}

CheckResult linear_contraction() {
  const HpSpace space(build_geometric_mesh(PolygonDomain::unit_square(), BuiltinMesh::square_32, 3), 3);
  IlgConfig config;
  config.lambda = 0.0;
  config.stopping = StoppingRule::fixed(11);
  const IlgResult r = run_ilg(space, config, DataSurrogate::exact(Polynomial2D::constant(1.0)), {});
  const ContractionDiagnostics d = contraction_report(r.log, config.alpha, 1.0);
  double worst = 0.0;
  for (double rho : d.ratios) worst = std::max(worst, std::abs(rho - 0.5));
  std::ostringstream os;
  os << "max |rho_n - 1/2| over " << d.ratios.size() << " ratios: " << worst;
  return {"linear contraction", worst <= 1e-12, os.str()};
}

CheckResult monotonicity(std::uint64_t seed) {
  const HpSpace space(build_geometric_mesh(PolygonDomain::unit_square(), BuiltinMesh::square_32, 2), 4);
  const NonlinearForm form(space, 1);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> u(space.free_count()), v(space.free_count());
  double worst = INFINITY;
  for (int trial = 0; trial < 200; ++trial) {
    for (std::size_t i = 0; i < u.size(); ++i) {
      u[i] = dist(rng);
      v[i] = dist(rng);
    }
    const std::vector<double> bu = form.evaluate(u, 1.0), bv = form.evaluate(v, 1.0);
    double pairing = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) pairing += (bu[i] - bv[i]) * (u[i] - v[i]);
    worst = std::min(worst, pairing);
  }
  std::ostringstream os;
  os << "smallest pairing over 200 pairs: " << worst;
  return {"monotonicity", worst >= -1e-12, os.str()};
}

CheckResult path_equivalence(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double worst = 0.0;
  for (BuiltinMesh which : {BuiltinMesh::square_32, BuiltinMesh::lshape_24}) {
    const PolygonDomain domain =
        which == BuiltinMesh::square_32 ? PolygonDomain::unit_square() : PolygonDomain::l_shape();
    for (int p = 1; p <= 4; ++p) {
      const HpSpace space(build_geometric_mesh(domain, which, p), p);
      const SymmetricSystem a = assemble_stiffness(space);
      const CholeskyFactor dense = factor_dense(a);
      const CondensedSystem condensed(space, *a.blocks);
      std::vector<double> rhs(space.free_count());
      for (int trial = 0; trial < 2; ++trial) {
        for (double& x : rhs) x = dist(rng);
        const std::vector<double> xd = dense.solve(rhs), xc = condensed.solve(rhs);
        double diff = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < xd.size(); ++i) {
          diff = std::max(diff, std::abs(xd[i] - xc[i]));
          scale = std::max(scale, std::abs(xd[i]));
        }
        worst = std::max(worst, diff / scale);
      }
    }
  }
  std::ostringstream os;
  os << "max relative deviation, p = 1..4 on both built-in meshes: " << worst;
  return {"dense/condensed agreement", worst <= 1e-10, os.str()};
}

CheckResult mesh_grading() {
  std::ostringstream os;
  bool ok = true;
  for (BuiltinMesh which : {BuiltinMesh::square_32, BuiltinMesh::lshape_24}) {
    const PolygonDomain domain =
        which == BuiltinMesh::square_32 ? PolygonDomain::unit_square() : PolygonDomain::l_shape();
    HpMesh mesh = build_initial_mesh(domain, which);
    for (int k = 1; k <= 8; ++k) {
      if (k > 1) mesh = refine_corner_layer(mesh);
      const GeometricReport report = validate_geometric(mesh);
      if (!report.ok()) {
        ok = false;
        os << (which == BuiltinMesh::square_32 ? "square" : "lshape") << " k=" << k << ": "
           << report.violations.front().detail << "; ";
      }
    }
  }
  if (ok) os << "both built-in meshes valid for k = 1..8";
  return {"geometric mesh", ok, os.str()};
}

}  // namespace

std::vector<CheckResult> run_verification(std::uint64_t seed, std::ostream* progress) {
  const std::vector<std::pair<std::string, Check>> checks = {
      {"manufactured solution", manufactured},
      {"quadrature exactness", quadrature},
      {"linear contraction", linear_contraction},
      {"monotonicity", [seed] { return monotonicity(seed); }},
      {"dense/condensed agreement", [seed] { return path_equivalence(seed); }},
      {"geometric mesh", mesh_grading},
  };
  std::vector<CheckResult> results;
  for (const auto& [name, check] : checks) {
    CheckResult r;
    try {
      r = check();
    } catch (const std::exception& e) {
      r = {name, false, e.what()};
    }
    if (progress) *progress << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << std::endl;
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace hpilg
