#include <doctest.h>

#include <cmath>
#include <numeric>
#include <string>

#include "hpilg/discrete_function.hpp"
#include "hpilg/energy_error.hpp"
#include "hpilg/ilg_solver.hpp"

using namespace hpilg;

namespace {

HpSpace square_space(int layers, int p) {
  return HpSpace(build_geometric_mesh(PolygonDomain::unit_square(), BuiltinMesh::square_32, layers), p);
}

const DataSurrogate& unit_load() {
  static const DataSurrogate f = DataSurrogate::exact(Polynomial2D::constant(1.0));
  return f;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double max_abs(const std::vector<double>& a) {
  double d = 0.0;
  for (double x : a) d = std::max(d, std::abs(x));
  return d;
}

}  // namespace

TEST_CASE("linear case with full step is one solve") {
  const HpSpace space = square_space(3, 3);
  IlgConfig config;
  config.lambda = 0.0;
  config.alpha = 1.0;
  config.solver = SolverPath::dense;
  const IlgSystem system(space, config, unit_load());
  const std::vector<double> exact = system.solve(system.load());

  IlgState state;
  state.u.assign(space.free_count(), 0.0);
  picard_step(system, config, state);
  CHECK(state.u == exact);
  const std::vector<double> u1 = state.u;
  picard_step(system, config, state);
  CHECK(max_abs_diff(state.u, u1) <= 1e-14 * max_abs(u1));
}

TEST_CASE("linear case with alpha = 1/2 is a geometric recursion") {
  const HpSpace space = square_space(3, 4);
  IlgConfig config;
  config.lambda = 0.0;
  const IlgSystem system(space, config, unit_load());
  const std::vector<double> limit = system.solve(system.load());
  IlgState state;
  state.u.assign(space.free_count(), 0.0);
  for (int n = 1; n <= 12; ++n) {
    picard_step(system, config, state);
    const double factor = 1.0 - std::pow(2.0, -n);
    for (std::size_t i = 0; i < limit.size(); ++i)
      CHECK(std::abs(state.u[i] - factor * limit[i]) <= 1e-14 * max_abs(limit));
  }
  const ContractionDiagnostics d = contraction_report(state.log, 0.5, 1.0);
  for (double rho : d.ratios) CHECK(std::abs(rho - 0.5) <= 1e-12);
  CHECK(std::abs(d.geometric_rate - 0.5) <= 1e-12);
}

TEST_CASE("zero data keeps the zero iterate") {
  const HpSpace space = square_space(2, 3);
  IlgConfig config;
  config.lambda = 4.0;
  config.q = 2;
  config.stopping = StoppingRule::fixed(5);
  const IlgResult r = run_ilg(space, config, DataSurrogate::exact(Polynomial2D()), {});
  CHECK(r.iterations == 5);
  for (double x : r.u) CHECK(x == 0.0);
}

TEST_CASE("default setting on the square terminates with contracting steps") {
  const HpSpace space = square_space(2, 2);
  IlgConfig config;
  const IlgResult r = run_ilg(space, config, unit_load(), {});
  CHECK(r.iterations >= 2);
  CHECK(r.final_ratio <= 1e-2);
  MESSAGE("iterations at p = 2: " << r.iterations);
  for (std::size_t n = 1; n < r.log.size(); ++n) {
    CHECK(r.log[n].l2_diff < r.log[n - 1].l2_diff);
    CHECK(r.log[n].energy_diff < r.log[n - 1].energy_diff);
  }
  // Stops at the first n >= 1 below the threshold.
  for (std::size_t n = 1; n + 1 < r.log.size(); ++n) CHECK(r.log[n].l2_diff > 1e-2 * r.log[0].l2_diff);
  CHECK(r.log.back().l2_diff <= 1e-2 * r.log[0].l2_diff);
}

TEST_CASE("manufactured solution is reproduced") {
  const Polynomial2D exact = manufactured_solution();
  const DataSurrogate f = DataSurrogate::exact(manufactured_forcing(exact, 1.0, 1));
  for (int p = 4; p <= 5; ++p) {
    const HpSpace space = square_space(p, p);
    IlgConfig config;
    config.stopping = StoppingRule::relative(1e-12);
    const IlgResult r = run_ilg(space, config, f, {});
    CHECK(energy_error_exact(DiscreteFunction(space, r.u), exact) <= 1e-9);
  }
}

TEST_CASE("aggressive step either converges or reports") {
  const HpSpace space = square_space(1, 2);
  IlgConfig config;
  config.alpha = 1.0;
  config.lambda = 1e4;
  config.max_iterations = 200;
  try {
    const IlgResult r = run_ilg(space, config, unit_load(), {});
    for (double x : r.u) CHECK(std::isfinite(x));
  } catch (const IlgDivergence& e) {
    CHECK(e.alpha() == 1.0);
    MESSAGE(e.what());
  } catch (const IlgNotConverged& e) {
    CHECK(e.iterations() == 200);
    MESSAGE(e.what());
  }
}

TEST_CASE("huge reaction with a full step diverges loudly") {
  const HpSpace space = square_space(1, 2);
  IlgConfig config;
  config.alpha = 1.0;
  config.lambda = 1e8;
  config.max_iterations = 100;
  CHECK_THROWS_AS(run_ilg(space, config, DataSurrogate::exact(Polynomial2D::constant(1e3)), {}), IlgDivergence);
}

TEST_CASE("not converged is reported with the final ratio") {
  const HpSpace space = square_space(2, 2);
  IlgConfig config;
  config.stopping = StoppingRule::relative(1e-12);
  config.max_iterations = 3;
  try {
    run_ilg(space, config, unit_load(), {});
    FAIL("expected IlgNotConverged");
  } catch (const IlgNotConverged& e) {
    CHECK(e.iterations() == 3);
    CHECK(e.final_ratio() > 1e-12);
    const std::string what = e.what();
    const auto at = what.find("final ratio ");
    REQUIRE(at != std::string::npos);
    CHECK(std::stod(what.substr(at + 12)) == doctest::Approx(e.final_ratio()).epsilon(1e-5));
  }
}

TEST_CASE("fixed and coupled step counts") {
  CHECK(StoppingRule::coupled(1.0).step_count(7) == 7);
  CHECK(StoppingRule::coupled(1.5).step_count(3) == 5);
  CHECK(StoppingRule::coupled(0.5).step_count(4) == 2);
  CHECK(StoppingRule::fixed(9).step_count(100) == 9);

  const HpSpace space = square_space(3, 3);
  IlgConfig config;
  config.stopping = StoppingRule::coupled(2.0);
  CHECK(run_ilg(space, config, unit_load(), {}).iterations == 6);
}

TEST_CASE("energy-norm stopping") {
  const HpSpace space = square_space(3, 3);
  IlgConfig config;
  config.stopping = StoppingRule::relative(1e-6, DifferenceNorm::energy);
  const IlgResult r = run_ilg(space, config, unit_load(), {});
  CHECK(r.log.back().energy_diff <= 1e-6 * r.log.front().energy_diff);
  CHECK(r.log[r.log.size() - 2].energy_diff > 1e-6 * r.log.front().energy_diff);
  CHECK(config.stopping.to_string() == "relative_energy:9.9999999999999995e-07");
}

TEST_CASE("config validation") {
  IlgConfig c;
  CHECK_NOTHROW(c.validate());
  c.alpha = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.alpha = 1.5;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.stopping = StoppingRule::relative(1.0);
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.max_iterations = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.q = -1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.stopping = StoppingRule::fixed(0);
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("contraction constants") {
  CHECK(r_alpha(0.5, 1.0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(alpha_star(1.0) == 0.5);
  CHECK(r_min(1.0) == doctest::Approx(0.70711).epsilon(1e-5));
  for (double L : {0.1, 0.5, 1.0, 2.0, 7.0}) {
    CHECK(std::abs(r_alpha(alpha_star(L), L) - r_min(L)) <= 1e-14);
    const double edge = 2.0 / (L * L + 1.0);
    for (double a : {0.05, 0.3, 0.6, 0.9, 1.0})
      if (std::abs(a - edge) > 1e-9) CHECK((r_alpha(a, L) < 1.0) == (a < edge));
  }
  CHECK_THROWS(contraction_report({IlgStep{}, IlgStep{}}, 0.5, 1.0));
}

TEST_CASE("fixed point is stationary") {
  const HpSpace space = square_space(3, 3);
  IlgConfig config;
  config.stopping = StoppingRule::relative(1e-14, DifferenceNorm::energy);
  config.max_iterations = 2000;
  const IlgSystem system(space, config, unit_load());
  const IlgResult r = run_ilg(system, config, {});
  IlgState state;
  state.u = r.u;
  const double norm = std::sqrt(std::inner_product(r.u.begin(), r.u.end(), r.u.begin(), 0.0));
  picard_step(system, config, state);
  CHECK(state.log.back().l2_diff <= 1e-12 * norm);
}

TEST_CASE("the limit does not depend on alpha") {
  const HpSpace space = square_space(3, 3);
  std::vector<std::vector<double>> limits;
  for (double alpha : {0.3, 0.7}) {
    IlgConfig config;
    config.alpha = alpha;
    config.stopping = StoppingRule::relative(1e-10);
    config.max_iterations = 2000;
    limits.push_back(run_ilg(space, config, unit_load(), {}).u);
  }
  std::vector<double> d(limits[0].size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = limits[0][i] - limits[1][i];
  const SymmetricSystem a = assemble_stiffness(space);
  CHECK(energy_norm(space, *a.blocks, d) <= 1e-8);
}

TEST_CASE("successive differences decay from step 2 on both paths") {
  for (SolverPath path : {SolverPath::dense, SolverPath::condensed}) {
    const HpSpace space(build_geometric_mesh(PolygonDomain::l_shape(), BuiltinMesh::lshape_24, 4), 4);
    IlgConfig config;
    config.solver = path;
    const IlgResult r = run_ilg(space, config, unit_load(), {});
    for (std::size_t n = 2; n < r.log.size(); ++n) CHECK(r.log[n].energy_diff < r.log[n - 1].energy_diff);
  }
}
