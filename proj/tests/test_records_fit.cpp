#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "hpilg/error.hpp"
#include "hpilg/experiment_config.hpp"
#include "hpilg/fit.hpp"
#include "hpilg/records.hpp"

using namespace hpilg;

namespace {

ConvergenceRecord record(int p, double error, std::uint64_t flops) {
  ConvergenceRecord r;
  r.p = p;
  r.layers = p;
  r.elements = 32 + 24 * (p - 1);
  r.n_free = 10 * p * p;
  r.iterations = 8;
  r.error_energy = error;
  r.flops_factor = flops / 2;
  r.flops_iterate_total = flops - flops / 2;
  r.flops_total = flops;
  r.wall_seconds = 0.01 * p;
  return r;
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

ExperimentConfig parse(const std::string& text) {
  std::istringstream is(text);
  return ExperimentConfig::parse(is);
}

}  // namespace

TEST_CASE("exact exponential data is recovered") {
  std::vector<double> work, error;
  for (int k = 1; k <= 8; ++k) {
    const double w = std::pow(10.0 * k, 3);
    work.push_back(w);
    error.push_back(2.0 * std::exp(-0.5 * std::cbrt(w)));
  }
  const ExponentialFit fit = fit_exponential(work, error, 3);
  CHECK(fit.b == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fit.C == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.points == 8);
}

TEST_CASE("fits need four usable points") {
  const std::vector<double> w{1, 2, 3, 4}, e{1e-1, 1e-2, 0.0, 1e-4};
  CHECK_THROWS_AS(fit_exponential(w, e, 3), Error);
  const std::vector<double> e4{1e-1, 1e-2, 1e-3, 1e-4};
  CHECK_NOTHROW(fit_exponential(w, e4, 3));
}

TEST_CASE("record fits respect the minimum degree") {
  std::vector<ConvergenceRecord> rs;
  for (int p = 1; p <= 8; ++p) {
    const double flops = std::pow(2.0 * p, 7);
    rs.push_back(record(p, 3.0 * std::exp(-0.25 * std::pow(flops, 1.0 / 7)), static_cast<std::uint64_t>(flops)));
  }
  // The first level deviates from the law and is excluded by min_p.
  rs[0].error_energy = 1.0;
  const ExponentialFit fit = fit_exponential(rs, WorkKey::flops, 7, 2);
  CHECK(fit.points == 7);
  CHECK(fit.b == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(fit_exponential(rs, WorkKey::flops, 7, 1).r_squared < 1.0 - 1e-6);
}

TEST_CASE("linear and log-log fits") {
  const std::vector<double> x{1, 2, 3, 4}, y{3, 5, 7, 9};
  const LinearFit f = linear_fit(x, y);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.r_squared == doctest::Approx(1.0));
  // Constant data is fitted exactly.
  CHECK(linear_fit(x, std::vector<double>{8, 8, 8, 8}).r_squared == 1.0);
  const std::vector<double> cube{1, 8, 27, 64};
  CHECK(loglog_fit(x, cube).slope == doctest::Approx(3.0).epsilon(1e-13));
  CHECK_THROWS_AS(linear_fit(std::vector<double>{1, 1}, std::vector<double>{1, 2}), Error);
}

TEST_CASE("work keys") {
  CHECK(parse_work_key("dofs") == WorkKey::dofs);
  CHECK(parse_work_key("flops") == WorkKey::flops);
  CHECK(parse_work_key("seconds") == WorkKey::seconds);
  CHECK_THROWS_AS(parse_work_key("cycles"), ConfigError);
  CHECK(default_root(WorkKey::dofs) == 3);
  CHECK(default_root(WorkKey::flops) == 7);
}

TEST_CASE("records file layout") {
  std::ostringstream empty;
  write_records(empty, {});
  CHECK(empty.str() == records_header() + "\n");

  std::ostringstream three;
  write_records(three, {record(1, 0.1, 100), record(2, 0.01, 1000), record(3, 1e-3, 10000)});
  CHECK(count_lines(three.str()) == 4);
  CHECK(three.str().rfind(records_header(), 0) == 0);
  CHECK(records_header() ==
        "p,layers,elements,n_free,iterations,error_energy,flops_factor,flops_iterate_total,flops_total,wall_seconds");
}

TEST_CASE("records round trip bit for bit") {
  std::vector<ConvergenceRecord> rs{record(1, 0.1, 123), record(2, 1.0 / 3.0, 4567), record(3, 6.02e-23, 1ull << 50)};
  rs[1].wall_seconds = std::nextafter(0.1, 1.0);
  std::stringstream ss;
  write_records(ss, rs);
  CHECK(parse_records(ss) == rs);
  for (double x : {0.1, 1.0 / 3.0, 5e-324, 1.7976931348623157e308, -0.0})
    CHECK(std::strtod(format_real(x).c_str(), nullptr) == x);
}

TEST_CASE("malformed records are rejected") {
  std::istringstream no_header("1,2,3\n");
  CHECK_THROWS_AS(parse_records(no_header), Error);
  std::istringstream short_row(records_header() + "\n1,1,32,9,8,0.1\n");
  CHECK_THROWS_AS(parse_records(short_row), Error);
  std::istringstream bad_field(records_header() + "\n1,1,32,9,8,zero,1,1,2,0\n");
  CHECK_THROWS_AS(parse_records(bad_field), Error);
}

TEST_CASE("configuration parsing") {
  const ExperimentConfig c = parse(
      "# comment\n"
      "domain = lshape\n"
      "p_max = 7   # trailing comment\n"
      "lambda = 2.5\n"
      "q = 2\n"
      "alpha = 0.25\n"
      "stopping = fixed:4\n"
      "solver = dense\n"
      "f = polynomial:1:0:0,2:1:1\n"
      "dirichlet_edges = 0 2\n"
      "deterministic = true\n");
  CHECK(c.domain == "lshape");
  CHECK(c.p_max == 7);
  CHECK(c.lambda == 2.5);
  CHECK(c.q == 2);
  CHECK(c.alpha == 0.25);
  CHECK(c.stopping.step_count(100) == 4);
  CHECK(c.solver == SolverPath::dense);
  CHECK(c.f.polynomial.coefficient(1, 1) == 2.0);
  CHECK(c.dirichlet_edges == std::vector<std::size_t>{0, 2});
  CHECK(c.deterministic);
  CHECK(c.source_lines.size() == 11);

  const ExperimentConfig energy = parse("stopping = relative_energy:1e-8\n");
  CHECK(energy.stopping.norm == DifferenceNorm::energy);
  CHECK(energy.stopping.theta == 1e-8);
}

TEST_CASE("configuration errors") {
  CHECK_THROWS_WITH_AS(parse("frobnicate = 1\n"), doctest::Contains("unknown key 'frobnicate'"), ConfigError);
  CHECK_THROWS_WITH_AS(parse("p_max = 3\np_max = 4\n"), doctest::Contains("duplicate key"), ConfigError);
  CHECK_THROWS_AS(parse("p_max = three\n"), ConfigError);
  CHECK_THROWS_AS(parse("p_max 3\n"), ConfigError);
  CHECK_THROWS_AS(parse("solver = sparse\n"), ConfigError);
  CHECK_THROWS_AS(parse("stopping = sometimes:3\n"), ConfigError);
  CHECK_THROWS_AS(parse("f = sine\n"), ConfigError);
  CHECK_THROWS_AS(parse("alpha = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse("domain = lshape\nf = manufactured\n"), ConfigError);
  CHECK_THROWS_AS(parse("domain = custom\ncorners = 0 0, 1 0, 0 1\n"), ConfigError);
  CHECK_THROWS_AS(parse("ref_delta = 1\n"), ConfigError);
}

TEST_CASE("canonical text round trips") {
  const ExperimentConfig c = parse(
      "domain = custom\ncorners = 0 0, 2 0, 2 1, 1 1, 1 2, 0 2\nmesh = ear\np_max = 4\n"
      "f = constant:3\nstopping = coupled:1.5\nlambda = 0.1\n");
  const ExperimentConfig d = parse(c.to_text());
  CHECK(d.to_text() == c.to_text());
  CHECK(d.corners.size() == 6);
  CHECK(d.f.to_string() == c.f.to_string());
  CHECK(d.lambda == 0.1);
}
