#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hpilg/experiment.hpp"
#include "hpilg/fit.hpp"

using namespace hpilg;

namespace {

ExperimentConfig parse(const std::string& text) {
  std::istringstream is(text);
  return ExperimentConfig::parse(is);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("records describe the geometric hierarchy") {
  const ExperimentConfig c = parse("domain = lshape\np_max = 5\n");
  const ExperimentResult r = run_experiment(c);
  REQUIRE(r.records.size() == 5);
  CHECK(r.p_ref == 7);
  std::size_t steps = 0;
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    const ConvergenceRecord& rec = r.records[i];
    CAPTURE(rec.p);
    CHECK(rec.p == static_cast<int>(i) + 1);
    CHECK(rec.layers == rec.p);
    CHECK(rec.iterations >= 1);
    CHECK(rec.error_energy > 0.0);
    CHECK(rec.flops_total >= rec.flops_factor + rec.flops_iterate_total);
    CHECK(rec.flops_total == r.level_flops[i].total());
    CHECK(rec.wall_seconds >= 0.0);
    if (i > 0) {
      CHECK(rec.n_free > r.records[i - 1].n_free);
      CHECK(rec.elements > r.records[i - 1].elements);
      CHECK(rec.error_energy < r.records[i - 1].error_energy);
    }
    steps += rec.iterations;
  }
  CHECK(r.iterations.size() == steps);
}

TEST_CASE("errors do not depend on the reference offset") {
  const ExperimentResult a = run_experiment(parse("p_max = 6\nref_delta = 2\n"));
  const ExperimentResult b = run_experiment(parse("p_max = 6\nref_delta = 3\n"));
  for (int i = 0; i + 1 < 6; ++i) {
    CAPTURE(i + 1);
    const double ea = a.records[i].error_energy, eb = b.records[i].error_energy;
    CHECK(std::abs(ea - eb) <= 0.05 * eb);
  }
}

TEST_CASE("deterministic runs are reproducible") {
  const ExperimentConfig c = parse("p_max = 4\ndeterministic = true\nf = polynomial:1:0:0,-2:1:1\n");
  const ExperimentResult a = run_experiment(c), b = run_experiment(c);
  CHECK(a.records == b.records);
  for (const ConvergenceRecord& rec : a.records) CHECK(rec.wall_seconds == 0.0);
}

TEST_CASE("manufactured runs are measured against the exact solution") {
  const ExperimentResult r = run_experiment(parse("p_max = 5\nf = manufactured\nstopping = relative:1e-12\n"));
  CHECK(r.p_ref == 0);
  for (std::size_t i = 3; i < r.records.size(); ++i) CHECK(r.records[i].error_energy <= 1e-9);
  CHECK(r.records[0].error_energy > 1e-3);
}

TEST_CASE("experiment files") {
  const ExperimentConfig c = parse("p_max = 3\ndeterministic = true\n");
  const ExperimentResult r = run_experiment(c);
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "hpilg_test_experiment";
  std::filesystem::remove_all(dir);
  write_experiment(r, c, dir);

  CHECK(read_records(dir / "records.csv") == r.records);
  const std::string meta = slurp(dir / "records.meta");
  CHECK(meta.find("flop_model = ") != std::string::npos);
  CHECK(meta.find("p_ref = 5") != std::string::npos);
  CHECK(meta.find("ref_stopping = relative_energy:") != std::string::npos);
  CHECK(meta.find("> p_max = 3") != std::string::npos);

  std::istringstream it(slurp(dir / "iterations.csv"));
  std::string line;
  std::size_t lines = 0;
  while (std::getline(it, line)) ++lines;
  CHECK(lines == r.iterations.size() + 1);

  std::istringstream fl(slurp(dir / "flops.csv"));
  lines = 0;
  while (std::getline(fl, line)) ++lines;
  CHECK(lines == 3 * all_phases.size() + 1);
  std::filesystem::remove_all(dir);
}

TEST_CASE("failures name the level") {
  ExperimentConfig c = parse("p_max = 2\nalpha = 1\nlambda = 1e8\nf = constant:1000\nmax_iterations = 50\n");
  CHECK_THROWS_WITH(run_experiment(c), doctest::Contains("level p = 1"));
}

TEST_CASE("square example converges exponentially in the flop count") {
  const ExperimentResult r = run_experiment(parse("p_max = 10\n"));
  std::vector<ConvergenceRecord> tail(r.records.begin() + 3, r.records.end());
  const ExponentialFit fit = fit_exponential(tail, WorkKey::flops, 7);
  MESSAGE("b = " << fit.b << ", R^2 = " << fit.r_squared);
  CHECK(fit.b > 0.0);
  CHECK(fit.r_squared >= 0.98);
  // Wall time is only sanity-checked; tiny levels are noise.
  for (std::size_t i = 4; i < r.records.size(); ++i)
    CHECK(r.records[i].wall_seconds > r.records[i - 1].wall_seconds);
}

TEST_CASE("dense path costs more and grows faster") {
  std::vector<double> ps, dense, cond;
  ExperimentResult rd = run_experiment(parse("p_max = 9\nsolver = dense\ndeterministic = true\n"));
  ExperimentResult rc = run_experiment(parse("p_max = 9\nsolver = condensed\ndeterministic = true\n"));
  CHECK(rd.records.back().flops_total > rc.records.back().flops_total);
  for (std::size_t i = 3; i < rd.records.size(); ++i) {
    ps.push_back(rd.records[i].p);
    dense.push_back(static_cast<double>(rd.records[i].flops_total));
    cond.push_back(static_cast<double>(rc.records[i].flops_total));
    // Same space and the same iterate sequence up to rounding.
    CHECK(std::abs(rd.records[i].error_energy - rc.records[i].error_energy) <= 1e-6 * rc.records[i].error_energy);
  }
  const double sd = loglog_fit(ps, dense).slope, sc = loglog_fit(ps, cond).slope;
  MESSAGE("flops_total slope p = 4..9: dense " << sd << ", condensed " << sc);
  CHECK(sd - sc >= 1.5);
}
