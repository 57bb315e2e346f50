// hpilg: convergence studies for -Laplace(u) + lambda u^(2q+1) = f.
//
//   hpilg run --config FILE --out DIR [--deterministic] [--solver dense|condensed]
//   hpilg fit --records FILE --work dofs|flops|seconds [--root R] [--min-p P]
//   hpilg verify [--seed S]
//   hpilg mesh --config FILE --layers K --out FILE

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "hpilg/experiment.hpp"
#include "hpilg/fit.hpp"
#include "hpilg/mesh_io.hpp"
#include "hpilg/verify.hpp"

namespace {

using namespace hpilg;

int cmd_run(const std::string& config_path, const std::string& out, bool deterministic,
            const std::string& solver, bool quiet) {
  ExperimentConfig config = ExperimentConfig::from_file(config_path);
  if (deterministic) config.deterministic = true;
  if (solver == "dense") config.solver = SolverPath::dense;
  if (solver == "condensed") config.solver = SolverPath::condensed;
  const ExperimentResult result = run_experiment(config, quiet ? nullptr : &std::cerr);
  write_experiment(result, config, out);
  write_records(std::cout, result.records);
  return 0;
}

int cmd_fit(const std::string& path, const std::string& work, std::optional<int> root, int min_p) {
  const WorkKey key = parse_work_key(work);
  const int r = root.value_or(default_root(key));
  const ExponentialFit fit = fit_exponential(read_records(path), key, r, min_p);
  std::cout << "work = " << work << "\nroot = " << r << "\npoints = " << fit.points
            << "\nC = " << format_real(fit.C) << "\nb = " << format_real(fit.b)
            << "\nr_squared = " << format_real(fit.r_squared) << '\n';
  return 0;
}

int cmd_verify(std::uint64_t seed) {
  const std::vector<CheckResult> results = run_verification(seed, &std::cout);
  int failed = 0;
  for (const CheckResult& r : results) failed += r.passed ? 0 : 1;
  std::cout << (failed ? "verification FAILED (" + std::to_string(failed) + " checks)" : "verification passed")
            << '\n';
  return failed ? 1 : 0;
}

int cmd_mesh(const std::string& config_path, int layers, const std::string& out) {
  const ExperimentConfig config = ExperimentConfig::from_file(config_path);
  write_mesh(out, build_geometric_mesh(config.initial_mesh(), layers));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hp-FEM solver for semilinear elliptic problems with damped Picard iteration"};
  app.require_subcommand(1);

  std::string config_path, out, solver, records, work = "dofs";
  bool deterministic = false, quiet = false;
  std::optional<int> root;
  int min_p = 4, layers = 1;
  std::uint64_t seed = 1;

  CLI::App* run = app.add_subcommand("run", "run a convergence study");
  run->add_option("--config", config_path, "experiment config file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out, "output directory")->required();
  run->add_flag("--deterministic", deterministic, "write zero wall times so reruns are byte-identical");
  run->add_option("--solver", solver, "override the solver path")->check(CLI::IsMember({"dense", "condensed"}));
  run->add_flag("--quiet", quiet, "no per-level progress on stderr");

  CLI::App* fit = app.add_subcommand("fit", "fit error = C exp(-b work^(1/root)) to a records file");
  fit->add_option("--records", records, "records.csv")->required()->check(CLI::ExistingFile);
  fit->add_option("--work", work, "work measure")->check(CLI::IsMember({"dofs", "flops", "seconds"}));
  fit->add_option("--root", root, "root of the work (default 3 for dofs, 7 otherwise)")->check(CLI::PositiveNumber);
  fit->add_option("--min-p", min_p, "smallest level included")->capture_default_str();

  CLI::App* verify = app.add_subcommand("verify", "run the built-in self checks");
  verify->add_option("--seed", seed, "random seed")->capture_default_str();

  CLI::App* mesh = app.add_subcommand("mesh", "write the geometric mesh of a config");
  mesh->add_option("--config", config_path, "experiment config file")->required()->check(CLI::ExistingFile);
  mesh->add_option("--layers", layers, "corner layers")->required()->check(CLI::PositiveNumber);
  mesh->add_option("--out", out, "mesh file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config_path, out, deterministic, solver, quiet);
    if (*fit) return cmd_fit(records, work, root, min_p);
    if (*verify) return cmd_verify(seed);
    if (*mesh) return cmd_mesh(config_path, layers, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
