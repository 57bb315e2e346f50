#include "hpilg/experiment.hpp"

#include <chrono>
#include <fstream>
#include <memory>
#include <ostream>

#include "hpilg/discrete_function.hpp"
#include "hpilg/energy_error.hpp"
#include "hpilg/projection.hpp"

namespace hpilg {

namespace {

struct Level {
  std::unique_ptr<HpSpace> space;
  std::vector<double> u;
};

Level solve_level(const ExperimentConfig& config, const IlgConfig& ilg, const DataSurrogate& f, int p,
                  const Level* previous, FlopCounter& flops, std::vector<IlgStep>* log, int& iterations) {
  Level level;
  level.space = std::make_unique<HpSpace>(build_geometric_mesh(config.initial_mesh(), p), p);
  std::vector<double> u0;
  if (previous) u0 = project_initial_guess(DiscreteFunction(*previous->space, previous->u), *level.space);
  const IlgSystem system(*level.space, ilg, f, &flops);
  IlgResult result = run_ilg(system, ilg, std::move(u0), &flops, p);
  iterations = result.iterations;
  if (log) log->insert(log->end(), result.log.begin(), result.log.end());
  level.u = std::move(result.u);
  return level;
}

}  // namespace

DataSurrogate make_forcing(const ExperimentConfig& config) {
  if (config.f.kind == ForcingSpec::Kind::manufactured)
    return DataSurrogate::exact(manufactured_forcing(manufactured_solution(), config.lambda, config.q));
  return DataSurrogate::exact(config.f.polynomial);
}

ExperimentResult run_experiment(const ExperimentConfig& config, std::ostream* progress) {
  config.validate();
  const IlgConfig ilg = config.ilg_config();
  const DataSurrogate f = make_forcing(config);
  ExperimentResult result;
  std::vector<Level> levels;

  for (int p = 1; p <= config.p_max; ++p) {
    const auto start = std::chrono::steady_clock::now();
    FlopCounter flops;
    int iterations = 0;
    try {
      levels.push_back(solve_level(config, ilg, f, p, levels.empty() ? nullptr : &levels.back(), flops,
                                   &result.iterations, iterations));
    } catch (const Error& e) {
      throw Error("level p = " + std::to_string(p) + ": " + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const HpSpace& space = *levels.back().space;
    ConvergenceRecord r;
    r.p = p;
    r.layers = space.mesh().layer_count();
    r.elements = space.mesh().triangle_count();
    r.n_free = space.free_count();
    r.iterations = iterations;
    r.flops_factor = flops[Phase::factor];
    r.flops_iterate_total = flops[Phase::backsolve] + flops[Phase::nonlinear_eval];
    r.flops_total = flops.total();
    r.wall_seconds = config.deterministic ? 0.0 : seconds;
    result.records.push_back(r);
    result.level_flops.push_back(flops);
    if (progress)
      *progress << "level p=" << p << " elements=" << r.elements << " n_free=" << r.n_free
                << " iterations=" << iterations << " flops=" << r.flops_total << std::endl;
  }

  if (config.f.kind == ForcingSpec::Kind::manufactured) {
    const Polynomial2D exact = manufactured_solution();
    for (std::size_t i = 0; i < levels.size(); ++i)
      result.records[i].error_energy =
          energy_error_exact(DiscreteFunction(*levels[i].space, levels[i].u), exact);
    return result;
  }

  IlgConfig ref = ilg;
  ref.stopping = StoppingRule::relative(config.ref_theta, DifferenceNorm::energy);
  ref.solver = SolverPath::condensed;
  ref.max_iterations = std::max(config.max_iterations, 2000);
  result.p_ref = config.p_max + config.ref_delta;
  int ref_iterations = 0;
  Level reference;
  try {
    reference = solve_level(config, ref, f, result.p_ref, nullptr, result.reference_flops, nullptr,
                            ref_iterations);
  } catch (const Error& e) {
    throw Error("reference level p = " + std::to_string(result.p_ref) + ": " + e.what());
  }
  if (progress)
    *progress << "reference p=" << result.p_ref << " n_free=" << reference.space->free_count()
              << " iterations=" << ref_iterations << std::endl;
  const DiscreteFunction u_ref(*reference.space, reference.u);
  for (std::size_t i = 0; i < levels.size(); ++i)
    result.records[i].error_energy = compute_energy_error(DiscreteFunction(*levels[i].space, levels[i].u), u_ref);
  return result;
}

void write_experiment(const ExperimentResult& result, const ExperimentConfig& config,
                      const std::filesystem::path& directory) {
  std::filesystem::create_directories(directory);
  emit_records(result.records, directory / "records.csv");

  std::ofstream meta(directory / "records.meta");
  meta << "# parameters\n" << config.to_text();
  meta << "# flop model\nflop_model = " << flop_model_version << '\n';
  meta << "# reference\np_ref = " << result.p_ref << '\n';
  if (result.p_ref > 0)
    meta << "ref_stopping = " << StoppingRule::relative(config.ref_theta, DifferenceNorm::energy).to_string()
         << '\n';
  if (!config.source_lines.empty()) {
    meta << "# config file\n";
    for (const std::string& line : config.source_lines) meta << "> " << line << '\n';
  }
  if (!meta) throw Error("cannot write " + (directory / "records.meta").string());

  std::ofstream it(directory / "iterations.csv");
  it << "p,step,l2_diff,energy_diff,flops\n";
  for (const IlgStep& s : result.iterations)
    it << s.level << ',' << s.step << ',' << format_real(s.l2_diff) << ',' << format_real(s.energy_diff) << ','
       << s.flops << '\n';

  std::ofstream fl(directory / "flops.csv");
  fl << "p,phase,flops\n";
  for (std::size_t i = 0; i < result.level_flops.size(); ++i)
    for (Phase phase : all_phases)
      fl << result.records[i].p << ',' << to_string(phase) << ',' << result.level_flops[i][phase] << '\n';
  if (!it || !fl) throw Error("cannot write iteration or flop files in " + directory.string());
}

}  // namespace hpilg
