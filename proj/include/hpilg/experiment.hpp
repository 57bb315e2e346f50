#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "hpilg/experiment_config.hpp"
#include "hpilg/flops.hpp"
#include "hpilg/ilg_solver.hpp"
#include "hpilg/records.hpp"

namespace hpilg {

struct ExperimentResult {
  std::vector<ConvergenceRecord> records;
  std::vector<IlgStep> iterations;        ///< every Picard step of every level
  std::vector<FlopCounter> level_flops;   ///< per level, by phase
  int p_ref = 0;                          ///< 0 when errors are against the exact solution
  FlopCounter reference_flops;
};

/// Runs levels p = 1..p_max on geometric meshes with p corner layers. Each
/// level starts from the interpolant of the previous solution (zero at
/// p = 1). Errors are measured against the exact solution for the
/// manufactured right-hand side, otherwise against a zero-start reference
/// run at p_max + ref_delta, stopped once the energy norm of the update has
/// dropped by ref_theta relative to the first one.
/// `progress`, if given, receives one line per level.
ExperimentResult run_experiment(const ExperimentConfig& config, std::ostream* progress = nullptr);

/// Writes records.csv, records.meta, iterations.csv and flops.csv.
void write_experiment(const ExperimentResult& result, const ExperimentConfig& config,
                      const std::filesystem::path& directory);

DataSurrogate make_forcing(const ExperimentConfig& config);

}  // namespace hpilg
