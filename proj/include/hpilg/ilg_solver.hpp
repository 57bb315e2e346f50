#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hpilg/assembly.hpp"
#include "hpilg/error.hpp"
#include "hpilg/linear_solve.hpp"

namespace hpilg {

enum class StoppingKind { relative_reduction, fixed_steps, coupled };
/// Norm of U_{n+1} - U_n used by the relative reduction test.
enum class DifferenceNorm { l2, energy };

struct StoppingRule {
  StoppingKind kind = StoppingKind::relative_reduction;
  double theta = 1e-2;    ///< relative_reduction factor
  int steps = 1;          ///< fixed_steps count
  double coupling = 1.0;  ///< coupled: n = ceil(coupling * p)
  DifferenceNorm norm = DifferenceNorm::l2;

  static StoppingRule relative(double theta, DifferenceNorm norm = DifferenceNorm::l2) {
    return {StoppingKind::relative_reduction, theta, 1, 1.0, norm};
  }
  static StoppingRule fixed(int steps) { return {StoppingKind::fixed_steps, 1e-2, steps, 1.0}; }
  static StoppingRule coupled(double c) { return {StoppingKind::coupled, 1e-2, 1, c}; }

  /// Number of steps for the fixed and coupled modes at degree p.
  int step_count(int p) const;
  std::string to_string() const;
};

struct IlgConfig {
  double alpha = 0.5;
  double lambda = 1.0;
  int q = 1;
  StoppingRule stopping;
  int max_iterations = 500;
  SolverPath solver = SolverPath::condensed;
  Execution exec = Execution::parallel;

  /// Throws ConfigError unless alpha in (0, 1], lambda >= 0, q >= 0,
  /// theta in (0, 1) and max_iterations >= 1.
  void validate() const;
};

/// The iteration diverged: a non-finite iterate, or successive differences
/// growing by more than 10x for 3 consecutive steps.
class IlgDivergence : public Error {
 public:
  IlgDivergence(const std::string& what, double alpha, double last_norm)
      : Error(what), alpha_(alpha), last_norm_(last_norm) {}
  double alpha() const { return alpha_; }
  double last_norm() const { return last_norm_; }

 private:
  double alpha_;
  double last_norm_;
};

/// max_iterations was reached before the relative reduction was met.
class IlgNotConverged : public Error {
 public:
  IlgNotConverged(int iterations, double final_ratio)
      : Error(message(iterations, final_ratio)),
        iterations_(iterations),
        final_ratio_(final_ratio) {}
  int iterations() const { return iterations_; }
  double final_ratio() const { return final_ratio_; }

 private:
  static std::string message(int iterations, double ratio);
  int iterations_;
  double final_ratio_;
};

/// Everything that stays fixed across the Picard steps of one level: the
/// element stiffness blocks, the factored operator, the tabulated
/// nonlinear form and the load vector.
class IlgSystem {
 public:
  IlgSystem(const HpSpace& space, const IlgConfig& config, const DataSurrogate& f,
            FlopCounter* flops = nullptr);

  const HpSpace& space() const { return *space_; }
  const ElementBlocks& blocks() const { return *blocks_; }
  const std::vector<double>& load() const { return load_; }
  SolverPath path() const { return path_; }

  std::vector<double> solve(std::span<const double> rhs, FlopCounter* flops = nullptr) const;
  std::vector<double> nonlinear(std::span<const double> u, double lambda,
                                FlopCounter* flops = nullptr) const;
  double energy_norm(std::span<const double> x) const;

 private:
  const HpSpace* space_;
  SolverPath path_;
  Execution exec_;
  std::shared_ptr<const ElementBlocks> blocks_;
  std::unique_ptr<CholeskyFactor> dense_;
  std::unique_ptr<CondensedSystem> condensed_;
  NonlinearForm form_;
  std::vector<double> load_;
};

/// One row of the iteration log.
struct IlgStep {
  int level = 0;
  int step = 0;              ///< n for the update U_n -> U_{n+1}
  double l2_diff = 0.0;      ///< ||U_{n+1} - U_n||_l2
  double energy_diff = 0.0;  ///< ||grad(U_{n+1} - U_n)||_L2
  std::uint64_t flops = 0;   ///< backsolve and nonlinear evaluation flops
};

struct IlgState {
  std::vector<double> u;    ///< U_n
  std::vector<double> eta;  ///< last Riesz representer
  int iteration = 0;
  std::vector<IlgStep> log;
};

/// eta = A^{-1}(F - lambda b(U_n)), U_{n+1} = (1 - alpha) U_n + alpha eta.
/// Appends a log row. Throws IlgDivergence on non-finite values.
void picard_step(const IlgSystem& system, const IlgConfig& config, IlgState& state,
                 FlopCounter* flops = nullptr, int level = 0);

struct IlgResult {
  std::vector<double> u;
  std::vector<IlgStep> log;
  int iterations = 0;
  /// ||U_{n+1} - U_n|| / ||U_1 - U_0|| at the last step, in the stopping norm.
  double final_ratio = 0.0;
};

IlgResult run_ilg(const IlgSystem& system, const IlgConfig& config, std::vector<double> u_init,
                  FlopCounter* flops = nullptr, int level = 0);
IlgResult run_ilg(const HpSpace& space, const IlgConfig& config, const DataSurrogate& f,
                  std::vector<double> u_init, FlopCounter* flops = nullptr);

double r_alpha(double alpha, double L);
double alpha_star(double L);
double r_min(double L);

struct ContractionDiagnostics {
  std::vector<double> ratios;   ///< energy-norm ratios rho_n
  double geometric_rate = 0.0;  ///< exp(slope) of a least-squares fit of log differences
  double r_alpha = 0.0;         ///< bound for the hypothesized L
  double alpha_star = 0.0;
  double r_min = 0.0;
};

/// Needs at least 3 log rows.
ContractionDiagnostics contraction_report(const std::vector<IlgStep>& log, double alpha, double L);

}  // namespace hpilg
