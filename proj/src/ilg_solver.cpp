#include "hpilg/ilg_solver.hpp"

#include <cmath>
#include <sstream>

namespace hpilg {

int StoppingRule::step_count(int p) const {
  switch (kind) {
    case StoppingKind::fixed_steps: return steps;
    case StoppingKind::coupled: return static_cast<int>(std::ceil(coupling * p - 1e-12));
    case StoppingKind::relative_reduction: break;
  }
  return 0;
}

std::string StoppingRule::to_string() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case StoppingKind::relative_reduction:
      os << (norm == DifferenceNorm::energy ? "relative_energy:" : "relative:") << theta;
      break;
    case StoppingKind::fixed_steps: os << "fixed:" << steps; break;
    case StoppingKind::coupled: os << "coupled:" << coupling; break;
  }
  return os.str();
}

std::string IlgNotConverged::message(int iterations, double ratio) {
  std::ostringstream os;
  os << "ILG iteration did not reach the requested reduction after " << iterations
     << " steps; final ratio " << ratio;
  return os.str();
}

void IlgConfig::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in (0, 1]");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ConfigError("lambda must be non-negative");
  if (q < 0) throw ConfigError("q must be non-negative");
  if (max_iterations < 1) throw ConfigError("max_iterations must be at least 1");
  if (stopping.kind == StoppingKind::relative_reduction && !(stopping.theta > 0.0 && stopping.theta < 1.0))
    throw ConfigError("relative reduction factor must lie in (0, 1)");
  if (stopping.kind == StoppingKind::fixed_steps && stopping.steps < 1)
    throw ConfigError("fixed step count must be at least 1");
  if (stopping.kind == StoppingKind::coupled && !(stopping.coupling > 0.0))
    throw ConfigError("coupling constant must be positive");
}

IlgSystem::IlgSystem(const HpSpace& space, const IlgConfig& config, const DataSurrogate& f,
                     FlopCounter* flops)
    : space_(&space),
      path_(config.solver),
      exec_(config.exec),
      blocks_(std::make_shared<const ElementBlocks>(assemble_element_blocks(space, config.exec, flops))),
      form_(space, config.q),
      load_(assemble_load(space, f, config.exec, flops)) {
  if (path_ == SolverPath::dense)
    dense_ = std::make_unique<CholeskyFactor>(factor_dense(assemble_global(space, blocks_, flops), flops));
  else
    condensed_ = std::make_unique<CondensedSystem>(space, *blocks_, exec_, flops);
}

std::vector<double> IlgSystem::solve(std::span<const double> rhs, FlopCounter* flops) const {
  return dense_ ? dense_->solve(rhs, flops) : condensed_->solve(rhs, flops);
}

std::vector<double> IlgSystem::nonlinear(std::span<const double> u, double lambda, FlopCounter* flops) const {
  return form_.evaluate(u, lambda, exec_, flops);
}

double IlgSystem::energy_norm(std::span<const double> x) const {
  return hpilg::energy_norm(*space_, *blocks_, x, exec_);
}

void picard_step(const IlgSystem& system, const IlgConfig& config, IlgState& state, FlopCounter* flops,
                 int level) {
  FlopCounter local;
  std::vector<double> rhs = system.load();
  if (config.lambda != 0.0) {
    const std::vector<double> b = system.nonlinear(state.u, config.lambda, &local);
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] -= b[i];
    local.add(Phase::nonlinear_eval, rhs.size());
  }
  state.eta = system.solve(rhs, &local);

  std::vector<double> diff(state.u.size());
  double l2 = 0.0;
  bool finite = true;
  for (std::size_t i = 0; i < state.u.size(); ++i) {
    const double next = (1.0 - config.alpha) * state.u[i] + config.alpha * state.eta[i];
    diff[i] = next - state.u[i];
    state.u[i] = next;
    l2 += diff[i] * diff[i];
    finite = finite && std::isfinite(next);
  }
  local.add(Phase::backsolve, 3 * state.u.size());
  l2 = std::sqrt(l2);
  if (!finite || !std::isfinite(l2)) {
    std::ostringstream os;
    os << "ILG iterate became non-finite at step " << state.iteration << " (alpha = " << config.alpha
       << ", last difference norm = " << l2 << ")";
    throw IlgDivergence(os.str(), config.alpha, l2);
  }
  IlgStep row;
  row.level = level;
  row.step = state.iteration;
  row.l2_diff = l2;
  row.energy_diff = system.energy_norm(diff);
  row.flops = local.total();
  state.log.push_back(row);
  ++state.iteration;
  if (flops) *flops += local;
}

IlgResult run_ilg(const IlgSystem& system, const IlgConfig& config, std::vector<double> u_init,
                  FlopCounter* flops, int level) {
  config.validate();
  if (u_init.empty()) u_init.assign(system.space().free_count(), 0.0);
  if (u_init.size() != system.space().free_count())
    throw std::invalid_argument("run_ilg: initial guess has wrong size");
  IlgState state;
  state.u = std::move(u_init);

  const bool relative = config.stopping.kind == StoppingKind::relative_reduction;
  const int target = relative ? config.max_iterations : config.stopping.step_count(system.space().degree());
  const bool energy = config.stopping.norm == DifferenceNorm::energy;
  int growth = 0;
  double ratio = 0.0;
  bool converged = !relative;
  for (int n = 0; n < target; ++n) {
    picard_step(system, config, state, flops, level);
    const double d0 = energy ? state.log.front().energy_diff : state.log.front().l2_diff;
    const double dn = energy ? state.log.back().energy_diff : state.log.back().l2_diff;
    ratio = d0 > 0.0 ? dn / d0 : 0.0;
    if (n >= 1) {
      const double prev = energy ? state.log[n - 1].energy_diff : state.log[n - 1].l2_diff;
      growth = (prev > 0.0 && dn > 10.0 * prev) ? growth + 1 : 0;
      if (growth >= 3) {
        std::ostringstream os;
        os << "ILG iteration diverged: differences grew tenfold for 3 consecutive steps (alpha = "
           << config.alpha << ", last difference norm = " << dn << ")";
        throw IlgDivergence(os.str(), config.alpha, dn);
      }
      if (relative && dn <= config.stopping.theta * d0) {
        converged = true;
        break;
      }
    }
  }
  if (!converged) throw IlgNotConverged(state.iteration, ratio);

  IlgResult result;
  result.u = std::move(state.u);
  result.log = std::move(state.log);
  result.iterations = state.iteration;
  result.final_ratio = ratio;
  return result;
}

IlgResult run_ilg(const HpSpace& space, const IlgConfig& config, const DataSurrogate& f,
                  std::vector<double> u_init, FlopCounter* flops) {
  config.validate();
  const IlgSystem system(space, config, f, flops);
  return run_ilg(system, config, std::move(u_init), flops);
}

double r_alpha(double alpha, double L) {
  return std::sqrt((1.0 - alpha) * (1.0 - alpha) + alpha * alpha * L * L);
}
double alpha_star(double L) { return 1.0 / (1.0 + L * L); }
double r_min(double L) { return L / std::sqrt(1.0 + L * L); }

ContractionDiagnostics contraction_report(const std::vector<IlgStep>& log, double alpha, double L) {
  if (log.size() < 3) throw std::invalid_argument("contraction_report: need at least 3 steps");
  ContractionDiagnostics d;
  for (std::size_t n = 1; n < log.size(); ++n)
    d.ratios.push_back(log[n - 1].energy_diff > 0.0 ? log[n].energy_diff / log[n - 1].energy_diff : 0.0);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t count = 0;
  for (std::size_t n = 0; n < log.size(); ++n) {
    if (!(log[n].energy_diff > 0.0)) continue;
    const double x = static_cast<double>(n), y = std::log(log[n].energy_diff);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count >= 2) {
    const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    d.geometric_rate = std::exp(slope);
  }
  d.r_alpha = r_alpha(alpha, L);
  d.alpha_star = alpha_star(L);
  d.r_min = r_min(L);
  return d;
}

}  // namespace hpilg
