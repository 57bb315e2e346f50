#include "hpilg/fit.hpp"

#include <cmath>
#include <stdexcept>

#include "hpilg/error.hpp"

namespace hpilg {

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw Error("linear_fit: need at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw Error("linear_fit: x values are all equal");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - fit.intercept - fit.slope * x[i];
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

LinearFit loglog_fit(std::span<const double> x, std::span<const double> y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  return linear_fit(lx, ly);
}

WorkKey parse_work_key(const std::string& text) {
  if (text == "dofs") return WorkKey::dofs;
  if (text == "flops") return WorkKey::flops;
  if (text == "seconds") return WorkKey::seconds;
  throw ConfigError("unknown work key '" + text + "' (expected dofs, flops or seconds)");
}

int default_root(WorkKey key) { return key == WorkKey::dofs ? 3 : 7; }

ExponentialFit fit_exponential(std::span<const double> work, std::span<const double> error, int root) {
  if (root < 1) throw Error("fit_exponential: root must be positive");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < work.size() && i < error.size(); ++i) {
    if (!(work[i] > 0.0) || !(error[i] > 0.0) || !std::isfinite(error[i])) continue;
    x.push_back(std::pow(work[i], 1.0 / root));
    y.push_back(std::log(error[i]));
  }
  if (x.size() < 4) throw Error("fit_exponential: fewer than 4 usable records");
  const LinearFit line = linear_fit(x, y);
  ExponentialFit fit;
  fit.b = -line.slope;
  fit.C = std::exp(line.intercept);
  fit.r_squared = line.r_squared;
  fit.points = x.size();
  return fit;
}

ExponentialFit fit_exponential(const std::vector<ConvergenceRecord>& records, WorkKey key, int root,
                               int min_p) {
  std::vector<double> work, error;
  for (const ConvergenceRecord& r : records) {
    if (r.p < min_p) continue;
    switch (key) {
      case WorkKey::dofs: work.push_back(static_cast<double>(r.n_free)); break;
      case WorkKey::flops: work.push_back(static_cast<double>(r.flops_total)); break;
      case WorkKey::seconds: work.push_back(r.wall_seconds); break;
    }
    error.push_back(r.error_energy);
  }
  return fit_exponential(work, error, root);
}

}  // namespace hpilg
