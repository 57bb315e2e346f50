#pragma once

#include <span>
#include <string>
#include <vector>

#include "hpilg/records.hpp"

namespace hpilg {

struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  double r_squared = 0.0;
};

/// Least-squares line y = intercept + slope x. Needs two distinct x values.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);
/// Line fitted to (log x, log y); the slope is the power-law exponent.
LinearFit loglog_fit(std::span<const double> x, std::span<const double> y);

enum class WorkKey { dofs, flops, seconds };
WorkKey parse_work_key(const std::string& text);
/// 3 for DOFs, 7 for flops and seconds.
int default_root(WorkKey key);

/// error ~ C exp(-b work^(1/root)).
struct ExponentialFit {
  double C = 0.0;
  double b = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

/// Fits log(error) against work^(1/root). Throws Error with fewer than 4
/// points having positive error and work.
ExponentialFit fit_exponential(std::span<const double> work, std::span<const double> error, int root);
/// Same over records with p >= min_p.
ExponentialFit fit_exponential(const std::vector<ConvergenceRecord>& records, WorkKey key, int root,
                               int min_p = 1);

}  // namespace hpilg
