#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hpilg {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Self-checks behind `hpilg verify`: manufactured-solution exactness,
/// quadrature exactness, the linear-case contraction, monotonicity of the
/// nonlinear form, dense/condensed agreement and mesh grading. Each check
/// catches its own exceptions and reports them as failures.
std::vector<CheckResult> run_verification(std::uint64_t seed = 1, std::ostream* progress = nullptr);

}  // namespace hpilg
