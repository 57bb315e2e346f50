#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace hpilg {

/// Flop model: a multiply-add is 2 flops, a division or square root is 1,
/// comparisons and copies are free.
inline constexpr std::string_view flop_model_version = "fma2-div1-v1";

enum class Phase { setup, factor, backsolve, nonlinear_eval };
inline constexpr std::array<Phase, 4> all_phases{Phase::setup, Phase::factor, Phase::backsolve,
                                                 Phase::nonlinear_eval};

constexpr std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::setup: return "setup";
    case Phase::factor: return "factor";
    case Phase::backsolve: return "backsolve";
    case Phase::nonlinear_eval: return "nonlinear_eval";
  }
  return "?";
}

/// Per-phase flop tally.
struct FlopCounter {
  std::array<std::uint64_t, 4> counts{};

  void add(Phase phase, std::uint64_t flops) { counts[static_cast<int>(phase)] += flops; }
  std::uint64_t operator[](Phase phase) const { return counts[static_cast<int>(phase)]; }
  std::uint64_t total() const { return counts[0] + counts[1] + counts[2] + counts[3]; }

  FlopCounter& operator+=(const FlopCounter& o) {
    for (int i = 0; i < 4; ++i) counts[i] += o.counts[i];
    return *this;
  }
  friend FlopCounter operator-(FlopCounter a, const FlopCounter& b) {
    for (int i = 0; i < 4; ++i) a.counts[i] -= b.counts[i];
    return a;
  }
  friend bool operator==(const FlopCounter&, const FlopCounter&) = default;
};

inline void count(FlopCounter* counter, Phase phase, std::uint64_t flops) {
  if (counter) counter->add(phase, flops);
}

}  // namespace hpilg
