#pragma once

// Element-level kernels and the two loop drivers over them. The serial
// driver scatters each element result as soon as it is computed; the
// parallel driver computes all element results concurrently into a buffer
// and scatters afterwards in element order, so both sum in the same order.

#include <cstdint>
#include <span>
#include <vector>

#include "hpilg/assembly.hpp"

namespace hpilg::detail {

/// Reference-element stiffness pieces: int dxi dxj, int (dxi dyj + dyi dxj),
/// int dyi dyj, each m x m row-major.
struct ReferenceStiffness {
  std::size_t m = 0;
  std::vector<double> sxx, sxy, syy;
};

ReferenceStiffness reference_stiffness(const ShapeTable& shapes);

std::uint64_t element_stiffness(const HpSpace& space, const ReferenceStiffness& ref, std::size_t t,
                                double* out);
std::uint64_t element_load(const HpSpace& space, const Tabulation& tab, const DataSurrogate& f,
                           std::size_t t, double* work, double* out);
std::uint64_t element_nonlinear(const HpSpace& space, const Tabulation& tab, const double* u,
                                double lambda, int q, std::size_t t, double* work, double* out);
void element_apply(const HpSpace& space, const ElementBlocks& blocks, const double* x, std::size_t t,
                   double* work, double* out);

/// global[dofs[i]] += local[i] over the free entries.
inline void scatter(std::span<const int> dofs, const double* local, double* global) {
  for (std::size_t i = 0; i < dofs.size(); ++i)
    if (dofs[i] >= 0) global[dofs[i]] += local[i];
}

/// Calls fn(t) for every t in [0, n), in order or as an OpenMP loop.
/// Only for loops whose iterations write disjoint outputs.
template <class Fn>
void for_each_element(Execution exec, std::size_t n, Fn&& fn) {
  if (exec == Execution::serial) {
    for (std::size_t t = 0; t < n; ++t) fn(t);
    return;
  }
  const auto count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 4)
  for (long t = 0; t < count; ++t) fn(static_cast<std::size_t>(t));
}

namespace serial {
std::uint64_t stiffness(const HpSpace& space, const ReferenceStiffness& ref, ElementBlocks& out);
std::uint64_t load(const HpSpace& space, const Tabulation& tab, const DataSurrogate& f, double* out);
std::uint64_t nonlinear(const HpSpace& space, const Tabulation& tab, const double* u, double lambda,
                        int q, double* out);
void apply(const HpSpace& space, const ElementBlocks& blocks, const double* x, double* out);
}  // namespace serial

namespace parallel {
std::uint64_t stiffness(const HpSpace& space, const ReferenceStiffness& ref, ElementBlocks& out);
std::uint64_t load(const HpSpace& space, const Tabulation& tab, const DataSurrogate& f, double* out);
std::uint64_t nonlinear(const HpSpace& space, const Tabulation& tab, const double* u, double lambda,
                        int q, double* out);
void apply(const HpSpace& space, const ElementBlocks& blocks, const double* x, double* out);
}  // namespace parallel

}  // namespace hpilg::detail
