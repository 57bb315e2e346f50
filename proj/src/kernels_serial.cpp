#include "kernels.hpp"

namespace hpilg::detail::serial {

std::uint64_t stiffness(const HpSpace& space, const ReferenceStiffness& ref, ElementBlocks& out) {
  std::uint64_t flops = 0;
  for (std::size_t t = 0; t < out.element_count(); ++t)
    flops += element_stiffness(space, ref, t, out.block(t).data());
  return flops;
}

std::uint64_t load(const HpSpace& space, const Tabulation& tab, const DataSurrogate& f, double* out) {
  const std::size_t m = space.local_size();
  std::vector<double> local(m), work(tab.rule.size());
  std::uint64_t flops = 0;
  for (std::size_t t = 0; t < space.mesh().triangle_count(); ++t) {
    flops += element_load(space, tab, f, t, work.data(), local.data());
    scatter(space.element_dofs(t), local.data(), out);
  }
  return flops;
}

std::uint64_t nonlinear(const HpSpace& space, const Tabulation& tab, const double* u, double lambda,
                        int q, double* out) {
  const std::size_t m = space.local_size();
  std::vector<double> local(m), work(m + tab.rule.size());
  std::uint64_t flops = 0;
  for (std::size_t t = 0; t < space.mesh().triangle_count(); ++t) {
    flops += element_nonlinear(space, tab, u, lambda, q, t, work.data(), local.data());
    scatter(space.element_dofs(t), local.data(), out);
  }
  return flops;
}

void apply(const HpSpace& space, const ElementBlocks& blocks, const double* x, double* out) {
  const std::size_t m = space.local_size();
  std::vector<double> local(m), work(m);
  for (std::size_t t = 0; t < blocks.element_count(); ++t) {
    element_apply(space, blocks, x, t, work.data(), local.data());
    scatter(space.element_dofs(t), local.data(), out);
  }
}

}  // namespace hpilg::detail::serial
