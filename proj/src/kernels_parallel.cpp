#include "kernels.hpp"

namespace hpilg::detail::parallel {

namespace {

void scatter_all(const HpSpace& space, const std::vector<double>& locals, double* out) {
  const std::size_t m = space.local_size();
  for (std::size_t t = 0; t < space.mesh().triangle_count(); ++t)
    scatter(space.element_dofs(t), locals.data() + t * m, out);
}

}  // namespace

std::uint64_t stiffness(const HpSpace& space, const ReferenceStiffness& ref, ElementBlocks& out) {
  const auto nt = static_cast<long>(out.element_count());
  std::uint64_t flops = 0;
#pragma omp parallel for schedule(static) reduction(+ : flops)
  for (long t = 0; t < nt; ++t) flops += element_stiffness(space, ref, t, out.block(t).data());
  return flops;
}

std::uint64_t load(const HpSpace& space, const Tabulation& tab, const DataSurrogate& f, double* out) {
  const std::size_t m = space.local_size();
  const auto nt = static_cast<long>(space.mesh().triangle_count());
  std::vector<double> locals(nt * m);
  std::uint64_t flops = 0;
#pragma omp parallel reduction(+ : flops)
  {
    std::vector<double> work(tab.rule.size());
#pragma omp for schedule(static)
    for (long t = 0; t < nt; ++t)
      flops += element_load(space, tab, f, t, work.data(), locals.data() + t * m);
  }
  scatter_all(space, locals, out);
  return flops;
}

std::uint64_t nonlinear(const HpSpace& space, const Tabulation& tab, const double* u, double lambda,
                        int q, double* out) {
  const std::size_t m = space.local_size();
  const auto nt = static_cast<long>(space.mesh().triangle_count());
  std::vector<double> locals(nt * m);
  std::uint64_t flops = 0;
#pragma omp parallel reduction(+ : flops)
  {
    std::vector<double> work(m + tab.rule.size());
#pragma omp for schedule(static)
    for (long t = 0; t < nt; ++t)
      flops += element_nonlinear(space, tab, u, lambda, q, t, work.data(), locals.data() + t * m);
  }
  scatter_all(space, locals, out);
  return flops;
}

void apply(const HpSpace& space, const ElementBlocks& blocks, const double* x, double* out) {
  const std::size_t m = space.local_size();
  const auto nt = static_cast<long>(blocks.element_count());
  std::vector<double> locals(nt * m);
#pragma omp parallel
  {
    std::vector<double> work(m);
#pragma omp for schedule(static)
    for (long t = 0; t < nt; ++t) element_apply(space, blocks, x, t, work.data(), locals.data() + t * m);
  }
  scatter_all(space, locals, out);
}

}  // namespace hpilg::detail::parallel
