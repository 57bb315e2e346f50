#include "hpilg/linear_solve.hpp"

#include <stdexcept>

#include "hpilg/dense_cholesky.hpp"
#include "kernels.hpp"

namespace hpilg {

using kernels::packed_index;

CholeskyFactor::CholeskyFactor(std::vector<double> packed, std::size_t n, CholeskyVariant variant)
    : n_(n), l_(std::move(packed)) {
  if (l_.size() != kernels::packed_size(n))
    throw std::invalid_argument("CholeskyFactor: packed storage has wrong size");
  factor_flops_ = variant == CholeskyVariant::blocked ? kernels::cholesky_blocked(l_.data(), n_)
                                                      : kernels::cholesky_unblocked(l_.data(), n_);
}

double CholeskyFactor::operator()(std::size_t i, std::size_t j) const {
  return j <= i ? l_[packed_index(i, j)] : 0.0;
}

void CholeskyFactor::solve_in_place(std::span<double> x, FlopCounter* flops) const {
  if (x.size() != n_) throw std::invalid_argument("CholeskyFactor::solve: dimension mismatch");
  std::uint64_t f = kernels::solve_lower(l_.data(), n_, x.data());
  f += kernels::solve_upper(l_.data(), n_, x.data());
  if (solve_flops_) *solve_flops_ += f;
  count(flops, Phase::backsolve, f);
}

std::vector<double> CholeskyFactor::solve(std::span<const double> rhs, FlopCounter* flops) const {
  std::vector<double> x(rhs.begin(), rhs.end());
  solve_in_place(x, flops);
  return x;
}

CholeskyFactor factor_dense(SymmetricSystem system, FlopCounter* flops, CholeskyVariant variant) {
  CholeskyFactor factor(std::move(system.packed), system.n, variant);
  count(flops, Phase::factor, factor.factor_flops());
  return factor;
}

std::vector<double> solve(const CholeskyFactor& factor, std::span<const double> rhs, FlopCounter* flops) {
  return factor.solve(rhs, flops);
}

// -------------------------------------------------------- static condensation

CondensedSystem::CondensedSystem(const HpSpace& space, const ElementBlocks& blocks, Execution exec,
                                 FlopCounter* flops)
    : space_(&space), exec_(exec), n_free_(space.free_count()) {
  const std::size_t nt = blocks.element_count();
  const std::size_t m = blocks.local_size();
  const ShapeTable& shapes = space.shapes();
  elements_.resize(nt);
  std::vector<std::vector<double>> schur(nt);
  std::vector<std::uint64_t> element_flops(nt, 0);

  detail::for_each_element(exec, nt, [&](std::size_t t) {
    Element& el = elements_[t];
    const auto dofs = space.element_dofs(t);
    for (int mode : shapes.skeleton_modes())
      if (dofs[mode] >= 0) {
        el.skeleton_local.push_back(mode);
        el.skeleton_global.push_back(dofs[mode]);
      }
    const auto& interior = shapes.interior_modes();
    el.n_interior = interior.size();
    el.interior_start = space.interior_dof_start(t);
    const std::size_t ni = el.n_interior;
    const std::size_t ns = el.skeleton_local.size();
    const double* k = blocks.block(t).data();
    std::uint64_t f = 0;

    el.lii.resize(kernels::packed_size(ni));
    for (std::size_t i = 0; i < ni; ++i)
      for (std::size_t j = 0; j <= i; ++j) el.lii[packed_index(i, j)] = k[interior[i] * m + interior[j]];
    f += kernels::cholesky_unblocked(el.lii.data(), ni);

    // Columns of K_IS, then X = K_II^{-1} K_IS column by column.
    std::vector<double> kis(ni * ns);
    for (std::size_t s = 0; s < ns; ++s)
      for (std::size_t i = 0; i < ni; ++i) kis[s * ni + i] = k[interior[i] * m + el.skeleton_local[s]];
    el.x = kis;
    for (std::size_t s = 0; s < ns; ++s) {
      f += kernels::solve_lower(el.lii.data(), ni, el.x.data() + s * ni);
      f += kernels::solve_upper(el.lii.data(), ni, el.x.data() + s * ni);
    }

    // Schur complement K_SS - K_SI X, full ns x ns.
    std::vector<double>& sc = schur[t];
    sc.resize(ns * ns);
    for (std::size_t a = 0; a < ns; ++a)
      for (std::size_t b = 0; b < ns; ++b) {
        const double kab = k[el.skeleton_local[a] * m + el.skeleton_local[b]];
        sc[a * ns + b] = kab - kernels::dot(kis.data() + a * ni, el.x.data() + b * ni, ni);
      }
    f += 2 * static_cast<std::uint64_t>(ns) * ns * ni;
    element_flops[t] = f;
  });

  std::vector<double> global(kernels::packed_size(space.skeleton_count()), 0.0);
  std::uint64_t adds = 0;
  for (std::size_t t = 0; t < nt; ++t) {
    const Element& el = elements_[t];
    const std::size_t ns = el.skeleton_global.size();
    for (std::size_t a = 0; a < ns; ++a)
      for (std::size_t b = 0; b < ns; ++b) {
        const int ga = el.skeleton_global[a];
        const int gb = el.skeleton_global[b];
        if (gb > ga) continue;
        global[packed_index(ga, gb)] += schur[t][a * ns + b];
        ++adds;
      }
    element_flops_ += element_flops[t];
  }
  element_flops_ += adds;
  schur.clear();

  skeleton_ = CholeskyFactor(std::move(global), space.skeleton_count(), CholeskyVariant::blocked);
  count(flops, Phase::factor, element_flops_ + skeleton_.factor_flops());
}

std::vector<double> CondensedSystem::solve(std::span<const double> rhs, FlopCounter* flops) const {
  if (rhs.size() != n_free_) throw std::invalid_argument("CondensedSystem::solve: dimension mismatch");
  const std::size_t nt = elements_.size();
  const std::size_t nskel = skeleton_.size();
  std::vector<double> u(rhs.begin(), rhs.end());
  std::vector<std::vector<double>> reduced(nt);
  std::uint64_t f = 0;

  // Interior solves w = K_II^{-1} f_I, stored in place of f_I, and the
  // skeleton corrections X^T f_I.
  detail::for_each_element(exec_, nt, [&](std::size_t t) {
    const Element& el = elements_[t];
    const std::size_t ni = el.n_interior;
    const std::size_t ns = el.skeleton_global.size();
    if (ni == 0) return;
    const double* fi = rhs.data() + el.interior_start;
    std::vector<double>& r = reduced[t];
    r.resize(ns);
    for (std::size_t s = 0; s < ns; ++s) r[s] = kernels::dot(el.x.data() + s * ni, fi, ni);
    double* w = u.data() + el.interior_start;
    kernels::solve_lower(el.lii.data(), ni, w);
    kernels::solve_upper(el.lii.data(), ni, w);
  });
  for (std::size_t t = 0; t < nt; ++t) {
    const Element& el = elements_[t];
    const std::size_t ni = el.n_interior;
    const std::size_t ns = el.skeleton_global.size();
    if (ni == 0) continue;
    for (std::size_t s = 0; s < ns; ++s) u[el.skeleton_global[s]] -= reduced[t][s];
    f += 2 * static_cast<std::uint64_t>(ni) * ni + 2 * static_cast<std::uint64_t>(ni) * ns + ns;
  }

  std::span<double> us(u.data(), nskel);
  skeleton_.solve_in_place(us, nullptr);
  f += 2 * static_cast<std::uint64_t>(nskel) * nskel;

  // u_I = w - X u_S.
  detail::for_each_element(exec_, nt, [&](std::size_t t) {
    const Element& el = elements_[t];
    const std::size_t ni = el.n_interior;
    double* ui = u.data() + el.interior_start;
    for (std::size_t s = 0; s < el.skeleton_global.size(); ++s) {
      const double v = u[el.skeleton_global[s]];
      const double* xs = el.x.data() + s * ni;
      for (std::size_t i = 0; i < ni; ++i) ui[i] -= xs[i] * v;
    }
  });
  for (const Element& el : elements_) f += 2 * static_cast<std::uint64_t>(el.n_interior) * el.skeleton_global.size();
  count(flops, Phase::backsolve, f);
  return u;
}

CondensedSystem factor_condensed(const HpSpace& space, const ElementBlocks& blocks, Execution exec,
                                 FlopCounter* flops) {
  return CondensedSystem(space, blocks, exec, flops);
}

std::vector<double> solve_condensed(const CondensedSystem& system, std::span<const double> rhs,
                                    FlopCounter* flops) {
  return system.solve(rhs, flops);
}

}  // namespace hpilg
