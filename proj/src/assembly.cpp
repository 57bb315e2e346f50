#include "hpilg/assembly.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "hpilg/dense_cholesky.hpp"
#include "kernels.hpp"

namespace hpilg {

using kernels::packed_index;

Tabulation tabulate(const ShapeTable& shapes, const TriangleRule& rule) {
  Tabulation tab;
  tab.rule = rule;
  tab.modes = shapes.size();
  const std::size_t m = tab.modes;
  tab.value.resize(rule.size() * m);
  tab.dx.resize(rule.size() * m);
  tab.dy.resize(rule.size() * m);
  for (std::size_t k = 0; k < rule.size(); ++k)
    shapes.eval(rule.points[k], {tab.value.data() + k * m, m}, {tab.dx.data() + k * m, m},
                {tab.dy.data() + k * m, m});
  return tab;
}

double SymmetricSystem::operator()(std::size_t i, std::size_t j) const {
  return i >= j ? packed[packed_index(i, j)] : packed[packed_index(j, i)];
}

// ---------------------------------------------------------------- surrogate

DataSurrogate DataSurrogate::exact(Polynomial2D f) {
  DataSurrogate s;
  s.exact_ = true;
  s.degree_ = std::max(0, f.degree());
  s.poly_ = std::move(f);
  return s;
}

DataSurrogate DataSurrogate::projected(const HpMesh& mesh, const std::function<double(Point2)>& f,
                                       int degree) {
  // The hierarchic table has no separate constant mode, so degree 0 is
  // raised to 1; the first (d+1)(d+2)/2 modes of the table span P_d.
  if (degree < 0) throw std::invalid_argument("DataSurrogate: negative degree");
  degree = std::max(1, degree);
  DataSurrogate s;
  s.exact_ = false;
  s.degree_ = degree;
  auto table = std::make_shared<ShapeTable>(degree);
  const std::size_t m = static_cast<std::size_t>((degree + 1) * (degree + 2) / 2);
  s.table_ = table;
  s.modes_ = m;
  const TriangleRule rule = triangle_rule(2 * degree + 2);
  const Tabulation tab = tabulate(*table, rule);
  const std::size_t mt = tab.modes;

  // Affine maps scale the mass matrix by |det| on both sides, so the
  // reference mass matrix serves every triangle.
  std::vector<double> mass(kernels::packed_size(m), 0.0);
  for (std::size_t k = 0; k < rule.size(); ++k)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j <= i; ++j)
        mass[packed_index(i, j)] += rule.weights[k] * tab.value[k * mt + i] * tab.value[k * mt + j];
  kernels::cholesky_unblocked(mass.data(), m);

  s.coefficients_.assign(mesh.triangle_count() * m, 0.0);
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const AffineMap map = mesh.affine_map(t);
    double* c = s.coefficients_.data() + t * m;
    for (std::size_t k = 0; k < rule.size(); ++k) {
      const double fk = rule.weights[k] * f(map.forward(rule.points[k]));
      for (std::size_t i = 0; i < m; ++i) c[i] += fk * tab.value[k * mt + i];
    }
    kernels::solve_lower(mass.data(), m, c);
    kernels::solve_upper(mass.data(), m, c);
  }
  return s;
}

void DataSurrogate::values(std::size_t t, const AffineMap& map, const TriangleRule& rule,
                           double* out) const {
  if (exact_) {
    for (std::size_t k = 0; k < rule.size(); ++k) out[k] = poly_(map.forward(rule.points[k]));
    return;
  }
  const double* c = coefficients_.data() + t * modes_;
  std::vector<double> v(table_->size()), dx(table_->size()), dy(table_->size());
  for (std::size_t k = 0; k < rule.size(); ++k) {
    table_->eval(rule.points[k], v, dx, dy);
    double s = 0.0;
    for (std::size_t i = 0; i < modes_; ++i) s += c[i] * v[i];
    out[k] = s;
  }
}

// ---------------------------------------------------------- element kernels

namespace detail {

ReferenceStiffness reference_stiffness(const ShapeTable& shapes) {
  const Tabulation tab = tabulate(shapes, triangle_rule(2 * shapes.degree()));
  const std::size_t m = tab.modes;
  ReferenceStiffness ref;
  ref.m = m;
  ref.sxx.assign(m * m, 0.0);
  ref.sxy.assign(m * m, 0.0);
  ref.syy.assign(m * m, 0.0);
  for (std::size_t k = 0; k < tab.rule.size(); ++k) {
    const double w = tab.rule.weights[k];
    const double* dx = tab.dx.data() + k * m;
    const double* dy = tab.dy.data() + k * m;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        ref.sxx[i * m + j] += w * dx[i] * dx[j];
        ref.sxy[i * m + j] += w * (dx[i] * dy[j] + dy[i] * dx[j]);
        ref.syy[i * m + j] += w * dy[i] * dy[j];
      }
  }
  return ref;
}

std::uint64_t element_stiffness(const HpSpace& space, const ReferenceStiffness& ref, std::size_t t,
                                double* out) {
  const AffineMap map = space.mesh().affine_map(t);
  const auto& bi = map.inverse_matrix();
  const double area = std::abs(map.det());
  // G = B^{-1} B^{-T}, so that grad phi_i . grad phi_j = grad^ phi_i^T G grad^ phi_j.
  const double g00 = area * (bi[0] * bi[0] + bi[1] * bi[1]);
  const double g01 = area * (bi[0] * bi[2] + bi[1] * bi[3]);
  const double g11 = area * (bi[2] * bi[2] + bi[3] * bi[3]);
  const std::size_t m = ref.m;
  const auto signs = space.element_signs(t);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t ij = i * m + j;
      out[ij] = signs[i] * signs[j] * (g00 * ref.sxx[ij] + g01 * ref.sxy[ij] + g11 * ref.syy[ij]);
    }
  return 6 * static_cast<std::uint64_t>(m) * m;
}

std::uint64_t element_load(const HpSpace& space, const Tabulation& tab, const DataSurrogate& f,
                           std::size_t t, double* work, double* out) {
  const AffineMap map = space.mesh().affine_map(t);
  const double area = std::abs(map.det());
  const std::size_t m = tab.modes;
  const std::size_t npts = tab.rule.size();
  f.values(t, map, tab.rule, work);
  for (std::size_t i = 0; i < m; ++i) out[i] = 0.0;
  for (std::size_t k = 0; k < npts; ++k) {
    const double fk = area * tab.rule.weights[k] * work[k];
    const double* phi = tab.value.data() + k * m;
    for (std::size_t i = 0; i < m; ++i) out[i] += fk * phi[i];
  }
  const auto signs = space.element_signs(t);
  for (std::size_t i = 0; i < m; ++i) out[i] *= signs[i];
  return npts * (2 * m + 2) + m;
}

std::uint64_t element_nonlinear(const HpSpace& space, const Tabulation& tab, const double* u,
                                double lambda, int q, std::size_t t, double* work, double* out) {
  const double area = std::abs(space.mesh().affine_map(t).det());
  const std::size_t m = tab.modes;
  const std::size_t npts = tab.rule.size();
  const auto dofs = space.element_dofs(t);
  const auto signs = space.element_signs(t);
  double* c = work;
  double* val = work + m;
  for (std::size_t i = 0; i < m; ++i) c[i] = dofs[i] >= 0 ? signs[i] * u[dofs[i]] : 0.0;
  for (std::size_t k = 0; k < npts; ++k) {
    const double uk = kernels::dot(c, tab.value.data() + k * m, m);
    double power = uk;
    const double sq = uk * uk;
    for (int r = 0; r < q; ++r) power *= sq;
    val[k] = lambda * area * tab.rule.weights[k] * power;
  }
  for (std::size_t i = 0; i < m; ++i) out[i] = 0.0;
  for (std::size_t k = 0; k < npts; ++k) {
    const double vk = val[k];
    const double* phi = tab.value.data() + k * m;
    for (std::size_t i = 0; i < m; ++i) out[i] += vk * phi[i];
  }
  for (std::size_t i = 0; i < m; ++i) out[i] *= signs[i];
  return npts * (4 * m + 2 * static_cast<std::uint64_t>(q) + 4) + m;
}

void element_apply(const HpSpace& space, const ElementBlocks& blocks, const double* x, std::size_t t,
                   double* work, double* out) {
  const std::size_t m = blocks.local_size();
  const auto dofs = space.element_dofs(t);
  for (std::size_t i = 0; i < m; ++i) work[i] = dofs[i] >= 0 ? x[dofs[i]] : 0.0;
  const double* k = blocks.block(t).data();
  for (std::size_t i = 0; i < m; ++i) out[i] = kernels::dot(k + i * m, work, m);
}

}  // namespace detail

// ---------------------------------------------------------------- public API

ElementBlocks assemble_element_blocks(const HpSpace& space, Execution exec, FlopCounter* flops) {
  const detail::ReferenceStiffness ref = detail::reference_stiffness(space.shapes());
  ElementBlocks blocks(space.mesh().triangle_count(), space.local_size());
  const std::uint64_t f = exec == Execution::serial ? detail::serial::stiffness(space, ref, blocks)
                                                    : detail::parallel::stiffness(space, ref, blocks);
  count(flops, Phase::setup, f);
  return blocks;
}

SymmetricSystem assemble_global(const HpSpace& space, std::shared_ptr<const ElementBlocks> blocks,
                                FlopCounter* flops) {
  SymmetricSystem sys;
  sys.n = space.free_count();
  sys.packed.assign(kernels::packed_size(sys.n), 0.0);
  const std::size_t m = blocks->local_size();
  std::uint64_t adds = 0;
  for (std::size_t t = 0; t < blocks->element_count(); ++t) {
    const auto dofs = space.element_dofs(t);
    const double* k = blocks->block(t).data();
    for (std::size_t i = 0; i < m; ++i) {
      const int gi = dofs[i];
      if (gi < 0) continue;
      for (std::size_t j = 0; j < m; ++j) {
        const int gj = dofs[j];
        if (gj < 0 || gj > gi) continue;
        sys.packed[packed_index(gi, gj)] += k[i * m + j];
        ++adds;
      }
    }
  }
  count(flops, Phase::setup, adds);
  sys.blocks = std::move(blocks);
  return sys;
}

SymmetricSystem assemble_stiffness(const HpSpace& space, Execution exec, FlopCounter* flops) {
  auto blocks = std::make_shared<const ElementBlocks>(assemble_element_blocks(space, exec, flops));
  return assemble_global(space, std::move(blocks), flops);
}

std::vector<double> assemble_load(const HpSpace& space, const DataSurrogate& f, Execution exec,
                                  FlopCounter* flops) {
  const Tabulation tab = tabulate(space.shapes(), triangle_rule(f.degree() + space.degree()));
  std::vector<double> out(space.free_count(), 0.0);
  const std::uint64_t n = exec == Execution::serial ? detail::serial::load(space, tab, f, out.data())
                                                    : detail::parallel::load(space, tab, f, out.data());
  count(flops, Phase::setup, n);
  return out;
}

NonlinearForm::NonlinearForm(const HpSpace& space, int q)
    : space_(&space), q_(q), rule_degree_(2 * space.degree() * (q + 1)) {
  if (q < 0) throw std::invalid_argument("NonlinearForm: q must be non-negative");
  tables_ = tabulate(space.shapes(), triangle_rule(rule_degree_));
}

std::vector<double> NonlinearForm::evaluate(std::span<const double> u, double lambda, Execution exec,
                                            FlopCounter* flops) const {
  if (u.size() != space_->free_count())
    throw std::invalid_argument("NonlinearForm: coefficient vector has wrong size");
  std::vector<double> out(u.size(), 0.0);
  const std::uint64_t n =
      exec == Execution::serial
          ? detail::serial::nonlinear(*space_, tables_, u.data(), lambda, q_, out.data())
          : detail::parallel::nonlinear(*space_, tables_, u.data(), lambda, q_, out.data());
  count(flops, Phase::nonlinear_eval, n);
  return out;
}

std::vector<double> assemble_nonlinear(const HpSpace& space, std::span<const double> u, double lambda,
                                       int q, Execution exec, FlopCounter* flops) {
  return NonlinearForm(space, q).evaluate(u, lambda, exec, flops);
}

std::vector<double> apply_stiffness(const HpSpace& space, const ElementBlocks& blocks,
                                    std::span<const double> x, Execution exec) {
  if (x.size() != space.free_count())
    throw std::invalid_argument("apply_stiffness: vector has wrong size");
  std::vector<double> y(x.size(), 0.0);
  if (exec == Execution::serial)
    detail::serial::apply(space, blocks, x.data(), y.data());
  else
    detail::parallel::apply(space, blocks, x.data(), y.data());
  return y;
}

double energy_norm(const HpSpace& space, const ElementBlocks& blocks, std::span<const double> x,
                   Execution exec) {
  const std::vector<double> ax = apply_stiffness(space, blocks, x, exec);
  return std::sqrt(std::max(0.0, kernels::dot(ax.data(), x.data(), x.size())));
}

void write_matrix(std::ostream& os, const SymmetricSystem& system) {
  const auto old = os.precision(17);
  os << system.n << '\n';
  for (std::size_t i = 0; i < system.n; ++i) {
    for (std::size_t j = 0; j < system.n; ++j) os << (j ? " " : "") << system(i, j);
    os << '\n';
  }
  os.precision(old);
}

void write_vector(std::ostream& os, std::span<const double> v) {
  const auto old = os.precision(17);
  os << v.size() << '\n';
  for (double x : v) os << x << '\n';
  os.precision(old);
}

}  // namespace hpilg
