#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "hpilg/assembly.hpp"
#include "hpilg/flops.hpp"

namespace hpilg {

enum class SolverPath { dense, condensed };
enum class CholeskyVariant { unblocked, blocked };

/// Lower Cholesky factor of an SPD matrix in row-packed storage. Immutable
/// after construction; concurrent solves are safe.
class CholeskyFactor {
 public:
  CholeskyFactor() = default;
  /// Factors `packed` (order n) in place. Throws NotPositiveDefinite.
  CholeskyFactor(std::vector<double> packed, std::size_t n,
                 CholeskyVariant variant = CholeskyVariant::blocked);

  std::size_t size() const { return n_; }
  const std::vector<double>& packed() const { return l_; }
  double operator()(std::size_t i, std::size_t j) const;
  std::uint64_t factor_flops() const { return factor_flops_; }
  /// Factorization flops plus all backsolve flops so far.
  std::uint64_t flops_spent() const { return factor_flops_ + (solve_flops_ ? solve_flops_->load() : 0); }

  std::vector<double> solve(std::span<const double> rhs, FlopCounter* flops = nullptr) const;
  void solve_in_place(std::span<double> x, FlopCounter* flops = nullptr) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> l_;
  std::uint64_t factor_flops_ = 0;
  std::unique_ptr<std::atomic<std::uint64_t>> solve_flops_ = std::make_unique<std::atomic<std::uint64_t>>(0);
};

CholeskyFactor factor_dense(SymmetricSystem system, FlopCounter* flops = nullptr,
                            CholeskyVariant variant = CholeskyVariant::blocked);
std::vector<double> solve(const CholeskyFactor& factor, std::span<const double> rhs,
                          FlopCounter* flops = nullptr);

/// Static condensation: per element, the interior block is factored and
/// its Schur complement is summed onto the skeleton (vertex and edge) DOFs,
/// whose global matrix is factored densely. Interior unknowns are recovered
/// element by element after the skeleton solve.
class CondensedSystem {
 public:
  CondensedSystem(const HpSpace& space, const ElementBlocks& blocks,
                  Execution exec = Execution::parallel, FlopCounter* flops = nullptr);

  std::size_t size() const { return n_free_; }
  std::size_t skeleton_size() const { return skeleton_.size(); }
  const CholeskyFactor& skeleton_factor() const { return skeleton_; }
  /// Flops of the element stage and of the global skeleton factorization.
  std::uint64_t element_flops() const { return element_flops_; }
  std::uint64_t global_flops() const { return skeleton_.factor_flops(); }

  std::vector<double> solve(std::span<const double> rhs, FlopCounter* flops = nullptr) const;

 private:
  struct Element {
    std::vector<int> skeleton_local;   // local modes of free skeleton DOFs
    std::vector<int> skeleton_global;
    int interior_start = 0;
    std::size_t n_interior = 0;
    std::vector<double> lii;  // packed factor of the interior block
    std::vector<double> x;    // K_II^{-1} K_IS, column-major n_interior x n_skeleton
  };

  const HpSpace* space_;
  Execution exec_;
  std::size_t n_free_ = 0;
  std::vector<Element> elements_;
  CholeskyFactor skeleton_;
  std::uint64_t element_flops_ = 0;
};

CondensedSystem factor_condensed(const HpSpace& space, const ElementBlocks& blocks,
                                 Execution exec = Execution::parallel, FlopCounter* flops = nullptr);
std::vector<double> solve_condensed(const CondensedSystem& system, std::span<const double> rhs,
                                    FlopCounter* flops = nullptr);

}  // namespace hpilg
