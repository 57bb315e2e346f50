#pragma once

#include <cstddef>
#include <cstdint>

namespace hpilg::kernels {

// Symmetric matrices are stored as the row-packed lower triangle: entry
// (i, j), j <= i, lives at i (i + 1) / 2 + j.
inline std::size_t packed_index(std::size_t i, std::size_t j) { return i * (i + 1) / 2 + j; }
inline std::size_t packed_size(std::size_t n) { return n * (n + 1) / 2; }

/// Flops of a Cholesky factorization of order n under the 2-flops-per-
/// multiply-add model, counting one flop per division and square root:
/// (n^3 - n) / 3 + n (n - 1) / 2 + n.
std::uint64_t cholesky_flops(std::size_t n);

/// Relative pivot tolerance: a pivot <= tol * max diagonal is rejected.
inline constexpr double pivot_tolerance = 1e-14;

/// In-place factorization A = L L^T on packed storage, row by row.
/// Throws NotPositiveDefinite. Returns the flop count.
std::uint64_t cholesky_unblocked(double* a, std::size_t n);

/// Same result as `cholesky_unblocked` up to rounding, right-looking with
/// panels of `block` columns and a packed register-tiled trailing update.
std::uint64_t cholesky_blocked(double* a, std::size_t n, std::size_t block = 128);

/// Solves L y = b in place. Returns n^2 flops.
std::uint64_t solve_lower(const double* l, std::size_t n, double* x);
/// Solves L^T x = y in place. Returns n^2 flops.
std::uint64_t solve_upper(const double* l, std::size_t n, double* x);

/// Dot product with eight partial sums.
double dot(const double* a, const double* b, std::size_t len);

}  // namespace hpilg::kernels
