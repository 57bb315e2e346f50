#include "hpilg/dense_cholesky.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <vector>

#include "hpilg/error.hpp"

namespace hpilg::kernels {

namespace {

using v8 = double __attribute__((vector_size(64)));

inline v8 load8(const double* p) {
  v8 v;
  std::memcpy(&v, p, sizeof v);
  return v;
}
inline void store8(double* p, v8 v) { std::memcpy(p, &v, sizeof v); }

constexpr std::size_t MR = 8;    // rows per register tile
constexpr std::size_t NR = 16;   // columns per register tile
constexpr std::size_t KC = 512;  // columns per cache chunk, multiple of NR

// c[r * NR + s] = sum_j a[j * MR + r] * b[j * NR + s]
inline void micro_kernel(const double* a, const double* b, std::size_t w, double* c) {
  v8 acc[MR][2] = {};
  for (std::size_t j = 0; j < w; ++j) {
    const v8 b0 = load8(b + j * NR);
    const v8 b1 = load8(b + j * NR + 8);
    const double* aj = a + j * MR;
    for (std::size_t r = 0; r < MR; ++r) {
      acc[r][0] += aj[r] * b0;
      acc[r][1] += aj[r] * b1;
    }
  }
  for (std::size_t r = 0; r < MR; ++r) {
    store8(c + r * NR, acc[r][0]);
    store8(c + r * NR + 8, acc[r][1]);
  }
}

double max_diagonal(const double* a, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, a[packed_index(i, i)]);
  return m;
}

inline double checked_sqrt(double d, std::size_t pivot, double threshold) {
  if (!(d > threshold)) throw NotPositiveDefinite(pivot, d);
  return std::sqrt(d);
}

}  // namespace

double dot(const double* a, const double* b, std::size_t len) {
  double acc[8] = {};
  std::size_t k = 0;
  for (; k + 8 <= len; k += 8)
    for (std::size_t l = 0; l < 8; ++l) acc[l] += a[k + l] * b[k + l];
  double s = 0.0;
  for (; k < len; ++k) s += a[k] * b[k];
  return s + ((acc[0] + acc[4]) + (acc[1] + acc[5])) + ((acc[2] + acc[6]) + (acc[3] + acc[7]));
}

std::uint64_t cholesky_flops(std::size_t n) {
  const std::uint64_t m = n;
  return (m * m * m - m) / 3 + m * (m - 1) / 2 + m;
}

std::uint64_t cholesky_unblocked(double* a, std::size_t n) {
  const double threshold = pivot_tolerance * max_diagonal(a, n);
  std::uint64_t flops = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double* row = a + packed_index(i, 0);
    for (std::size_t j = 0; j < i; ++j) {
      const double* rj = a + packed_index(j, 0);
      double s = row[j];
      for (std::size_t k = 0; k < j; ++k) s -= row[k] * rj[k];
      row[j] = s / rj[j];
      flops += 2 * j + 1;
    }
    double d = row[i];
    for (std::size_t k = 0; k < i; ++k) d -= row[k] * row[k];
    row[i] = checked_sqrt(d, i, threshold);
    flops += 2 * i + 1;
  }
  return flops;
}

std::uint64_t cholesky_blocked(double* a, std::size_t n, std::size_t block) {
  if (block == 0) block = 128;
  const double threshold = pivot_tolerance * max_diagonal(a, n);
  std::uint64_t flops = 0;
  std::vector<double> apack, bpack;
  double tile[MR * NR];

  for (std::size_t jb = 0; jb < n; jb += block) {
    const std::size_t w = std::min(block, n - jb);
    const std::size_t je = jb + w;

    // Diagonal block and panel, row by row over the columns [jb, je).
    for (std::size_t i = jb; i < n; ++i) {
      double* row = a + packed_index(i, 0);
      const std::size_t cend = std::min(i, je);
      for (std::size_t c = jb; c < cend; ++c) {
        const double* rc = a + packed_index(c, 0);
        row[c] = (row[c] - dot(row + jb, rc + jb, c - jb)) / rc[c];
      }
      const std::uint64_t len = cend - jb;
      flops += len * len;
      if (i < je) {
        row[i] = checked_sqrt(row[i] - dot(row + jb, row + jb, len), i, threshold);
        flops += 2 * len + 1;
      }
    }

    const std::size_t m = n - je;
    if (m == 0) break;

    // Pack the panel twice: MR-row blocks stored column-interleaved for
    // broadcasting, NR-row blocks stored the same way for vector loads.
    const std::size_t na = (m + MR - 1) / MR;
    const std::size_t nbk = (m + NR - 1) / NR;
    apack.assign(na * MR * w, 0.0);
    bpack.assign(nbk * NR * w, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      const double* row = a + packed_index(je + i, jb);
      double* pa = apack.data() + (i / MR) * MR * w + i % MR;
      double* pb = bpack.data() + (i / NR) * NR * w + i % NR;
      for (std::size_t j = 0; j < w; ++j) {
        pa[j * MR] = row[j];
        pb[j * NR] = row[j];
      }
    }

    // Trailing update A[i][k] -= panel_i . panel_k for je <= k <= i.
    for (std::size_t kc0 = 0; kc0 < m; kc0 += KC) {
      const std::size_t kc1 = std::min(kc0 + KC, m);
      for (std::size_t ib = kc0 / MR; ib < na; ++ib) {
        const std::size_t i0 = ib * MR;
        for (std::size_t k0 = kc0; k0 < kc1 && k0 < i0 + MR; k0 += NR) {
          micro_kernel(apack.data() + ib * MR * w, bpack.data() + (k0 / NR) * NR * w, w, tile);
          for (std::size_t r = 0; r < MR; ++r) {
            const std::size_t i = i0 + r;
            if (i >= m) break;
            if (i < k0) continue;
            double* dst = a + packed_index(je + i, je + k0);
            const double* src = tile + r * NR;
            const std::size_t len = std::min(NR, i + 1 - k0);
            if (len == NR) {
              store8(dst, load8(dst) - load8(src));
              store8(dst + 8, load8(dst + 8) - load8(src + 8));
            } else {
              for (std::size_t s = 0; s < len; ++s) dst[s] -= src[s];
            }
          }
        }
      }
    }
    flops += static_cast<std::uint64_t>(m) * (m + 1) / 2 * 2 * w;
  }
  return flops;
}

std::uint64_t solve_lower(const double* l, std::size_t n, double* x) {
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = l + packed_index(i, 0);
    x[i] = (x[i] - dot(row, x, i)) / row[i];
  }
  return static_cast<std::uint64_t>(n) * n;
}

std::uint64_t solve_upper(const double* l, std::size_t n, double* x) {
  for (std::size_t i = n; i-- > 0;) {
    const double* row = l + packed_index(i, 0);
    const double xi = x[i] / row[i];
    x[i] = xi;
    for (std::size_t k = 0; k < i; ++k) x[k] -= row[k] * xi;
  }
  return static_cast<std::uint64_t>(n) * n;
}

}  // namespace hpilg::kernels
