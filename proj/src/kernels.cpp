#include "itx/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace itx::kernels {

namespace {

// Work below this many inner operations is not worth a parallel region.
constexpr std::int64_t kParallelGrain = 1 << 15;

inline void matmul_row_range(const double* a, const double* b, double* c, int i0, int i1,
                             int k, int n) {
  for (int i = i0; i < i1; ++i) {
    double* ci = c + static_cast<std::int64_t>(i) * n;
    std::memset(ci, 0, sizeof(double) * n);
    const double* ai = a + static_cast<std::int64_t>(i) * k;
    for (int p = 0; p < k; ++p) {
      const double aip = ai[p];
      const double* bp = b + static_cast<std::int64_t>(p) * n;
      for (int j = 0; j < n; ++j) ci[j] += aip * bp[j];
    }
  }
}

inline void matmul_tn_row_range(const double* a, const double* b, double* c, int r0, int r1,
                                int m, int k, int n) {
  // c row r = sum_i a[i][r] * b[i][:]
  for (int r = r0; r < r1; ++r) {
    double* cr = c + static_cast<std::int64_t>(r) * n;
    std::memset(cr, 0, sizeof(double) * n);
    for (int i = 0; i < m; ++i) {
      const double air = a[static_cast<std::int64_t>(i) * k + r];
      const double* bi = b + static_cast<std::int64_t>(i) * n;
      for (int j = 0; j < n; ++j) cr[j] += air * bi[j];
    }
  }
}

inline void matmul_nt_row_range(const double* a, const double* b, double* c, int i0, int i1,
                                int k, int n) {
  for (int i = i0; i < i1; ++i) {
    const double* ai = a + static_cast<std::int64_t>(i) * k;
    double* ci = c + static_cast<std::int64_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      const double* bj = b + static_cast<std::int64_t>(j) * k;
      double s = 0.0;
      for (int p = 0; p < k; ++p) s += ai[p] * bj[p];
      ci[j] = s;
    }
  }
}

inline double pair_cost(PairwiseKind kind, const double* x, const double* y, int d) {
  double s = 0.0;
  if (kind == PairwiseKind::SqEuclideanNormalized) {
    for (int t = 0; t < d; ++t) {
      const double diff = x[t] - y[t];
      s += diff * diff;
    }
  } else {
    for (int t = 0; t < d; ++t) s += std::fabs(x[t] - y[t]);
  }
  return s / d;
}

inline void pairwise_row_range(PairwiseKind kind, const double* src, const double* tgt,
                               int m, int d, double* out, int i0, int i1) {
  for (int i = i0; i < i1; ++i) {
    const double* x = src + static_cast<std::int64_t>(i) * d;
    double* row = out + static_cast<std::int64_t>(i) * m;
    for (int j = 0; j < m; ++j) row[j] = pair_cost(kind, x, tgt + static_cast<std::int64_t>(j) * d, d);
  }
}

inline void nearest_row_range(PairwiseKind kind, const double* src, const double* tgt,
                              int m, int d, double* min_cost, int* argmin, int i0, int i1) {
  for (int i = i0; i < i1; ++i) {
    const double* x = src + static_cast<std::int64_t>(i) * d;
    double best = pair_cost(kind, x, tgt, d);
    int best_j = 0;
    for (int j = 1; j < m; ++j) {
      const double cj = pair_cost(kind, x, tgt + static_cast<std::int64_t>(j) * d, d);
      if (cj < best) {
        best = cj;
        best_j = j;
      }
    }
    min_cost[i] = best;
    argmin[i] = best_j;
  }
}

}  // namespace

int max_threads() {
#if defined(_OPENMP)
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("ITX_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1 && cap < n) n = cap;
  }
  return n;
#else
  return 1;
#endif
}

void matmul_nn_serial(const double* a, const double* b, double* c, int m, int k, int n) {
  matmul_row_range(a, b, c, 0, m, k, n);
}

void matmul_nn(const double* a, const double* b, double* c, int m, int k, int n) {
  const std::int64_t work = static_cast<std::int64_t>(m) * k * n;
  const int nt = max_threads();
  if (nt <= 1 || work < kParallelGrain) {
    matmul_nn_serial(a, b, c, m, k, n);
    return;
  }
#pragma omp parallel for schedule(static) num_threads(nt)
  for (int i = 0; i < m; ++i) matmul_row_range(a, b, c, i, i + 1, k, n);
}

void matmul_tn_serial(const double* a, const double* b, double* c, int m, int k, int n) {
  matmul_tn_row_range(a, b, c, 0, k, m, k, n);
}

void matmul_tn(const double* a, const double* b, double* c, int m, int k, int n) {
  const std::int64_t work = static_cast<std::int64_t>(m) * k * n;
  const int nt = max_threads();
  if (nt <= 1 || work < kParallelGrain) {
    matmul_tn_serial(a, b, c, m, k, n);
    return;
  }
#pragma omp parallel for schedule(static) num_threads(nt)
  for (int r = 0; r < k; ++r) matmul_tn_row_range(a, b, c, r, r + 1, m, k, n);
}

void matmul_nt_serial(const double* a, const double* b, double* c, int m, int k, int n) {
  matmul_nt_row_range(a, b, c, 0, m, k, n);
}

void matmul_nt(const double* a, const double* b, double* c, int m, int k, int n) {
  const std::int64_t work = static_cast<std::int64_t>(m) * k * n;
  const int nt = max_threads();
  if (nt <= 1 || work < kParallelGrain) {
    matmul_nt_serial(a, b, c, m, k, n);
    return;
  }
#pragma omp parallel for schedule(static) num_threads(nt)
  for (int i = 0; i < m; ++i) matmul_nt_row_range(a, b, c, i, i + 1, k, n);
}

void pairwise_cost_serial(PairwiseKind kind, const double* src, int n, const double* tgt,
                          int m, int d, double* out) {
  pairwise_row_range(kind, src, tgt, m, d, out, 0, n);
}

void pairwise_cost(PairwiseKind kind, const double* src, int n, const double* tgt, int m,
                   int d, double* out) {
  const std::int64_t work = static_cast<std::int64_t>(n) * m * d;
  const int nt = max_threads();
  if (nt <= 1 || work < kParallelGrain) {
    pairwise_cost_serial(kind, src, n, tgt, m, d, out);
    return;
  }
#pragma omp parallel for schedule(static) num_threads(nt)
  for (int i = 0; i < n; ++i) pairwise_row_range(kind, src, tgt, m, d, out, i, i + 1);
}

void row_nearest_serial(PairwiseKind kind, const double* src, int n, const double* tgt,
                        int m, int d, double* min_cost, int* argmin) {
  nearest_row_range(kind, src, tgt, m, d, min_cost, argmin, 0, n);
}

void row_nearest(PairwiseKind kind, const double* src, int n, const double* tgt, int m,
                 int d, double* min_cost, int* argmin) {
  const std::int64_t work = static_cast<std::int64_t>(n) * m * d;
  const int nt = max_threads();
  if (nt <= 1 || work < kParallelGrain) {
    row_nearest_serial(kind, src, n, tgt, m, d, min_cost, argmin);
    return;
  }
#pragma omp parallel for schedule(static) num_threads(nt)
  for (int i = 0; i < n; ++i) nearest_row_range(kind, src, tgt, m, d, min_cost, argmin, i, i + 1);
}

}  // namespace itx::kernels
