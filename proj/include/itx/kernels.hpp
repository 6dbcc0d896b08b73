#pragma once

#include <cstdint>

// Dense numeric kernels used by the cost-matrix, nearest-neighbor and
// autodiff layers. Each kernel comes in an OpenMP-parallel flavor and a
// plain serial reference flavor. The parallel versions split work over
// independent output rows only, so both flavors produce bit-identical
// results; tests and the bench target compare them.
namespace itx::kernels {

// C[m x n] = A[m x k] * B[k x n], row-major, C overwritten.
void matmul_nn(const double* a, const double* b, double* c, int m, int k, int n);
void matmul_nn_serial(const double* a, const double* b, double* c, int m, int k, int n);

// C[k x n] = A^T * B for A[m x k], B[m x n].
void matmul_tn(const double* a, const double* b, double* c, int m, int k, int n);
void matmul_tn_serial(const double* a, const double* b, double* c, int m, int k, int n);

// C[m x n] = A * B^T for A[m x k], B[n x k].
void matmul_nt(const double* a, const double* b, double* c, int m, int k, int n);
void matmul_nt_serial(const double* a, const double* b, double* c, int m, int k, int n);

enum class PairwiseKind { SqEuclideanNormalized, L1Normalized };

// out[i*m + j] = cost(src row i, tgt row j); src is n x d, tgt is m x d.
void pairwise_cost(PairwiseKind kind, const double* src, int n, const double* tgt, int m,
                   int d, double* out);
void pairwise_cost_serial(PairwiseKind kind, const double* src, int n, const double* tgt,
                          int m, int d, double* out);

// Per-source-row nearest target under the given cost: min value and the
// lowest attaining index. src is n x d, tgt is m x d (m >= 1).
void row_nearest(PairwiseKind kind, const double* src, int n, const double* tgt, int m,
                 int d, double* min_cost, int* argmin);
void row_nearest_serial(PairwiseKind kind, const double* src, int n, const double* tgt,
                        int m, int d, double* min_cost, int* argmin);

// Number of threads the parallel kernels may use (defaults to OpenMP's
// choice, capped by the ITX_THREADS environment variable if set).
int max_threads();

}  // namespace itx::kernels
