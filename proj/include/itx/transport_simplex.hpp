#pragma once

#include <vector>

// Exact double-precision network simplex for the balanced transportation
// problem on the dense bipartite graph: minimize sum_ij c_ij f_ij subject
// to row sums = supply, column sums = demand, f >= 0. Deterministic:
// block pricing scans arcs in index order, leaving-arc ties break on the
// lowest arc id, and a Bland-style lowest-index rule takes over when a
// long run of degenerate pivots indicates stalling.
namespace itx {

struct TransportResult {
  std::vector<double> flow;   // ns x nt row-major
  std::vector<double> alpha;  // source potentials
  std::vector<double> beta;   // target potentials, alpha_i + beta_j <= c_ij + tol
  double cost = 0.0;
  long pivots = 0;
};

// supply and demand must be non-negative and have equal totals (within
// 1e-6 relative). cost is row-major ns x nt. tol is the reduced-cost
// optimality threshold.
TransportResult solve_transport(const std::vector<double>& supply,
                                const std::vector<double>& demand, const double* cost,
                                double tol = 1e-9);

}  // namespace itx
