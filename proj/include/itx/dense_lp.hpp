#pragma once

#include <vector>

// Small dense two-phase primal simplex with Bland's rule, written for the
// tiny linear programs the test oracles need. Completely separate from the
// network simplex path.
namespace itx {

struct DenseLp {
  // minimize objective . x
  //   subject to  eq_lhs  x == eq_rhs   (row-major, eq_rhs >= 0)
  //               ub_lhs  x <= ub_rhs   (row-major, ub_rhs >= 0)
  //               x >= 0
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<double> eq_lhs;
  std::vector<double> eq_rhs;
  std::vector<double> ub_lhs;
  std::vector<double> ub_rhs;
};

struct DenseLpResult {
  double objective = 0.0;
  std::vector<double> x;
};

// Throws InfeasibleInstance / SolverNonConvergence on pathological input.
DenseLpResult solve_dense_lp(const DenseLp& lp);

}  // namespace itx
