#include "itx/dense_lp.hpp"

#include <cmath>
#include <limits>

#include "itx/errors.hpp"

namespace itx {

namespace {

constexpr double kPivotTol = 1e-10;
constexpr long kMaxIters = 200000;

// Tableau rows: one per constraint, columns: structural vars, slacks,
// artificials, rhs. basis[r] = column basic in row r.
struct Tableau {
  int rows = 0;
  int cols = 0;  // including rhs
  std::vector<double> t;
  std::vector<int> basis;

  double& at(int r, int c) { return t[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return t[static_cast<std::size_t>(r) * cols + c]; }

  void pivot(int pr, int pc) {
    const double piv = at(pr, pc);
    for (int c = 0; c < cols; ++c) at(pr, c) /= piv;
    for (int r = 0; r < rows; ++r) {
      if (r == pr) continue;
      const double factor = at(r, pc);
      if (factor == 0.0) continue;
      for (int c = 0; c < cols; ++c) at(r, c) -= factor * at(pr, c);
    }
    basis[pr] = pc;
  }
};

// Bland's rule on the reduced costs in `z`: entering = lowest-index column
// with z_c < -tol among allowed columns, leaving = min-ratio row with the
// lowest basic column index on ties. Returns false when optimal.
bool simplex_step(Tableau& tab, std::vector<double>& z, int allowed_cols) {
  int pc = -1;
  for (int c = 0; c < allowed_cols; ++c) {
    if (z[c] < -kPivotTol) {
      pc = c;
      break;
    }
  }
  if (pc < 0) return false;

  int pr = -1;
  double best_ratio = std::numeric_limits<double>::infinity();
  const int rhs = tab.cols - 1;
  for (int r = 0; r < tab.rows; ++r) {
    const double a = tab.at(r, pc);
    if (a <= kPivotTol) continue;
    const double ratio = tab.at(r, rhs) / a;
    if (ratio < best_ratio - 1e-15 ||
        (std::fabs(ratio - best_ratio) <= 1e-15 && (pr < 0 || tab.basis[r] < tab.basis[pr]))) {
      best_ratio = ratio;
      pr = r;
    }
  }
  if (pr < 0) throw SolverNonConvergence("dense LP is unbounded");

  const double zc = z[pc];
  tab.pivot(pr, pc);
  for (int c = 0; c < tab.cols; ++c) z[c] -= zc * tab.at(pr, c);
  return true;
}

void run_simplex(Tableau& tab, std::vector<double>& z, int allowed_cols) {
  long it = 0;
  while (simplex_step(tab, z, allowed_cols))
    if (++it > kMaxIters) throw SolverNonConvergence("dense LP iteration limit");
}

}  // namespace

DenseLpResult solve_dense_lp(const DenseLp& lp) {
  const int n = lp.num_vars;
  const int n_eq = static_cast<int>(lp.eq_rhs.size());
  const int n_ub = static_cast<int>(lp.ub_rhs.size());
  const int rows = n_eq + n_ub;
  const int n_slack = n_ub;
  const int n_art = n_eq;
  const int cols = n + n_slack + n_art + 1;
  const int rhs = cols - 1;

  for (double b : lp.eq_rhs)
    if (b < 0.0) throw DataError("solve_dense_lp expects non-negative rhs");
  for (double b : lp.ub_rhs)
    if (b < 0.0) throw DataError("solve_dense_lp expects non-negative rhs");

  Tableau tab;
  tab.rows = rows;
  tab.cols = cols;
  tab.t.assign(static_cast<std::size_t>(rows) * cols, 0.0);
  tab.basis.assign(rows, -1);

  for (int r = 0; r < n_eq; ++r) {
    for (int c = 0; c < n; ++c) tab.at(r, c) = lp.eq_lhs[static_cast<std::size_t>(r) * n + c];
    tab.at(r, n + n_slack + r) = 1.0;  // artificial
    tab.at(r, rhs) = lp.eq_rhs[r];
    tab.basis[r] = n + n_slack + r;
  }
  for (int r = 0; r < n_ub; ++r) {
    const int row = n_eq + r;
    for (int c = 0; c < n; ++c)
      tab.at(row, c) = lp.ub_lhs[static_cast<std::size_t>(r) * n + c];
    tab.at(row, n + r) = 1.0;  // slack
    tab.at(row, rhs) = lp.ub_rhs[r];
    tab.basis[row] = n + r;
  }

  // Phase 1: minimize the artificial sum. Reduced costs of the phase-1
  // objective relative to the starting basis.
  std::vector<double> z(cols, 0.0);
  for (int r = 0; r < n_eq; ++r)
    for (int c = 0; c < cols; ++c) z[c] -= tab.at(r, c);
  for (int r = 0; r < n_eq; ++r) z[n + n_slack + r] = 0.0;
  run_simplex(tab, z, n + n_slack);  // artificials may leave, never re-enter

  double art_sum = 0.0;
  for (int r = 0; r < rows; ++r)
    if (tab.basis[r] >= n + n_slack) art_sum += tab.at(r, rhs);
  if (art_sum > 1e-7) throw InfeasibleInstance("dense LP phase 1 failed");

  // Pivot any residual (zero-valued) artificials out of the basis.
  for (int r = 0; r < rows; ++r) {
    if (tab.basis[r] < n + n_slack) continue;
    int pc = -1;
    for (int c = 0; c < n + n_slack; ++c)
      if (std::fabs(tab.at(r, c)) > kPivotTol) {
        pc = c;
        break;
      }
    if (pc >= 0) tab.pivot(r, pc);
    // A fully-zero row is redundant; its artificial stays basic at zero.
  }

  // Phase 2 reduced costs for the real objective.
  std::vector<double> z2(cols, 0.0);
  for (int c = 0; c < n; ++c) z2[c] = lp.objective[c];
  for (int r = 0; r < rows; ++r) {
    const int b = tab.basis[r];
    const double cb = (b < n) ? lp.objective[b] : 0.0;
    if (cb == 0.0) continue;
    for (int c = 0; c < cols; ++c) z2[c] -= cb * tab.at(r, c);
  }
  run_simplex(tab, z2, n + n_slack);

  DenseLpResult out;
  out.x.assign(n, 0.0);
  for (int r = 0; r < rows; ++r)
    if (tab.basis[r] < n) out.x[tab.basis[r]] = tab.at(r, rhs);
  out.objective = 0.0;
  for (int c = 0; c < n; ++c) out.objective += lp.objective[c] * out.x[c];
  return out;
}

}  // namespace itx
