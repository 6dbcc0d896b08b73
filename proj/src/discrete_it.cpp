#include "itx/discrete_it.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "itx/dense_lp.hpp"
#include "itx/errors.hpp"
#include "itx/transport_simplex.hpp"

namespace itx {

namespace {

constexpr double kMassFloor = 1e-14;  // drop float crumbs from the flow

void check_instance(const ItInstance& inst) {
  if (inst.p.size() == 0 || inst.q.size() == 0) throw EmptyInput("it instance");
  if (std::fabs(inst.p.total_mass - 1.0) > 1e-9 || std::fabs(inst.q.total_mass - 1.0) > 1e-9)
    throw NonProbabilityMass("it instance wants probability measures");
  if (!(inst.w >= 1.0)) throw BadParams("w must be >= 1, got " + std::to_string(inst.w));
  if (inst.cost.rows != inst.p.size() || inst.cost.cols != inst.q.size())
    throw DimensionMismatch("cost matrix does not match the measures");
}

}  // namespace

ItInstance make_it_instance(DiscreteMeasure p, DiscreteMeasure q, CostKind kind, double w) {
  ItInstance inst;
  inst.cost = build_cost_matrix(kind, p, q);
  inst.p = std::move(p);
  inst.q = std::move(q);
  inst.w = w;
  check_instance(inst);
  return inst;
}

ItSolution solve_it(const ItInstance& inst) {
  check_instance(inst);
  const int n = inst.p.size();
  const int m = inst.q.size();

  // Balanced reduction: dummy source row (index n) with zero costs.
  std::vector<double> supply(inst.p.weights);
  supply.push_back(inst.w - 1.0);
  std::vector<double> demand(m);
  for (int j = 0; j < m; ++j) demand[j] = inst.w * inst.q.weights[j];
  std::vector<double> cost(static_cast<std::size_t>(n + 1) * m, 0.0);
  std::copy(inst.cost.values.begin(), inst.cost.values.end(), cost.begin());

  const TransportResult tr = solve_transport(supply, demand, cost.data());

  ItSolution sol;
  sol.coupling.row_marginals.assign(n, 0.0);
  sol.coupling.col_marginals.assign(m, 0.0);
  double primal = 0.0;
  for (int i = 0; i < n; ++i) {
    const double* fi = tr.flow.data() + static_cast<std::size_t>(i) * m;
    for (int j = 0; j < m; ++j) {
      if (fi[j] <= kMassFloor) continue;
      sol.coupling.entries.push_back({i, j, fi[j]});
      sol.coupling.row_marginals[i] += fi[j];
      sol.coupling.col_marginals[j] += fi[j];
      primal += fi[j] * inst.cost.at(i, j);
    }
  }
  sol.primal_cost = primal;

  // Shift the LP potentials by the dummy source's potential: feasibility
  // of the zero-cost dummy arcs pins v <= 0 and the compensation lands in
  // the (w - 1) dummy mass term, leaving the objective unchanged. The
  // termination tolerance can leave the dummy potential a hair above
  // -max(beta); taking the min keeps v <= 0 exact either way.
  double max_beta = tr.beta[0];
  for (int j = 1; j < m; ++j) max_beta = std::max(max_beta, tr.beta[j]);
  const double shift = std::min(tr.alpha[n], -max_beta);
  sol.dual.v.resize(m);
  for (int j = 0; j < m; ++j) sol.dual.v[j] = std::min(tr.beta[j] + shift, 0.0);
  sol.dual.u.resize(n);
  for (int i = 0; i < n; ++i) {
    double best = inst.cost.at(i, 0) - sol.dual.v[0];
    for (int j = 1; j < m; ++j) best = std::min(best, inst.cost.at(i, j) - sol.dual.v[j]);
    sol.dual.u[i] = best;  // tight c-transform of v
  }
  double obj = 0.0;
  for (int i = 0; i < n; ++i) obj += inst.p.weights[i] * sol.dual.u[i];
  for (int j = 0; j < m; ++j) obj += inst.w * inst.q.weights[j] * sol.dual.v[j];
  sol.dual.objective = obj;
  return sol;
}

double solve_balanced_cost(const DiscreteMeasure& p, const DiscreteMeasure& q,
                           const CostMatrix& cost) {
  if (cost.rows != p.size() || cost.cols != q.size())
    throw DimensionMismatch("cost matrix does not match the measures");
  const TransportResult tr = solve_transport(p.weights, q.weights, cost.values.data());
  return tr.cost;
}

double brute_force_it(const ItInstance& inst) {
  check_instance(inst);
  const int n = inst.p.size();
  const int m = inst.q.size();
  if (n * m > 64)
    throw InstanceTooLarge("brute_force_it handles at most 64 cells, got " +
                           std::to_string(n * m));

  DenseLp lp;
  lp.num_vars = n * m;
  lp.objective = inst.cost.values;
  lp.eq_lhs.assign(static_cast<std::size_t>(n) * lp.num_vars, 0.0);
  lp.eq_rhs = inst.p.weights;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      lp.eq_lhs[static_cast<std::size_t>(i) * lp.num_vars + i * m + j] = 1.0;
  lp.ub_lhs.assign(static_cast<std::size_t>(m) * lp.num_vars, 0.0);
  lp.ub_rhs.resize(m);
  for (int j = 0; j < m; ++j) {
    lp.ub_rhs[j] = inst.w * inst.q.weights[j];
    for (int i = 0; i < n; ++i)
      lp.ub_lhs[static_cast<std::size_t>(j) * lp.num_vars + i * m + j] = 1.0;
  }
  return solve_dense_lp(lp).objective;
}

std::vector<std::pair<double, double>> cost_curve(const DiscreteMeasure& p,
                                                  const DiscreteMeasure& q, CostKind kind,
                                                  const std::vector<double>& ws) {
  if (ws.empty()) throw EmptyInput("cost_curve needs at least one w");
  for (std::size_t t = 0; t + 1 < ws.size(); ++t)
    if (!(ws[t] <= ws[t + 1])) throw BadParams("cost_curve expects ascending w grid");

  ItInstance inst = make_it_instance(p, q, kind, ws.front());
  std::vector<std::pair<double, double>> out;
  out.reserve(ws.size());
  for (double w : ws) {
    inst.w = w;
    out.emplace_back(w, solve_it(inst).primal_cost);
  }
  return out;
}

std::vector<Point> barycentric_projection(const Coupling& cpl, const DiscreteMeasure& q) {
  const int n = static_cast<int>(cpl.row_marginals.size());
  const int d = q.dim();
  std::vector<Point> proj(n, Point(d, 0.0));
  std::vector<double> mass(n, 0.0);
  for (const CouplingEntry& e : cpl.entries) {
    for (int t = 0; t < d; ++t) proj[e.i][t] += e.mass * q.points[e.j][t];
    mass[e.i] += e.mass;
  }
  for (int i = 0; i < n; ++i) {
    if (mass[i] <= 0.0)
      throw ZeroRowMass("source row " + std::to_string(i));
    for (int t = 0; t < d; ++t) proj[i][t] /= mass[i];
  }
  return proj;
}

double duality_gap(double primal_cost, const DualSolution& dual) {
  return primal_cost - dual.objective;
}

double vanishing_fraction(const ItInstance& inst, const DualSolution& dual,
                          const Coupling& cpl, double tol) {
  int slack_cols = 0;
  int vanished = 0;
  for (int j = 0; j < inst.q.size(); ++j) {
    const double cap = inst.w * inst.q.weights[j];
    if (cpl.col_marginals[j] < cap - tol) {
      ++slack_cols;
      if (std::fabs(dual.v[j]) <= tol) ++vanished;
    }
  }
  if (slack_cols == 0) return 1.0;  // vacuous
  return static_cast<double>(vanished) / slack_cols;
}

}  // namespace itx
