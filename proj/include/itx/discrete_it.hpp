#pragma once

#include <vector>

#include "itx/measures.hpp"

// Exact discrete incomplete transport: source marginal fixed to P, target
// marginal bounded by w*Q. Solved by appending one zero-cost dummy source
// of mass (w - 1) against target masses w*q_j and running the balanced
// network simplex; the LP dual gives the potentials of the w-weighted
// dual formula with non-positive target potential.
namespace itx {

struct ItInstance {
  DiscreteMeasure p;  // probability measure (total mass 1)
  DiscreteMeasure q;  // probability measure (total mass 1)
  double w = 1.0;     // >= 1
  CostMatrix cost;    // |P| x |Q|
};

ItInstance make_it_instance(DiscreteMeasure p, DiscreteMeasure q, CostKind kind, double w);

struct CouplingEntry {
  int i;
  int j;
  double mass;
};

struct Coupling {
  std::vector<CouplingEntry> entries;  // mass > 0, sorted by (i, j)
  std::vector<double> row_marginals;   // length |P|
  std::vector<double> col_marginals;   // length |Q|
};

struct DualSolution {
  std::vector<double> u;  // source potentials (the c-transform values)
  std::vector<double> v;  // target potentials, v <= 0
  double objective = 0.0; // sum_i p_i u_i + w sum_j q_j v_j
};

struct ItSolution {
  Coupling coupling;
  double primal_cost = 0.0;
  DualSolution dual;
};

ItSolution solve_it(const ItInstance& inst);

// Balanced optimal transport on the same data (the w = 1 special case,
// solved without the dummy row). Used for the reduction cross-check.
double solve_balanced_cost(const DiscreteMeasure& p, const DiscreteMeasure& q,
                           const CostMatrix& cost);

// Independent oracle: the same LP handed to a generic dense tableau
// simplex. Only for tiny instances (|P|*|Q| <= 64).
double brute_force_it(const ItInstance& inst);

// solve_it cost for each w in ws (ascending, all >= 1).
std::vector<std::pair<double, double>> cost_curve(const DiscreteMeasure& p,
                                                  const DiscreteMeasure& q, CostKind kind,
                                                  const std::vector<double>& ws);

// Mass-weighted average target point per source row of the coupling.
std::vector<Point> barycentric_projection(const Coupling& cpl, const DiscreteMeasure& q);

// primal - dual objective; >= -1e-7 for a feasible dual.
double duality_gap(double primal_cost, const DualSolution& dual);

// Fraction of strict-slack target columns whose potential vanishes.
// Vacuously 1.0 when no column has slack (e.g. w = 1).
double vanishing_fraction(const ItInstance& inst, const DualSolution& dual,
                          const Coupling& cpl, double tol);

}  // namespace itx
