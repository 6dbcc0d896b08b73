#pragma once

#include <vector>

#include "itx/measures.hpp"

// Extremal transport against a finite target support: the per-point best
// cost c*(x), the full nearest-neighbor tie set, the deterministic
// lowest-index nearest-neighbor map, and the extremal cost (the weighted
// average of c* under the source).
namespace itx {

struct NnResult {
  std::vector<int> argmin_indices;  // all targets within tie_tol of the min, ascending
  double c_star = 0.0;
};

inline constexpr double kDefaultTieTol = 1e-9;

double c_star(const Point& x, const DiscreteMeasure& q, CostKind kind);

NnResult nn_query(const Point& x, const DiscreteMeasure& q, CostKind kind,
                  double tie_tol = kDefaultTieTol);

// For each source atom, the lowest-index nearest target atom.
std::vector<Point> et_map(const DiscreteMeasure& p, const DiscreteMeasure& q, CostKind kind);

// Same map, but as target indices (handy for tests and plots).
std::vector<int> et_map_indices(const DiscreteMeasure& p, const DiscreteMeasure& q,
                                CostKind kind);

// sum_i p_i * c_star(x_i, Q); requires P to be a probability measure.
double extremal_cost(const DiscreteMeasure& p, const DiscreteMeasure& q, CostKind kind);

}  // namespace itx
