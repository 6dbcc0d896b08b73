#pragma once

#include <vector>

#include "itx/kernels.hpp"

namespace itx {

// A point in R^D. Coordinates must be finite.
using Point = std::vector<double>;

enum class CostKind { SqEuclideanNormalized, L1Normalized };

inline kernels::PairwiseKind to_kernel_kind(CostKind k) {
  return k == CostKind::SqEuclideanNormalized ? kernels::PairwiseKind::SqEuclideanNormalized
                                              : kernels::PairwiseKind::L1Normalized;
}

// Weighted point cloud standing in for an empirical measure. Total mass
// need not be 1. Immutable after construction.
struct DiscreteMeasure {
  std::vector<Point> points;
  std::vector<double> weights;
  double total_mass = 0.0;

  int size() const { return static_cast<int>(points.size()); }
  int dim() const { return points.empty() ? 0 : static_cast<int>(points.front().size()); }

  // Row-major size() x dim() copy of the coordinates for the kernels.
  std::vector<double> flat_coords() const;

  // Throws if the stored weights violate the measure invariants.
  void validate() const;
};

// Equal weights summing to total_mass.
DiscreteMeasure make_uniform(std::vector<Point> points, double total_mass);

// Explicit non-negative weights; total mass is their sum.
DiscreteMeasure make_weighted(std::vector<Point> points, std::vector<double> weights);

// Per-dimension-normalized costs: (1/D) * sum_d (x_d - y_d)^2 or |x_d - y_d|.
double eval_cost(CostKind kind, const Point& x, const Point& y);

struct CostMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> values;  // row-major rows x cols

  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * cols + j]; }
};

CostMatrix build_cost_matrix(CostKind kind, const DiscreteMeasure& p, const DiscreteMeasure& q);

}  // namespace itx
