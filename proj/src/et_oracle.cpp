#include "itx/et_oracle.hpp"

#include <cmath>

#include "itx/errors.hpp"

namespace itx {

namespace {

void check_query(const Point& x, const DiscreteMeasure& q) {
  if (q.size() == 0) throw EmptyInput("target measure is empty");
  if (static_cast<int>(x.size()) != q.dim())
    throw DimensionMismatch("query point dim != target dim");
}

}  // namespace

double c_star(const Point& x, const DiscreteMeasure& q, CostKind kind) {
  check_query(x, q);
  double best = eval_cost(kind, x, q.points[0]);
  for (int j = 1; j < q.size(); ++j) best = std::min(best, eval_cost(kind, x, q.points[j]));
  return best;
}

NnResult nn_query(const Point& x, const DiscreteMeasure& q, CostKind kind, double tie_tol) {
  check_query(x, q);
  NnResult r;
  r.c_star = c_star(x, q, kind);
  for (int j = 0; j < q.size(); ++j)
    if (eval_cost(kind, x, q.points[j]) <= r.c_star + tie_tol) r.argmin_indices.push_back(j);
  return r;
}

std::vector<int> et_map_indices(const DiscreteMeasure& p, const DiscreteMeasure& q,
                                CostKind kind) {
  if (p.size() == 0 || q.size() == 0) throw EmptyInput("et_map");
  if (p.dim() != q.dim()) throw DimensionMismatch("et_map: measure dims differ");
  std::vector<double> best(p.size());
  std::vector<int> idx(p.size());
  const std::vector<double> src = p.flat_coords();
  const std::vector<double> tgt = q.flat_coords();
  kernels::row_nearest(to_kernel_kind(kind), src.data(), p.size(), tgt.data(), q.size(),
                       p.dim(), best.data(), idx.data());
  return idx;
}

std::vector<Point> et_map(const DiscreteMeasure& p, const DiscreteMeasure& q, CostKind kind) {
  const std::vector<int> idx = et_map_indices(p, q, kind);
  std::vector<Point> mapped;
  mapped.reserve(idx.size());
  for (int j : idx) mapped.push_back(q.points[j]);
  return mapped;
}

double extremal_cost(const DiscreteMeasure& p, const DiscreteMeasure& q, CostKind kind) {
  if (p.size() == 0 || q.size() == 0) throw EmptyInput("extremal_cost");
  if (p.dim() != q.dim()) throw DimensionMismatch("extremal_cost: measure dims differ");
  if (std::fabs(p.total_mass - 1.0) > 1e-9)
    throw NonProbabilityMass("extremal_cost expects a probability source");
  std::vector<double> best(p.size());
  std::vector<int> idx(p.size());
  const std::vector<double> src = p.flat_coords();
  const std::vector<double> tgt = q.flat_coords();
  kernels::row_nearest(to_kernel_kind(kind), src.data(), p.size(), tgt.data(), q.size(),
                       p.dim(), best.data(), idx.data());
  double cost = 0.0;
  for (int i = 0; i < p.size(); ++i) cost += p.weights[i] * best[i];
  return cost;
}

}  // namespace itx
