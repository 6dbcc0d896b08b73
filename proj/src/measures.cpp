#include "itx/measures.hpp"

#include <cmath>
#include <string>

#include "itx/errors.hpp"

namespace itx {

namespace {

void check_same_dims(const std::vector<Point>& points) {
  if (points.empty()) throw EmptyInput("measure needs at least one point");
  const std::size_t d = points.front().size();
  if (d == 0) throw DimensionMismatch("points must have dimension >= 1");
  for (const Point& p : points) {
    if (p.size() != d)
      throw DimensionMismatch("point dimensions disagree (" + std::to_string(p.size()) +
                              " vs " + std::to_string(d) + ")");
    for (double c : p)
      if (!std::isfinite(c)) throw DataError("point coordinate is not finite");
  }
}

}  // namespace

std::vector<double> DiscreteMeasure::flat_coords() const {
  std::vector<double> flat;
  flat.reserve(points.size() * dim());
  for (const Point& p : points) flat.insert(flat.end(), p.begin(), p.end());
  return flat;
}

void DiscreteMeasure::validate() const {
  check_same_dims(points);
  if (weights.size() != points.size())
    throw DimensionMismatch("weights.size() != points.size()");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw DataError("weights must be non-negative");
    sum += w;
  }
  if (std::fabs(sum - total_mass) > 1e-12 * std::max(1.0, std::fabs(total_mass)))
    throw DataError("weights do not sum to total_mass");
}

DiscreteMeasure make_uniform(std::vector<Point> points, double total_mass) {
  check_same_dims(points);
  if (!(total_mass > 0.0)) throw NonPositiveMass("make_uniform");
  DiscreteMeasure m;
  const double w = total_mass / static_cast<double>(points.size());
  m.weights.assign(points.size(), w);
  m.points = std::move(points);
  m.total_mass = total_mass;
  return m;
}

DiscreteMeasure make_weighted(std::vector<Point> points, std::vector<double> weights) {
  check_same_dims(points);
  if (weights.size() != points.size())
    throw DimensionMismatch("make_weighted: weights.size() != points.size()");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw DataError("make_weighted: weights must be non-negative");
    sum += w;
  }
  DiscreteMeasure m;
  m.points = std::move(points);
  m.weights = std::move(weights);
  m.total_mass = sum;
  return m;
}

double eval_cost(CostKind kind, const Point& x, const Point& y) {
  if (x.size() != y.size() || x.empty())
    throw DimensionMismatch("eval_cost: points must share a dimension >= 1");
  const int d = static_cast<int>(x.size());
  double s = 0.0;
  if (kind == CostKind::SqEuclideanNormalized) {
    for (int t = 0; t < d; ++t) {
      const double diff = x[t] - y[t];
      s += diff * diff;
    }
  } else {
    for (int t = 0; t < d; ++t) s += std::fabs(x[t] - y[t]);
  }
  return s / d;
}

CostMatrix build_cost_matrix(CostKind kind, const DiscreteMeasure& p, const DiscreteMeasure& q) {
  if (p.size() == 0 || q.size() == 0) throw EmptyInput("build_cost_matrix");
  if (p.dim() != q.dim()) throw DimensionMismatch("build_cost_matrix: measure dims differ");
  CostMatrix c;
  c.rows = p.size();
  c.cols = q.size();
  c.values.resize(static_cast<std::size_t>(c.rows) * c.cols);
  const std::vector<double> src = p.flat_coords();
  const std::vector<double> tgt = q.flat_coords();
  kernels::pairwise_cost(to_kernel_kind(kind), src.data(), c.rows, tgt.data(), c.cols,
                         p.dim(), c.values.data());
  return c;
}

}  // namespace itx
