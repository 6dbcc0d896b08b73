#pragma once

#include <functional>
#include <string>
#include <vector>

#include "itx/nn.hpp"
#include "itx/toyscenes.hpp"

// Saddle-point trainer for incomplete transport maps: the potential f is
// ascended on  w * E_Q f(y) - E_P f(T(x))  and the map T is descended on
// E_P [ c(x, T(x)) - f(T(x)) ], with k_T inner map steps per potential
// step and the weight w ramped linearly from 1 to its target.
namespace itx {

struct TrainConfig {
  double w_target = 1.0;
  double lr = 1e-4;
  int batch_size = 256;
  int k_t = 10;  // inner map iterations per potential iteration
  int total_f_iters = 10000;
  int ramp_iters = -1;  // -1: 30% of total_f_iters
  std::uint64_t seed = 0;
  std::vector<int> lr_milestones;  // lr halves at each milestone (f iterations)
  std::vector<int> hidden = {128, 128, 128};
  Activation act = Activation::LeakyReLU;
  int log_every = 50;
  int eval_batch = 1024;

  void validate() const;
  int effective_ramp_iters() const;
  double w_at(int f_iter) const;  // live w on the linear ramp
  double lr_at(int f_iter) const;
};

struct HistoryRow {
  int iter;
  double loss_f;
  double loss_t;
  double w;
  double eval_cost;  // held-out transport cost
};

struct TrainHistory {
  std::vector<HistoryRow> rows;
};

// Seeded stream of i.i.d. batches, either scene-backed or resampled with
// replacement from a fixed cloud.
class Sampler {
 public:
  Sampler(Scene scene, std::uint64_t stream_seed);
  Sampler(std::vector<Point> cloud, std::uint64_t stream_seed);

  int dim() const { return dim_; }
  Tensor draw(int n);

 private:
  bool scene_backed_;
  Scene scene_;
  std::vector<Point> cloud_;
  Rng rng_;
  int dim_;
};

struct TrainResult {
  Mlp map_net;
  NonPosHead potential;
  TrainHistory history;
};

TrainResult train_it(Sampler& p, Sampler& q, CostKind kind, const TrainConfig& cfg);

// Mean transport cost of the mapped test points, plus the images.
struct EvalResult {
  std::vector<Point> mapped;
  double mean_cost = 0.0;
};
EvalResult eval_map(const Mlp& map_net, const std::vector<Point>& x_test, CostKind kind);

// Mean squared Euclidean distance (unnormalized) between the net's map
// and a reference map over the test points.
double mse_to_reference(const Mlp& map_net, const std::function<Point(const Point&)>& ref,
                        const std::vector<Point>& x_test);

// Fraction of the given target samples where |f| <= tol.
double potential_zero_fraction(const NonPosHead& f_net, const std::vector<Point>& y,
                               double tol);

// Empirical Lagrangian  E_P[c(x,T(x)) - f(T(x))] + w E_Q[f(y)]  on given
// clouds; ties the trained pair back to the exact discrete cost.
double empirical_lagrangian(const Mlp& map_net, const NonPosHead& f_net, CostKind kind,
                            const std::vector<Point>& x, const std::vector<Point>& y,
                            double w);

std::string history_to_csv(const TrainHistory& h);

}  // namespace itx
