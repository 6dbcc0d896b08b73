#include "itx/neural_it.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "itx/errors.hpp"

namespace itx {

void TrainConfig::validate() const {
  if (!(w_target >= 1.0)) throw BadParams("w_target must be >= 1");
  if (!(lr > 0.0)) throw BadParams("lr must be positive");
  if (batch_size < 1) throw BadParams("batch_size must be >= 1");
  if (k_t < 1) throw BadParams("k_T must be >= 1");
  if (total_f_iters < 1) throw BadParams("total_f_iters must be >= 1");
  if (effective_ramp_iters() > total_f_iters)
    throw BadParams("ramp_iters cannot exceed total_f_iters");
  if (hidden.empty()) throw BadParams("need at least one hidden layer");
}

int TrainConfig::effective_ramp_iters() const {
  if (ramp_iters >= 0) return ramp_iters;
  return static_cast<int>(0.3 * total_f_iters);
}

double TrainConfig::w_at(int f_iter) const {
  const int ramp = effective_ramp_iters();
  if (ramp <= 0 || f_iter >= ramp) return w_target;
  return 1.0 + (w_target - 1.0) * static_cast<double>(f_iter) / ramp;
}

double TrainConfig::lr_at(int f_iter) const {
  double out = lr;
  for (int ms : lr_milestones)
    if (f_iter >= ms) out *= 0.5;
  return out;
}

Sampler::Sampler(Scene scene, std::uint64_t stream_seed)
    : scene_backed_(true), scene_(std::move(scene)), rng_(stream_seed), dim_(2) {}

Sampler::Sampler(std::vector<Point> cloud, std::uint64_t stream_seed)
    : scene_backed_(false), cloud_(std::move(cloud)), rng_(stream_seed) {
  if (cloud_.empty()) throw EmptyInput("sampler cloud");
  dim_ = static_cast<int>(cloud_.front().size());
}

Tensor Sampler::draw(int n) {
  if (n < 1) throw BadParams("sampler draw needs n >= 1");
  Tensor out(n, dim_);
  for (int i = 0; i < n; ++i) {
    const Point p = scene_backed_ ? sample_one(scene_, rng_)
                                  : cloud_[rng_.uniform_int(0, static_cast<int>(cloud_.size()) - 1)];
    for (int j = 0; j < dim_; ++j) out.at(i, j) = p[j];
  }
  return out;
}

namespace {

// c(x, T(x)) averaged over the batch as one scalar node. With costs
// normalized by dimension, the mean over all entries of the elementwise
// difference image is exactly the batch-mean cost.
NodeId cost_mean_node(Tape& tape, CostKind kind, NodeId x, NodeId tx) {
  const NodeId diff = tape.sub(x, tx);
  if (kind == CostKind::SqEuclideanNormalized) return tape.mean_all(tape.mul(diff, diff));
  return tape.mean_all(tape.abs(diff));
}

double batch_mean_cost(CostKind kind, const Tensor& x, const Tensor& tx) {
  double total = 0.0;
  const int d = x.cols;
  for (int i = 0; i < x.rows; ++i) {
    double s = 0.0;
    for (int j = 0; j < d; ++j) {
      const double diff = x.at(i, j) - tx.at(i, j);
      s += (kind == CostKind::SqEuclideanNormalized) ? diff * diff : std::fabs(diff);
    }
    total += s / d;
  }
  return total / x.rows;
}

void ensure_finite_scalar(double x, const char* what) {
  if (!std::isfinite(x)) throw NonFiniteLoss(what);
}

}  // namespace

TrainResult train_it(Sampler& p, Sampler& q, CostKind kind, const TrainConfig& cfg) {
  cfg.validate();
  if (p.dim() != q.dim()) throw DimensionMismatch("train_it: sampler dims differ");
  const int d = p.dim();

  Rng init_rng(cfg.seed);
  std::vector<int> t_dims = {d};
  std::vector<int> f_dims = {d};
  for (int h : cfg.hidden) {
    t_dims.push_back(h);
    f_dims.push_back(h);
  }
  t_dims.push_back(d);
  f_dims.push_back(1);

  TrainResult out;
  out.map_net = Mlp::make(t_dims, cfg.act, init_rng);
  out.potential = NonPosHead::make(f_dims, cfg.act, init_rng);

  std::vector<Tensor*> t_params = out.map_net.params();
  std::vector<Tensor*> f_params = out.potential.inner.params();
  AdamState adam_t = AdamState::make(t_params, cfg.lr);
  AdamState adam_f = AdamState::make(f_params, cfg.lr);

  const Tensor eval_x = p.draw(cfg.eval_batch);

  Tape tape;
  double last_loss_f = 0.0, last_loss_t = 0.0;

  for (int it = 0; it < cfg.total_f_iters; ++it) {
    const double w = cfg.w_at(it);
    const double lr_now = cfg.lr_at(it);

    // Potential ascent. T(X) enters as a constant batch.
    {
      const Tensor x = p.draw(cfg.batch_size);
      const Tensor y = q.draw(cfg.batch_size);
      const Tensor tx = out.map_net.forward_nograd(x);

      tape.reset();
      const std::vector<NodeId> f_leaf_ids = out.potential.inner.register_params(tape);
      const NodeId f_y = out.potential.forward_with(tape, tape.leaf(y), f_leaf_ids);
      const NodeId f_tx = out.potential.forward_with(tape, tape.leaf(tx), f_leaf_ids);
      const NodeId gain = tape.sub(tape.scale(tape.mean_all(f_y), w), tape.mean_all(f_tx));
      const NodeId loss = tape.neg(gain);  // ascend = minimize the negation
      last_loss_f = tape.scalar(gain);
      ensure_finite_scalar(last_loss_f, "potential loss");
      tape.backward(loss);

      std::vector<const Tensor*> grad_ptrs;
      for (NodeId id : f_leaf_ids) grad_ptrs.push_back(&tape.grad(id));
      adam_f.step(f_params, grad_ptrs, lr_now);
      out.potential.inner.check_finite();
    }

    // Inner map descent.
    for (int k = 0; k < cfg.k_t; ++k) {
      const Tensor x = p.draw(cfg.batch_size);
      tape.reset();
      const NodeId x_id = tape.leaf(x);
      std::vector<NodeId> t_leaf_ids;
      const NodeId tx = out.map_net.forward(tape, x_id, &t_leaf_ids);
      const NodeId cost_node = cost_mean_node(tape, kind, x_id, tx);
      const NodeId f_tx = out.potential.forward(tape, tx, nullptr);
      const NodeId loss = tape.sub(cost_node, tape.mean_all(f_tx));
      last_loss_t = tape.scalar(loss);
      ensure_finite_scalar(last_loss_t, "map loss");
      tape.backward(loss);

      std::vector<const Tensor*> grad_ptrs;
      for (NodeId id : t_leaf_ids) grad_ptrs.push_back(&tape.grad(id));
      adam_t.step(t_params, grad_ptrs, lr_now);
      out.map_net.check_finite();
    }

    if (it % cfg.log_every == 0 || it + 1 == cfg.total_f_iters) {
      const Tensor mapped = out.map_net.forward_nograd(eval_x);
      HistoryRow row;
      row.iter = it;
      row.loss_f = last_loss_f;
      row.loss_t = last_loss_t;
      row.w = w;
      row.eval_cost = batch_mean_cost(kind, eval_x, mapped);
      ensure_finite_scalar(row.eval_cost, "eval cost");
      out.history.rows.push_back(row);
    }
  }
  return out;
}

EvalResult eval_map(const Mlp& map_net, const std::vector<Point>& x_test, CostKind kind) {
  if (x_test.empty()) throw EmptyInput("eval_map");
  const Tensor x = Tensor::from_points(x_test);
  if (x.cols != map_net.in_dim()) throw DimensionMismatch("eval_map: test dim");
  const Tensor tx = map_net.forward_nograd(x);
  EvalResult r;
  r.mapped = tx.to_points();
  r.mean_cost = batch_mean_cost(kind, x, tx);
  return r;
}

double mse_to_reference(const Mlp& map_net, const std::function<Point(const Point&)>& ref,
                        const std::vector<Point>& x_test) {
  if (x_test.empty()) throw EmptyInput("mse_to_reference");
  const Tensor x = Tensor::from_points(x_test);
  const Tensor tx = map_net.forward_nograd(x);
  double total = 0.0;
  for (int i = 0; i < x.rows; ++i) {
    const Point want = ref(x_test[i]);
    if (static_cast<int>(want.size()) != tx.cols)
      throw DimensionMismatch("mse_to_reference: reference dim");
    double s = 0.0;
    for (int j = 0; j < tx.cols; ++j) {
      const double diff = tx.at(i, j) - want[j];
      s += diff * diff;  // unnormalized squared distance
    }
    total += s;
  }
  return total / x.rows;
}

double potential_zero_fraction(const NonPosHead& f_net, const std::vector<Point>& y,
                               double tol) {
  if (y.empty()) throw EmptyInput("potential_zero_fraction");
  const Tensor vals = f_net.forward_nograd(Tensor::from_points(y));
  int hits = 0;
  for (double v : vals.v)
    if (std::fabs(v) <= tol) ++hits;
  return static_cast<double>(hits) / static_cast<double>(vals.size());
}

double empirical_lagrangian(const Mlp& map_net, const NonPosHead& f_net, CostKind kind,
                            const std::vector<Point>& x, const std::vector<Point>& y,
                            double w) {
  const Tensor xt = Tensor::from_points(x);
  const Tensor tx = map_net.forward_nograd(xt);
  const Tensor f_tx = f_net.forward_nograd(tx);
  const Tensor f_y = f_net.forward_nograd(Tensor::from_points(y));
  double mean_ftx = 0.0;
  for (double v : f_tx.v) mean_ftx += v;
  mean_ftx /= f_tx.size();
  double mean_fy = 0.0;
  for (double v : f_y.v) mean_fy += v;
  mean_fy /= f_y.size();
  return batch_mean_cost(kind, xt, tx) - mean_ftx + w * mean_fy;
}

std::string history_to_csv(const TrainHistory& h) {
  std::ostringstream out;
  out << "iter,loss_f,loss_T,w,eval_cost\n";
  char buf[128];
  for (const HistoryRow& r : h.rows) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g\n", r.iter, r.loss_f,
                  r.loss_t, r.w, r.eval_cost);
    out << buf;
  }
  return out.str();
}

}  // namespace itx
