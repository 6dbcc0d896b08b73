#pragma once

#include <string>
#include <vector>

#include "itx/autodiff.hpp"
#include "itx/rng.hpp"

namespace itx {

enum class Activation { ReLU, LeakyReLU };  // LeakyReLU uses slope 0.2

inline double activation_slope(Activation a) { return a == Activation::ReLU ? 0.0 : 0.2; }

// Plain fully connected network. Parameters are owned here; each training
// step registers them as tape leaves in the fixed order W0, b0, W1, b1, ...
struct Mlp {
  std::vector<int> layer_dims;  // e.g. {2, 128, 128, 2}
  Activation act = Activation::LeakyReLU;
  std::vector<Tensor> weights;  // [in x out] per layer
  std::vector<Tensor> biases;   // [1 x out] per layer

  static Mlp make(std::vector<int> dims, Activation act, Rng& rng);

  int in_dim() const { return layer_dims.front(); }
  int out_dim() const { return layer_dims.back(); }

  // Registers the parameters as tape leaves in canonical order. Several
  // forward passes may share one registration so gradients accumulate on
  // a single leaf set.
  std::vector<NodeId> register_params(Tape& tape) const;
  NodeId forward_with(Tape& tape, NodeId input, const std::vector<NodeId>& param_ids) const;

  // Builds the forward graph; appends the parameter leaf ids to
  // param_ids (if given) in canonical order.
  NodeId forward(Tape& tape, NodeId input, std::vector<NodeId>* param_ids = nullptr) const;

  // Tape-free evaluation. Throws NonFiniteActivation if outputs blow up.
  Tensor forward_nograd(const Tensor& input) const;

  std::vector<Tensor*> params();
  std::vector<const Tensor*> params() const;

  // Throws if any parameter is non-finite (post-step NaN guard).
  void check_finite() const;
};

// Potential head y -> -|inner(y)|: outputs are non-positive by
// construction. The subgradient of |.| at 0 is taken as 0.
struct NonPosHead {
  Mlp inner;  // scalar output

  static NonPosHead make(std::vector<int> dims, Activation act, Rng& rng);

  NodeId forward_with(Tape& tape, NodeId input, const std::vector<NodeId>& param_ids) const;
  NodeId forward(Tape& tape, NodeId input, std::vector<NodeId>* param_ids = nullptr) const;
  Tensor forward_nograd(const Tensor& input) const;
};

struct AdamState {
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  long step_count = 0;
  std::vector<Tensor> m;
  std::vector<Tensor> v;

  static AdamState make(const std::vector<Tensor*>& params, double lr);

  // One update with the given effective learning rate (scheduler-scaled);
  // increments step_count.
  void step(std::vector<Tensor*> params, const std::vector<const Tensor*>& grads,
            double lr_now);
  void step(std::vector<Tensor*> params, const std::vector<const Tensor*>& grads) {
    step(std::move(params), grads, lr);
  }
};

// Checkpoints: JSON with version "itx-mlp-v1", layer_dims, activation tag
// and flat row-major parameter arrays.
void save_mlp(const Mlp& net, const std::string& path, const std::string& head = "");
Mlp load_mlp(const std::string& path, std::string* head = nullptr);
void save_nonpos_head(const NonPosHead& net, const std::string& path);
NonPosHead load_nonpos_head(const std::string& path);

std::string mlp_to_json(const Mlp& net, const std::string& head = "");
Mlp mlp_from_json(const std::string& text, std::string* head = nullptr);

}  // namespace itx
