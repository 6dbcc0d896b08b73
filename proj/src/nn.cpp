#include "itx/nn.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "itx/errors.hpp"
#include "json.hpp"

namespace itx {

Mlp Mlp::make(std::vector<int> dims, Activation act, Rng& rng) {
  if (dims.size() < 2) throw BadParams("mlp needs at least input and output dims");
  for (int d : dims)
    if (d < 1) throw BadParams("mlp layer dims must be positive");
  Mlp net;
  net.layer_dims = std::move(dims);
  net.act = act;
  for (std::size_t l = 0; l + 1 < net.layer_dims.size(); ++l) {
    const int fan_in = net.layer_dims[l];
    const int fan_out = net.layer_dims[l + 1];
    const double limit = std::sqrt(6.0 / fan_in);
    Tensor w(fan_in, fan_out);
    for (double& x : w.v) x = rng.uniform(-limit, limit);
    net.weights.push_back(std::move(w));
    net.biases.emplace_back(1, fan_out, 0.0);
  }
  return net;
}

std::vector<NodeId> Mlp::register_params(Tape& tape) const {
  std::vector<NodeId> ids;
  ids.reserve(2 * weights.size());
  for (std::size_t l = 0; l < weights.size(); ++l) {
    ids.push_back(tape.leaf(weights[l]));
    ids.push_back(tape.leaf(biases[l]));
  }
  return ids;
}

NodeId Mlp::forward_with(Tape& tape, NodeId input, const std::vector<NodeId>& param_ids) const {
  if (tape.value(input).cols != in_dim())
    throw DimensionMismatch("mlp forward: input cols != layer_dims[0]");
  if (param_ids.size() != 2 * weights.size())
    throw ShapeMismatch("mlp forward: wrong parameter registration");
  NodeId h = input;
  const double slope = activation_slope(act);
  for (std::size_t l = 0; l < weights.size(); ++l) {
    h = tape.add_bias(tape.matmul(h, param_ids[2 * l]), param_ids[2 * l + 1]);
    if (l + 1 < weights.size()) h = tape.leaky_relu(h, slope);
  }
  return h;
}

NodeId Mlp::forward(Tape& tape, NodeId input, std::vector<NodeId>* param_ids) const {
  const std::vector<NodeId> ids = register_params(tape);
  if (param_ids) *param_ids = ids;
  return forward_with(tape, input, ids);
}

Tensor Mlp::forward_nograd(const Tensor& input) const {
  if (input.cols != in_dim())
    throw DimensionMismatch("mlp forward: input cols != layer_dims[0]");
  Tensor h = input;
  const double slope = activation_slope(act);
  for (std::size_t l = 0; l < weights.size(); ++l) {
    Tensor out(h.rows, weights[l].cols);
    kernels::matmul_nn(h.v.data(), weights[l].v.data(), out.v.data(), h.rows, h.cols,
                       weights[l].cols);
    for (int i = 0; i < out.rows; ++i)
      for (int j = 0; j < out.cols; ++j) out.at(i, j) += biases[l].v[j];
    if (l + 1 < weights.size())
      for (double& x : out.v)
        if (x < 0.0) x *= slope;
    h = std::move(out);
  }
  for (double x : h.v)
    if (!std::isfinite(x)) throw NonFiniteActivation("mlp output");
  return h;
}

std::vector<Tensor*> Mlp::params() {
  std::vector<Tensor*> p;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    p.push_back(&weights[l]);
    p.push_back(&biases[l]);
  }
  return p;
}

std::vector<const Tensor*> Mlp::params() const {
  std::vector<const Tensor*> p;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    p.push_back(&weights[l]);
    p.push_back(&biases[l]);
  }
  return p;
}

void Mlp::check_finite() const {
  for (const Tensor* t : params())
    for (double x : t->v)
      if (!std::isfinite(x)) throw NonFiniteActivation("mlp parameter");
}

NonPosHead NonPosHead::make(std::vector<int> dims, Activation act, Rng& rng) {
  if (dims.empty() || dims.back() != 1)
    throw BadParams("potential head needs a scalar output layer");
  NonPosHead h;
  h.inner = Mlp::make(std::move(dims), act, rng);
  return h;
}

NodeId NonPosHead::forward_with(Tape& tape, NodeId input,
                                const std::vector<NodeId>& param_ids) const {
  return tape.neg(tape.abs(inner.forward_with(tape, input, param_ids)));
}

NodeId NonPosHead::forward(Tape& tape, NodeId input, std::vector<NodeId>* param_ids) const {
  const std::vector<NodeId> ids = inner.register_params(tape);
  if (param_ids) *param_ids = ids;
  return forward_with(tape, input, ids);
}

Tensor NonPosHead::forward_nograd(const Tensor& input) const {
  Tensor out = inner.forward_nograd(input);
  for (double& x : out.v) x = -std::fabs(x);
  return out;
}

AdamState AdamState::make(const std::vector<Tensor*>& params, double lr) {
  AdamState s;
  s.lr = lr;
  for (const Tensor* p : params) {
    s.m.emplace_back(p->rows, p->cols, 0.0);
    s.v.emplace_back(p->rows, p->cols, 0.0);
  }
  return s;
}

void AdamState::step(std::vector<Tensor*> params, const std::vector<const Tensor*>& grads,
                     double lr_now) {
  if (params.size() != m.size() || grads.size() != m.size())
    throw ShapeMismatch("adam step: parameter list changed");
  ++step_count;
  const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(step_count));
  const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(step_count));
  for (std::size_t t = 0; t < params.size(); ++t) {
    Tensor& p = *params[t];
    const Tensor& g = *grads[t];
    if (!p.same_shape(g) || !p.same_shape(m[t]))
      throw ShapeMismatch("adam step: gradient shape");
    for (std::size_t k = 0; k < p.size(); ++k) {
      m[t].v[k] = beta1 * m[t].v[k] + (1.0 - beta1) * g.v[k];
      v[t].v[k] = beta2 * v[t].v[k] + (1.0 - beta2) * g.v[k] * g.v[k];
      const double mhat = m[t].v[k] / bc1;
      const double vhat = v[t].v[k] / bc2;
      p.v[k] -= lr_now * mhat / (std::sqrt(vhat) + eps);
    }
  }
}

namespace {

const char* kVersion = "itx-mlp-v1";

std::string activation_tag(Activation a) {
  return a == Activation::ReLU ? "relu" : "leaky_relu_0.2";
}

Activation activation_from_tag(const std::string& tag) {
  if (tag == "relu") return Activation::ReLU;
  if (tag == "leaky_relu_0.2") return Activation::LeakyReLU;
  throw DataError("unknown activation tag: " + tag);
}

}  // namespace

std::string mlp_to_json(const Mlp& net, const std::string& head) {
  nlohmann::json j;
  j["version"] = kVersion;
  j["layer_dims"] = net.layer_dims;
  j["activation"] = activation_tag(net.act);
  if (!head.empty()) j["output_head"] = head;
  nlohmann::json weights = nlohmann::json::array();
  nlohmann::json biases = nlohmann::json::array();
  for (std::size_t l = 0; l < net.weights.size(); ++l) {
    weights.push_back(net.weights[l].v);
    biases.push_back(net.biases[l].v);
  }
  j["weights"] = std::move(weights);
  j["biases"] = std::move(biases);
  return j.dump();
}

Mlp mlp_from_json(const std::string& text, std::string* head) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("checkpoint parse: ") + e.what());
  }
  if (!j.contains("version") || j["version"] != kVersion)
    throw DataError("checkpoint version mismatch (want itx-mlp-v1)");
  Mlp net;
  net.layer_dims = j.at("layer_dims").get<std::vector<int>>();
  net.act = activation_from_tag(j.at("activation").get<std::string>());
  if (head) *head = j.value("output_head", "");
  const auto& weights = j.at("weights");
  const auto& biases = j.at("biases");
  if (weights.size() + 1 != net.layer_dims.size() || biases.size() != weights.size())
    throw DataError("checkpoint layer count mismatch");
  for (std::size_t l = 0; l + 1 < net.layer_dims.size(); ++l) {
    Tensor w(net.layer_dims[l], net.layer_dims[l + 1]);
    Tensor b(1, net.layer_dims[l + 1]);
    const auto wv = weights[l].get<std::vector<double>>();
    const auto bv = biases[l].get<std::vector<double>>();
    if (wv.size() != w.size() || bv.size() != b.size())
      throw DataError("checkpoint parameter size mismatch");
    w.v = wv;
    b.v = bv;
    net.weights.push_back(std::move(w));
    net.biases.push_back(std::move(b));
  }
  return net;
}

void save_mlp(const Mlp& net, const std::string& path, const std::string& head) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << mlp_to_json(net, head) << "\n";
  if (!out) throw IoError("short write to " + path);
}

Mlp load_mlp(const std::string& path, std::string* head) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return mlp_from_json(ss.str(), head);
}

void save_nonpos_head(const NonPosHead& net, const std::string& path) {
  save_mlp(net.inner, path, "neg_abs");
}

NonPosHead load_nonpos_head(const std::string& path) {
  std::string head;
  NonPosHead h;
  h.inner = load_mlp(path, &head);
  if (head != "neg_abs") throw DataError("checkpoint is not a potential head");
  if (h.inner.out_dim() != 1) throw DataError("potential head must be scalar");
  return h;
}

}  // namespace itx
