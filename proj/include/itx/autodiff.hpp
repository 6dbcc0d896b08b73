#pragma once

#include <cstdint>
#include <vector>

#include "itx/measures.hpp"

// Minimal reverse-mode automatic differentiation on a tensor-level tape.
// Nodes are appended in topological order; backward() walks them once in
// strict reverse. The op set is exactly what the saddle-point losses need:
// matmul, bias broadcast, leaky relu, abs, neg, sub, mul, mean, scale.
namespace itx {

struct Tensor {
  int rows = 0;
  int cols = 0;
  std::vector<double> v;  // row-major

  Tensor() = default;
  Tensor(int r, int c, double fill = 0.0)
      : rows(r), cols(c), v(static_cast<std::size_t>(r) * c, fill) {}

  double& at(int r, int c) { return v[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return v[static_cast<std::size_t>(r) * cols + c]; }
  std::size_t size() const { return v.size(); }
  bool same_shape(const Tensor& o) const { return rows == o.rows && cols == o.cols; }

  static Tensor from_points(const std::vector<Point>& pts);
  std::vector<Point> to_points() const;
};

using NodeId = int;

class Tape {
 public:
  NodeId leaf(Tensor value);

  NodeId matmul(NodeId a, NodeId b);             // [m,k] x [k,n] -> [m,n]
  NodeId add_bias(NodeId a, NodeId bias);        // bias [1,n] broadcast over rows
  NodeId leaky_relu(NodeId a, double slope);     // slope 0 gives plain relu
  NodeId abs(NodeId a);                          // d|x| at 0 taken as 0
  NodeId neg(NodeId a);
  NodeId sub(NodeId a, NodeId b);                // same shape
  NodeId mul(NodeId a, NodeId b);                // elementwise, same shape
  NodeId mean_all(NodeId a);                     // -> [1,1]
  NodeId scale(NodeId a, double k);

  const Tensor& value(NodeId id) const { return nodes_[id].value; }
  const Tensor& grad(NodeId id) const { return nodes_[id].grad; }

  // Seeds the scalar loss with 1 and accumulates gradients into every
  // node. Throws NonScalarLoss unless value(loss) is 1x1.
  void backward(NodeId loss);

  void reset() { nodes_.clear(); }
  int size() const { return static_cast<int>(nodes_.size()); }
  double scalar(NodeId id) const { return nodes_[id].value.v[0]; }

 private:
  enum class Op : std::uint8_t {
    Leaf,
    MatMul,
    AddBias,
    LeakyRelu,
    Abs,
    Neg,
    Sub,
    Mul,
    MeanAll,
    Scale,
  };

  struct Node {
    Op op;
    NodeId a = -1;
    NodeId b = -1;
    double aux = 0.0;
    Tensor value;
    Tensor grad;
  };

  NodeId push(Node n);

  std::vector<Node> nodes_;
};

}  // namespace itx
