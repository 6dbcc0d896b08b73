#include "itx/autodiff.hpp"

#include <cmath>
#include <string>

#include "itx/errors.hpp"
#include "itx/kernels.hpp"

namespace itx {

Tensor Tensor::from_points(const std::vector<Point>& pts) {
  if (pts.empty()) throw EmptyInput("Tensor::from_points");
  Tensor t(static_cast<int>(pts.size()), static_cast<int>(pts.front().size()));
  for (int i = 0; i < t.rows; ++i) {
    if (static_cast<int>(pts[i].size()) != t.cols)
      throw DimensionMismatch("Tensor::from_points: ragged point list");
    for (int j = 0; j < t.cols; ++j) t.at(i, j) = pts[i][j];
  }
  return t;
}

std::vector<Point> Tensor::to_points() const {
  std::vector<Point> pts(rows, Point(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) pts[i][j] = at(i, j);
  return pts;
}

NodeId Tape::push(Node n) {
  nodes_.push_back(std::move(n));
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId Tape::leaf(Tensor value) {
  Node n;
  n.op = Op::Leaf;
  n.value = std::move(value);
  return push(std::move(n));
}

NodeId Tape::matmul(NodeId a, NodeId b) {
  const Tensor& ta = nodes_[a].value;
  const Tensor& tb = nodes_[b].value;
  if (ta.cols != tb.rows)
    throw ShapeMismatch("matmul " + std::to_string(ta.cols) + " vs " +
                        std::to_string(tb.rows));
  Node n;
  n.op = Op::MatMul;
  n.a = a;
  n.b = b;
  n.value = Tensor(ta.rows, tb.cols);
  kernels::matmul_nn(ta.v.data(), tb.v.data(), n.value.v.data(), ta.rows, ta.cols, tb.cols);
  return push(std::move(n));
}

NodeId Tape::add_bias(NodeId a, NodeId bias) {
  const Tensor& ta = nodes_[a].value;
  const Tensor& tb = nodes_[bias].value;
  if (tb.rows != 1 || tb.cols != ta.cols) throw ShapeMismatch("add_bias");
  Node n;
  n.op = Op::AddBias;
  n.a = a;
  n.b = bias;
  n.value = ta;
  for (int i = 0; i < ta.rows; ++i)
    for (int j = 0; j < ta.cols; ++j) n.value.at(i, j) += tb.v[j];
  return push(std::move(n));
}

NodeId Tape::leaky_relu(NodeId a, double slope) {
  Node n;
  n.op = Op::LeakyRelu;
  n.a = a;
  n.aux = slope;
  n.value = nodes_[a].value;
  for (double& x : n.value.v)
    if (x < 0.0) x *= slope;
  return push(std::move(n));
}

NodeId Tape::abs(NodeId a) {
  Node n;
  n.op = Op::Abs;
  n.a = a;
  n.value = nodes_[a].value;
  for (double& x : n.value.v) x = std::fabs(x);
  return push(std::move(n));
}

NodeId Tape::neg(NodeId a) {
  Node n;
  n.op = Op::Neg;
  n.a = a;
  n.value = nodes_[a].value;
  for (double& x : n.value.v) x = -x;
  return push(std::move(n));
}

NodeId Tape::sub(NodeId a, NodeId b) {
  const Tensor& ta = nodes_[a].value;
  const Tensor& tb = nodes_[b].value;
  if (!ta.same_shape(tb)) throw ShapeMismatch("sub");
  Node n;
  n.op = Op::Sub;
  n.a = a;
  n.b = b;
  n.value = ta;
  for (std::size_t t = 0; t < tb.size(); ++t) n.value.v[t] -= tb.v[t];
  return push(std::move(n));
}

NodeId Tape::mul(NodeId a, NodeId b) {
  const Tensor& ta = nodes_[a].value;
  const Tensor& tb = nodes_[b].value;
  if (!ta.same_shape(tb)) throw ShapeMismatch("mul");
  Node n;
  n.op = Op::Mul;
  n.a = a;
  n.b = b;
  n.value = ta;
  for (std::size_t t = 0; t < tb.size(); ++t) n.value.v[t] *= tb.v[t];
  return push(std::move(n));
}

NodeId Tape::mean_all(NodeId a) {
  const Tensor& ta = nodes_[a].value;
  if (ta.size() == 0) throw ShapeMismatch("mean_all of empty tensor");
  Node n;
  n.op = Op::MeanAll;
  n.a = a;
  n.value = Tensor(1, 1);
  double s = 0.0;
  for (double x : ta.v) s += x;
  n.value.v[0] = s / static_cast<double>(ta.size());
  return push(std::move(n));
}

NodeId Tape::scale(NodeId a, double k) {
  Node n;
  n.op = Op::Scale;
  n.a = a;
  n.aux = k;
  n.value = nodes_[a].value;
  for (double& x : n.value.v) x *= k;
  return push(std::move(n));
}

void Tape::backward(NodeId loss) {
  Node& top = nodes_[loss];
  if (top.value.rows != 1 || top.value.cols != 1)
    throw NonScalarLoss(std::to_string(top.value.rows) + "x" +
                        std::to_string(top.value.cols));

  for (Node& n : nodes_) {
    n.grad = Tensor(n.value.rows, n.value.cols);
  }
  top.grad.v[0] = 1.0;

  for (NodeId id = loss; id >= 0; --id) {
    Node& n = nodes_[id];
    const Tensor& g = n.grad;
    switch (n.op) {
      case Op::Leaf:
        break;
      case Op::MatMul: {
        const Tensor& va = nodes_[n.a].value;
        const Tensor& vb = nodes_[n.b].value;
        Tensor da(va.rows, va.cols), db(vb.rows, vb.cols);
        kernels::matmul_nt(g.v.data(), vb.v.data(), da.v.data(), g.rows, g.cols, vb.rows);
        kernels::matmul_tn(va.v.data(), g.v.data(), db.v.data(), va.rows, va.cols, g.cols);
        Tensor& ga = nodes_[n.a].grad;
        for (std::size_t t = 0; t < ga.size(); ++t) ga.v[t] += da.v[t];
        Tensor& gb = nodes_[n.b].grad;
        for (std::size_t t = 0; t < gb.size(); ++t) gb.v[t] += db.v[t];
        break;
      }
      case Op::AddBias: {
        Tensor& ga = nodes_[n.a].grad;
        for (std::size_t t = 0; t < ga.size(); ++t) ga.v[t] += g.v[t];
        Tensor& gb = nodes_[n.b].grad;
        for (int i = 0; i < g.rows; ++i)
          for (int j = 0; j < g.cols; ++j) gb.v[j] += g.at(i, j);
        break;
      }
      case Op::LeakyRelu: {
        Tensor& ga = nodes_[n.a].grad;
        const Tensor& va = nodes_[n.a].value;
        for (std::size_t t = 0; t < ga.size(); ++t)
          ga.v[t] += g.v[t] * (va.v[t] > 0.0 ? 1.0 : n.aux);
        break;
      }
      case Op::Abs: {
        Tensor& ga = nodes_[n.a].grad;
        const Tensor& va = nodes_[n.a].value;
        for (std::size_t t = 0; t < ga.size(); ++t) {
          const double s = va.v[t] > 0.0 ? 1.0 : (va.v[t] < 0.0 ? -1.0 : 0.0);
          ga.v[t] += g.v[t] * s;
        }
        break;
      }
      case Op::Neg: {
        Tensor& ga = nodes_[n.a].grad;
        for (std::size_t t = 0; t < ga.size(); ++t) ga.v[t] -= g.v[t];
        break;
      }
      case Op::Sub: {
        Tensor& ga = nodes_[n.a].grad;
        for (std::size_t t = 0; t < ga.size(); ++t) ga.v[t] += g.v[t];
        Tensor& gb = nodes_[n.b].grad;
        for (std::size_t t = 0; t < gb.size(); ++t) gb.v[t] -= g.v[t];
        break;
      }
      case Op::Mul: {
        Tensor& ga = nodes_[n.a].grad;
        Tensor& gb = nodes_[n.b].grad;
        const Tensor& va = nodes_[n.a].value;
        const Tensor& vb = nodes_[n.b].value;
        for (std::size_t t = 0; t < ga.size(); ++t) {
          ga.v[t] += g.v[t] * vb.v[t];
          gb.v[t] += g.v[t] * va.v[t];
        }
        break;
      }
      case Op::MeanAll: {
        Tensor& ga = nodes_[n.a].grad;
        const double gv = g.v[0] / static_cast<double>(ga.size());
        for (double& x : ga.v) x += gv;
        break;
      }
      case Op::Scale: {
        Tensor& ga = nodes_[n.a].grad;
        for (std::size_t t = 0; t < ga.size(); ++t) ga.v[t] += n.aux * g.v[t];
        break;
      }
    }
  }
}

}  // namespace itx
