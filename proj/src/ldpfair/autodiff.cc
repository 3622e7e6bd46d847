// Copyright 2026 The ldpfair Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ldpfair/autodiff.h"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <unordered_set>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

namespace ldpfair::ad {
namespace {

std::string ShapeOf(const Matrix& m) {
  return absl::StrFormat("%dx%d", m.rows(), m.cols());
}

[[noreturn]] void ShapeError(const char* op, const Matrix& a, const Matrix& b) {
  throw std::invalid_argument(
      absl::StrCat(op, ": shape mismatch ", ShapeOf(a), " vs ", ShapeOf(b)));
}

enum class Broadcast { kSame, kScalar, kRow };

Broadcast BroadcastKind(const char* op, const Matrix& a, const Matrix& b) {
  if (a.rows() == b.rows() && a.cols() == b.cols()) return Broadcast::kSame;
  if (b.rows() == 1 && b.cols() == 1) return Broadcast::kScalar;
  if (b.rows() == 1 && b.cols() == a.cols()) return Broadcast::kRow;
  ShapeError(op, a, b);
}

Matrix Expand(const Matrix& b, Broadcast kind, Eigen::Index rows,
              Eigen::Index cols) {
  switch (kind) {
    case Broadcast::kSame:
      return b;
    case Broadcast::kScalar:
      return Matrix::Constant(rows, cols, b(0, 0));
    case Broadcast::kRow:
      return b.replicate(rows, 1);
  }
  return b;
}

Matrix Reduce(const Matrix& g, Broadcast kind) {
  switch (kind) {
    case Broadcast::kSame:
      return g;
    case Broadcast::kScalar:
      return Matrix::Constant(1, 1, g.sum());
    case Broadcast::kRow:
      return g.colwise().sum();
  }
  return g;
}

// Unary elementwise op with derivative expressed through input and output.
template <typename F, typename D>
Tensor Unary(const Tensor& a, F f, D dfdx) {
  Matrix out = a.value().unaryExpr(f);
  return MakeResult(out, {a}, [dfdx](Node& self) {
    Node& in = *self.parents[0];
    if (!in.requires_grad) return;
    in.AccumulateGrad(self.grad.cwiseProduct(
        in.value.binaryExpr(self.value, dfdx)));
  });
}

}  // namespace

void Node::AccumulateGrad(const Matrix& g) {
  if (grad.size() == 0) {
    grad = g;
  } else {
    grad += g;
  }
}

Tensor Tensor::Constant(Matrix value) {
  auto n = std::make_shared<Node>();
  n->value = std::move(value);
  return Tensor(std::move(n));
}

Tensor Tensor::Scalar(double v) { return Constant(Matrix::Constant(1, 1, v)); }

Tensor Tensor::Parameter(Matrix value) {
  auto n = std::make_shared<Node>();
  n->value = std::move(value);
  n->requires_grad = true;
  return Tensor(std::move(n));
}

Matrix Tensor::grad() const {
  if (node_->grad.size() == 0) {
    return Matrix::Zero(node_->value.rows(), node_->value.cols());
  }
  return node_->grad;
}

double Tensor::item() const {
  if (rows() != 1 || cols() != 1) {
    throw std::invalid_argument(
        absl::StrCat("item: tensor is ", ShapeOf(value()), ", not 1x1"));
  }
  return value()(0, 0);
}

Tensor MakeResult(Matrix value, std::vector<Tensor> parents,
                  std::function<void(Node&)> backward) {
  auto n = std::make_shared<Node>();
  n->value = std::move(value);
  for (const Tensor& p : parents) {
    n->requires_grad = n->requires_grad || p.requires_grad();
  }
  if (n->requires_grad) {
    n->parents.reserve(parents.size());
    for (const Tensor& p : parents) n->parents.push_back(p.node());
    n->backward = std::move(backward);
  }
  return Tensor(std::move(n));
}

void Backward(const Tensor& loss) {
  if (loss.rows() != 1 || loss.cols() != 1) {
    throw std::invalid_argument(
        absl::StrCat("backward: loss must be 1x1, got ", ShapeOf(loss.value())));
  }
  if (!loss.requires_grad()) return;

  // Iterative post-order DFS yields a topological order.
  std::vector<Node*> order;
  std::unordered_set<Node*> seen;
  std::vector<std::pair<Node*, std::size_t>> stack;
  stack.emplace_back(loss.node().get(), 0);
  seen.insert(loss.node().get());
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < node->parents.size()) {
      Node* p = node->parents[next++].get();
      if (p->requires_grad && seen.insert(p).second) stack.emplace_back(p, 0);
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }

  // Interior gradients are scratch space for this sweep only.
  for (Node* n : order) {
    if (n->backward) n->grad.resize(0, 0);
  }
  loss.node()->AccumulateGrad(Matrix::Ones(1, 1));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Node* n = *it;
    if (n->backward && n->grad.size() != 0) n->backward(*n);
  }
}

Tensor MatMul(const Tensor& a, const Tensor& b) {
  if (a.cols() != b.rows()) ShapeError("matmul", a.value(), b.value());
  return MakeResult(a.value() * b.value(), {a, b}, [](Node& self) {
    Node& l = *self.parents[0];
    Node& r = *self.parents[1];
    if (l.requires_grad) l.AccumulateGrad(self.grad * r.value.transpose());
    if (r.requires_grad) r.AccumulateGrad(l.value.transpose() * self.grad);
  });
}

Tensor Add(const Tensor& a, const Tensor& b) {
  const Broadcast kind = BroadcastKind("add", a.value(), b.value());
  Matrix out = a.value() + Expand(b.value(), kind, a.rows(), a.cols());
  return MakeResult(std::move(out), {a, b}, [kind](Node& self) {
    if (self.parents[0]->requires_grad) self.parents[0]->AccumulateGrad(self.grad);
    if (self.parents[1]->requires_grad)
      self.parents[1]->AccumulateGrad(Reduce(self.grad, kind));
  });
}

Tensor Sub(const Tensor& a, const Tensor& b) {
  const Broadcast kind = BroadcastKind("sub", a.value(), b.value());
  Matrix out = a.value() - Expand(b.value(), kind, a.rows(), a.cols());
  return MakeResult(std::move(out), {a, b}, [kind](Node& self) {
    if (self.parents[0]->requires_grad) self.parents[0]->AccumulateGrad(self.grad);
    if (self.parents[1]->requires_grad)
      self.parents[1]->AccumulateGrad(-Reduce(self.grad, kind));
  });
}

Tensor Mul(const Tensor& a, const Tensor& b) {
  const Broadcast kind = BroadcastKind("mul", a.value(), b.value());
  Matrix bx = Expand(b.value(), kind, a.rows(), a.cols());
  Matrix out = a.value().cwiseProduct(bx);
  return MakeResult(std::move(out), {a, b}, [kind, bx](Node& self) {
    Node& l = *self.parents[0];
    Node& r = *self.parents[1];
    if (l.requires_grad) l.AccumulateGrad(self.grad.cwiseProduct(bx));
    if (r.requires_grad)
      r.AccumulateGrad(Reduce(self.grad.cwiseProduct(l.value), kind));
  });
}

Tensor Scale(const Tensor& a, double c) {
  return MakeResult(a.value() * c, {a}, [c](Node& self) {
    if (self.parents[0]->requires_grad)
      self.parents[0]->AccumulateGrad(self.grad * c);
  });
}

Tensor Neg(const Tensor& a) { return Scale(a, -1.0); }

Tensor Square(const Tensor& a) {
  return Unary(
      a, [](double x) { return x * x; },
      [](double x, double) { return 2.0 * x; });
}

Tensor Exp(const Tensor& a) {
  return Unary(
      a, [](double x) { return std::exp(x); },
      [](double, double y) { return y; });
}

Tensor Log(const Tensor& a) {
  if ((a.value().array() <= 0.0).any()) {
    throw std::domain_error("log: non-positive input");
  }
  return Unary(
      a, [](double x) { return std::log(x); },
      [](double x, double) { return 1.0 / x; });
}

Tensor NegXLogX(const Tensor& a) {
  if ((a.value().array() < 0.0).any()) {
    throw std::domain_error("neg_x_log_x: negative input");
  }
  return Unary(
      a, [](double p) { return p > 0.0 ? -p * std::log(p) : 0.0; },
      [](double p, double) { return p > 0.0 ? -(std::log(p) + 1.0) : 0.0; });
}

Tensor Relu(const Tensor& a) {
  return Unary(
      a, [](double x) { return x > 0.0 ? x : 0.0; },
      [](double x, double) { return x > 0.0 ? 1.0 : 0.0; });
}

Tensor Relu6(const Tensor& a) {
  return Unary(
      a, [](double x) { return std::min(std::max(x, 0.0), 6.0); },
      [](double x, double) { return (x > 0.0 && x < 6.0) ? 1.0 : 0.0; });
}

Tensor Tanh(const Tensor& a) {
  return Unary(
      a, [](double x) { return std::tanh(x); },
      [](double, double y) { return 1.0 - y * y; });
}

Tensor Sigmoid(const Tensor& a) {
  return Unary(
      a,
      [](double x) {
        if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
        const double e = std::exp(x);
        return e / (1.0 + e);
      },
      [](double, double y) { return y * (1.0 - y); });
}

Tensor Clamp(const Tensor& a, double lo, double hi) {
  return Unary(
      a, [lo, hi](double x) { return std::min(std::max(x, lo), hi); },
      [lo, hi](double x, double) { return (x > lo && x < hi) ? 1.0 : 0.0; });
}

Tensor StopGradient(const Tensor& a) { return Tensor::Constant(a.value()); }

Tensor SoftmaxRows(const Tensor& a) {
  Matrix shifted = a.value().colwise() - a.value().rowwise().maxCoeff();
  Matrix e = shifted.array().exp();
  Matrix y = e.array().colwise() / e.rowwise().sum().array();
  return MakeResult(y, {a}, [](Node& self) {
    Node& in = *self.parents[0];
    if (!in.requires_grad) return;
    const Matrix& y = self.value;
    Eigen::VectorXd dot = self.grad.cwiseProduct(y).rowwise().sum();
    Matrix g = y.array() * (self.grad.colwise() - dot).array();
    in.AccumulateGrad(g);
  });
}

Tensor LogSoftmaxRows(const Tensor& a) {
  Eigen::VectorXd mx = a.value().rowwise().maxCoeff();
  Matrix shifted = a.value().colwise() - mx;
  Eigen::VectorXd lse =
      shifted.array().exp().rowwise().sum().log().matrix();
  Matrix y = shifted.colwise() - lse;
  return MakeResult(y, {a}, [](Node& self) {
    Node& in = *self.parents[0];
    if (!in.requires_grad) return;
    Matrix soft = self.value.array().exp();
    Eigen::VectorXd gsum = self.grad.rowwise().sum();
    Matrix g = self.grad - Matrix(soft.array().colwise() * gsum.array());
    in.AccumulateGrad(g);
  });
}

Tensor Sum(const Tensor& a) {
  return MakeResult(Matrix::Constant(1, 1, a.value().sum()), {a},
                    [](Node& self) {
                      Node& in = *self.parents[0];
                      if (!in.requires_grad) return;
                      in.AccumulateGrad(Matrix::Constant(
                          in.value.rows(), in.value.cols(), self.grad(0, 0)));
                    });
}

Tensor Mean(const Tensor& a) {
  const double n = static_cast<double>(a.value().size());
  if (n == 0) throw std::invalid_argument("mean: empty tensor");
  return Scale(Sum(a), 1.0 / n);
}

Tensor ColSums(const Tensor& a) {
  return MakeResult(a.value().colwise().sum(), {a}, [](Node& self) {
    Node& in = *self.parents[0];
    if (!in.requires_grad) return;
    in.AccumulateGrad(self.grad.replicate(in.value.rows(), 1));
  });
}

Tensor RowSums(const Tensor& a) {
  return MakeResult(a.value().rowwise().sum(), {a}, [](Node& self) {
    Node& in = *self.parents[0];
    if (!in.requires_grad) return;
    in.AccumulateGrad(self.grad.replicate(1, in.value.cols()));
  });
}

Tensor LogMeanExp(const Tensor& a) {
  const double n = static_cast<double>(a.value().size());
  if (n == 0) throw std::invalid_argument("log_mean_exp: empty tensor");
  const double mx = a.value().maxCoeff();
  const double v = mx + std::log((a.value().array() - mx).exp().sum() / n);
  return MakeResult(Matrix::Constant(1, 1, v), {a}, [](Node& self) {
    Node& in = *self.parents[0];
    if (!in.requires_grad) return;
    const double v = self.value(0, 0);
    const double n = static_cast<double>(in.value.size());
    Matrix w = ((in.value.array() - v).exp() / n).matrix();
    in.AccumulateGrad(w * self.grad(0, 0));
  });
}

Tensor ConcatCols(const std::vector<Tensor>& parts) {
  if (parts.empty()) throw std::invalid_argument("concat: no inputs");
  const Eigen::Index rows = parts[0].rows();
  Eigen::Index cols = 0;
  for (const Tensor& p : parts) {
    if (p.rows() != rows) ShapeError("concat", parts[0].value(), p.value());
    cols += p.cols();
  }
  Matrix out(rows, cols);
  std::vector<Eigen::Index> offsets;
  Eigen::Index off = 0;
  for (const Tensor& p : parts) {
    out.middleCols(off, p.cols()) = p.value();
    offsets.push_back(off);
    off += p.cols();
  }
  return MakeResult(std::move(out), parts, [offsets](Node& self) {
    for (std::size_t i = 0; i < self.parents.size(); ++i) {
      Node& in = *self.parents[i];
      if (!in.requires_grad) continue;
      in.AccumulateGrad(self.grad.middleCols(offsets[i], in.value.cols()));
    }
  });
}

Tensor SliceCols(const Tensor& a, Eigen::Index start, Eigen::Index width) {
  if (start < 0 || width < 0 || start + width > a.cols()) {
    throw std::invalid_argument(absl::StrFormat(
        "slice: columns [%d, %d) out of range for %s", start, start + width,
        ShapeOf(a.value())));
  }
  return MakeResult(a.value().middleCols(start, width), {a},
                    [start, width](Node& self) {
                      Node& in = *self.parents[0];
                      if (!in.requires_grad) return;
                      Matrix g = Matrix::Zero(in.value.rows(), in.value.cols());
                      g.middleCols(start, width) = self.grad;
                      in.AccumulateGrad(g);
                    });
}

Tensor GatherRows(const Tensor& table, const std::vector<int>& indices) {
  Matrix out(static_cast<Eigen::Index>(indices.size()), table.cols());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 0 || indices[i] >= table.rows()) {
      throw std::invalid_argument(
          absl::StrCat("gather: index ", indices[i], " out of range"));
    }
    out.row(i) = table.value().row(indices[i]);
  }
  return MakeResult(std::move(out), {table}, [indices](Node& self) {
    Node& in = *self.parents[0];
    if (!in.requires_grad) return;
    Matrix g = Matrix::Zero(in.value.rows(), in.value.cols());
    for (std::size_t i = 0; i < indices.size(); ++i)
      g.row(indices[i]) += self.grad.row(i);
    in.AccumulateGrad(g);
  });
}

Tensor PickPerRow(const Tensor& a, const std::vector<int>& indices) {
  if (static_cast<Eigen::Index>(indices.size()) != a.rows()) {
    throw std::invalid_argument("pick: one index per row required");
  }
  Matrix out(a.rows(), 1);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    if (indices[i] < 0 || indices[i] >= a.cols()) {
      throw std::invalid_argument(
          absl::StrCat("pick: index ", indices[i], " out of range"));
    }
    out(i, 0) = a.value()(i, indices[i]);
  }
  return MakeResult(std::move(out), {a}, [indices](Node& self) {
    Node& in = *self.parents[0];
    if (!in.requires_grad) return;
    Matrix g = Matrix::Zero(in.value.rows(), in.value.cols());
    for (std::size_t i = 0; i < indices.size(); ++i)
      g(i, indices[i]) = self.grad(i, 0);
    in.AccumulateGrad(g);
  });
}

std::string ActivationName(Activation a) {
  switch (a) {
    case Activation::kIdentity: return "identity";
    case Activation::kRelu: return "relu";
    case Activation::kRelu6: return "relu6";
    case Activation::kTanh: return "tanh";
    case Activation::kSigmoid: return "sigmoid";
    case Activation::kSoftmax: return "softmax";
  }
  return "identity";
}

absl::StatusOr<Activation> ParseActivation(const std::string& name) {
  for (Activation a : {Activation::kIdentity, Activation::kRelu,
                       Activation::kRelu6, Activation::kTanh,
                       Activation::kSigmoid, Activation::kSoftmax}) {
    if (ActivationName(a) == name) return a;
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown activation ", name));
}

Tensor Apply(Activation act, const Tensor& x) {
  switch (act) {
    case Activation::kIdentity: return x;
    case Activation::kRelu: return Relu(x);
    case Activation::kRelu6: return Relu6(x);
    case Activation::kTanh: return Tanh(x);
    case Activation::kSigmoid: return Sigmoid(x);
    case Activation::kSoftmax: return SoftmaxRows(x);
  }
  return x;
}

MlpSpec MlpSpec::Make(int input, const std::vector<int>& hidden, int output,
                      Activation hidden_act, Activation output_act) {
  MlpSpec spec;
  int prev = input;
  for (int h : hidden) {
    spec.layers.push_back({prev, h, hidden_act});
    prev = h;
  }
  spec.layers.push_back({prev, output, output_act});
  return spec;
}

Mlp::Mlp(MlpSpec spec, std::mt19937_64& rng) : spec_(std::move(spec)) {
  if (spec_.layers.empty()) throw std::invalid_argument("mlp: no layers");
  for (std::size_t i = 0; i < spec_.layers.size(); ++i) {
    const LayerSpec& l = spec_.layers[i];
    if (l.in <= 0 || l.out <= 0) {
      throw std::invalid_argument("mlp: layer widths must be positive");
    }
    if (i > 0 && spec_.layers[i - 1].out != l.in) {
      throw std::invalid_argument("mlp: consecutive layer widths disagree");
    }
    const double limit = std::sqrt(6.0 / (l.in + l.out));
    std::uniform_real_distribution<double> unif(-limit, limit);
    Matrix w(l.in, l.out);
    for (Eigen::Index c = 0; c < w.cols(); ++c)
      for (Eigen::Index r = 0; r < w.rows(); ++r) w(r, c) = unif(rng);
    weights_.push_back(Tensor::Parameter(std::move(w)));
    biases_.push_back(Tensor::Parameter(Matrix::Zero(1, l.out)));
  }
}

Tensor Mlp::Forward(const Tensor& x) const {
  Tensor h = x;
  for (std::size_t i = 0; i < spec_.layers.size(); ++i) {
    h = Apply(spec_.layers[i].activation,
              Add(MatMul(h, weights_[i]), biases_[i]));
  }
  return h;
}

std::vector<Tensor> Mlp::Parameters() const {
  std::vector<Tensor> out;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    out.push_back(weights_[i]);
    out.push_back(biases_[i]);
  }
  return out;
}

Mlp Mlp::Clone() const {
  Mlp m;
  m.spec_ = spec_;
  for (const Tensor& w : weights_) m.weights_.push_back(Tensor::Parameter(w.value()));
  for (const Tensor& b : biases_) m.biases_.push_back(Tensor::Parameter(b.value()));
  return m;
}

void WriteMatrix(std::ostream& out, const Matrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out << (c ? " " : "") << absl::StrFormat("%.17g", m(r, c));
    }
    out << '\n';
  }
}

absl::StatusOr<Matrix> ReadMatrix(std::istream& in) {
  Eigen::Index rows = -1, cols = -1;
  if (!(in >> rows >> cols) || rows < 0 || cols < 0) {
    return absl::DataLossError("checkpoint: bad matrix header");
  }
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c)
      if (!(in >> m(r, c))) {
        return absl::DataLossError("checkpoint: truncated matrix");
      }
  return m;
}

void Mlp::Write(std::ostream& out, const std::string& name) const {
  out << "mlp " << name << ' ' << spec_.layers.size() << '\n';
  for (std::size_t i = 0; i < spec_.layers.size(); ++i) {
    const LayerSpec& l = spec_.layers[i];
    out << "layer " << l.in << ' ' << l.out << ' ' << ActivationName(l.activation)
        << '\n';
    WriteMatrix(out, weights_[i].value());
    WriteMatrix(out, biases_[i].value());
  }
}

absl::StatusOr<Mlp> Mlp::Read(std::istream& in, const std::string& name) {
  std::string tag, got_name;
  std::size_t n = 0;
  if (!(in >> tag >> got_name >> n) || tag != "mlp" || got_name != name) {
    return absl::DataLossError(
        absl::StrCat("checkpoint: expected mlp block '", name, "'"));
  }
  Mlp m;
  for (std::size_t i = 0; i < n; ++i) {
    LayerSpec l;
    std::string act;
    if (!(in >> tag >> l.in >> l.out >> act) || tag != "layer") {
      return absl::DataLossError("checkpoint: bad layer header");
    }
    auto parsed = ParseActivation(act);
    if (!parsed.ok()) return parsed.status();
    l.activation = *parsed;
    auto w = ReadMatrix(in);
    if (!w.ok()) return w.status();
    auto b = ReadMatrix(in);
    if (!b.ok()) return b.status();
    if (w->rows() != l.in || w->cols() != l.out || b->rows() != 1 ||
        b->cols() != l.out) {
      return absl::DataLossError("checkpoint: layer shape mismatch");
    }
    m.spec_.layers.push_back(l);
    m.weights_.push_back(Tensor::Parameter(*std::move(w)));
    m.biases_.push_back(Tensor::Parameter(*std::move(b)));
  }
  if (m.spec_.layers.empty()) {
    return absl::DataLossError("checkpoint: mlp without layers");
  }
  return m;
}

void AdamStep(std::vector<Matrix*> params, const std::vector<Matrix>& grads,
              AdamState& state, const AdamOptions& opts) {
  if (params.size() != grads.size()) {
    throw std::invalid_argument("adam: parameter/gradient count mismatch");
  }
  if (state.m.empty()) {
    for (const Matrix* p : params) {
      state.m.push_back(Matrix::Zero(p->rows(), p->cols()));
      state.v.push_back(Matrix::Zero(p->rows(), p->cols()));
    }
  }
  if (state.m.size() != params.size()) {
    throw std::invalid_argument("adam: state does not match parameters");
  }
  ++state.step;
  const double c1 = 1.0 - std::pow(opts.beta1, state.step);
  const double c2 = 1.0 - std::pow(opts.beta2, state.step);
  for (std::size_t i = 0; i < params.size(); ++i) {
    Matrix& p = *params[i];
    const Matrix& g = grads[i];
    if (g.rows() != p.rows() || g.cols() != p.cols() ||
        state.m[i].rows() != p.rows() || state.m[i].cols() != p.cols()) {
      ShapeError("adam", p, g);
    }
    state.m[i] = opts.beta1 * state.m[i] + (1.0 - opts.beta1) * g;
    state.v[i] = opts.beta2 * state.v[i] +
                 (1.0 - opts.beta2) * g.cwiseProduct(g);
    p.array() -= opts.learning_rate * (state.m[i].array() / c1) /
                 ((state.v[i].array() / c2).sqrt() + opts.eps);
  }
}

Adam::Adam(std::vector<Tensor> params, AdamOptions opts)
    : params_(std::move(params)), opts_(opts) {}

void Adam::Step() {
  std::vector<Matrix*> values;
  std::vector<Matrix> grads;
  values.reserve(params_.size());
  grads.reserve(params_.size());
  for (Tensor& p : params_) {
    values.push_back(&p.mutable_value());
    grads.push_back(p.grad());
  }
  AdamStep(values, grads, state_, opts_);
  ZeroGrad();
}

void Adam::ZeroGrad() {
  for (Tensor& p : params_) p.ZeroGrad();
}

}  // namespace ldpfair::ad
