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

// Minimal define-by-run reverse-mode automatic differentiation over dense
// double-precision matrices, plus the MLP and Adam pieces built on it.
//
// A Tensor is a cheap handle to a graph node. Every op allocates a new node
// that remembers its parents and how to push gradients back to them; the
// graph is rebuilt for each step and freed when the last handle goes away.
// Leaves created with Tensor::Parameter() accumulate gradients across
// Backward() calls until ZeroGrad().
//
// Shape errors and log of non-positive values throw std::invalid_argument /
// std::domain_error: they are programming errors, not data conditions.

#ifndef LDPFAIR_AUTODIFF_H_
#define LDPFAIR_AUTODIFF_H_

#include <functional>
#include <iosfwd>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "Eigen/Dense"
#include "absl/status/statusor.h"

namespace ldpfair::ad {

using Matrix = Eigen::MatrixXd;

struct Node {
  Matrix value;
  Matrix grad;  // empty until first accumulation
  bool requires_grad = false;
  std::vector<std::shared_ptr<Node>> parents;
  std::function<void(Node&)> backward;

  void AccumulateGrad(const Matrix& g);
};

class Tensor {
 public:
  Tensor() = default;

  static Tensor Constant(Matrix value);
  static Tensor Scalar(double v);
  static Tensor Parameter(Matrix value);

  const Matrix& value() const { return node_->value; }
  // For optimizers and checkpoint loading; never call on interior nodes.
  Matrix& mutable_value() { return node_->value; }
  // Zero matrix of the value's shape when no gradient has reached this node.
  Matrix grad() const;
  void ZeroGrad() { node_->grad.resize(0, 0); }

  Eigen::Index rows() const { return node_->value.rows(); }
  Eigen::Index cols() const { return node_->value.cols(); }
  bool requires_grad() const { return node_->requires_grad; }
  bool defined() const { return node_ != nullptr; }
  double item() const;

  const std::shared_ptr<Node>& node() const { return node_; }

 private:
  explicit Tensor(std::shared_ptr<Node> n) : node_(std::move(n)) {}
  friend Tensor MakeResult(Matrix value, std::vector<Tensor> parents,
                           std::function<void(Node&)> backward);
  std::shared_ptr<Node> node_;
};

// Builds an op result. `backward` receives the result node (with its grad
// populated) and must accumulate into the parents that require gradients.
Tensor MakeResult(Matrix value, std::vector<Tensor> parents,
                  std::function<void(Node&)> backward);

// Reverse sweep from a 1x1 loss. Throws std::invalid_argument otherwise.
void Backward(const Tensor& loss);

// ---- ops ----
Tensor MatMul(const Tensor& a, const Tensor& b);
// Elementwise; `b` may also be 1x1 (scalar) or 1 x a.cols() (row broadcast).
Tensor Add(const Tensor& a, const Tensor& b);
Tensor Sub(const Tensor& a, const Tensor& b);
Tensor Mul(const Tensor& a, const Tensor& b);
Tensor Scale(const Tensor& a, double c);
Tensor Neg(const Tensor& a);
Tensor Square(const Tensor& a);
Tensor Exp(const Tensor& a);
Tensor Log(const Tensor& a);
// -p log p elementwise with 0 log 0 = 0; gradient at p = 0 is taken as 0.
Tensor NegXLogX(const Tensor& a);
Tensor Relu(const Tensor& a);
Tensor Relu6(const Tensor& a);
Tensor Tanh(const Tensor& a);
Tensor Sigmoid(const Tensor& a);
Tensor Clamp(const Tensor& a, double lo, double hi);
Tensor StopGradient(const Tensor& a);
Tensor SoftmaxRows(const Tensor& a);
Tensor LogSoftmaxRows(const Tensor& a);
Tensor Sum(const Tensor& a);
Tensor Mean(const Tensor& a);
// 1 x cols column sums and rows x 1 row sums.
Tensor ColSums(const Tensor& a);
Tensor RowSums(const Tensor& a);
// log(mean(exp(a))) over all entries, computed stably.
Tensor LogMeanExp(const Tensor& a);
Tensor ConcatCols(const std::vector<Tensor>& parts);
Tensor SliceCols(const Tensor& a, Eigen::Index start, Eigen::Index width);
// out.row(i) = table.row(indices[i]).
Tensor GatherRows(const Tensor& table, const std::vector<int>& indices);
// rows x 1 with out(i) = a(i, indices[i]).
Tensor PickPerRow(const Tensor& a, const std::vector<int>& indices);

// ---- layers ----
enum class Activation { kIdentity, kRelu, kRelu6, kTanh, kSigmoid, kSoftmax };

std::string ActivationName(Activation a);
absl::StatusOr<Activation> ParseActivation(const std::string& name);
Tensor Apply(Activation act, const Tensor& x);

struct LayerSpec {
  int in = 0;
  int out = 0;
  Activation activation = Activation::kIdentity;
};

struct MlpSpec {
  std::vector<LayerSpec> layers;

  // input -> hidden... -> output; hidden layers use `hidden_act`.
  static MlpSpec Make(int input, const std::vector<int>& hidden, int output,
                      Activation hidden_act, Activation output_act);
};

class Mlp {
 public:
  Mlp() = default;
  // Glorot-uniform weights, zero biases.
  Mlp(MlpSpec spec, std::mt19937_64& rng);

  // x is batch x in; returns batch x out.
  Tensor Forward(const Tensor& x) const;
  std::vector<Tensor> Parameters() const;
  const MlpSpec& spec() const { return spec_; }
  int input_dim() const { return spec_.layers.front().in; }
  int output_dim() const { return spec_.layers.back().out; }

  // Deep copy of the parameter values.
  Mlp Clone() const;

  // Checkpoint block: "mlp <name> <n>" then per layer "layer in out act"
  // followed by row-major weights and biases.
  void Write(std::ostream& out, const std::string& name) const;
  static absl::StatusOr<Mlp> Read(std::istream& in, const std::string& name);

 private:
  MlpSpec spec_;
  std::vector<Tensor> weights_;  // in x out
  std::vector<Tensor> biases_;   // 1 x out
};

struct AdamOptions {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  long step = 0;
  std::vector<Matrix> m;
  std::vector<Matrix> v;
};

// One Adam update of `params` in place. Shapes of params, grads and (non-empty)
// state accumulators must agree.
void AdamStep(std::vector<Matrix*> params, const std::vector<Matrix>& grads,
              AdamState& state, const AdamOptions& opts);

class Adam {
 public:
  Adam(std::vector<Tensor> params, AdamOptions opts);
  // Applies the accumulated gradients, then clears them.
  void Step();
  void ZeroGrad();
  const AdamState& state() const { return state_; }

 private:
  std::vector<Tensor> params_;
  AdamOptions opts_;
  AdamState state_;
};

// Writes/reads a raw matrix as "rows cols" then row-major values.
void WriteMatrix(std::ostream& out, const Matrix& m);
absl::StatusOr<Matrix> ReadMatrix(std::istream& in);

}  // namespace ldpfair::ad

#endif  // LDPFAIR_AUTODIFF_H_
