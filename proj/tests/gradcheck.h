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

// Central-difference gradient checks shared by the unit and acceptance tests.

#ifndef LDPFAIR_TESTS_GRADCHECK_H_
#define LDPFAIR_TESTS_GRADCHECK_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "ldpfair/autodiff.h"

namespace ldpfair::testing {

// ||analytic - numeric|| / max(||analytic||, ||numeric||) over all entries of
// `params`, where `loss` rebuilds a scalar graph from the current values.
inline double RelativeGradError(std::vector<ad::Tensor> params,
                                const std::function<ad::Tensor()>& loss,
                                double step = 1e-5) {
  for (ad::Tensor& p : params) p.ZeroGrad();
  ad::Backward(loss());
  double diff2 = 0.0, an2 = 0.0, num2 = 0.0;
  for (ad::Tensor& p : params) {
    const ad::Matrix analytic = p.grad();
    ad::Matrix& v = p.mutable_value();
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      for (Eigen::Index j = 0; j < v.cols(); ++j) {
        const double keep = v(i, j);
        v(i, j) = keep + step;
        const double up = loss().item();
        v(i, j) = keep - step;
        const double down = loss().item();
        v(i, j) = keep;
        const double numeric = (up - down) / (2 * step);
        diff2 += (analytic(i, j) - numeric) * (analytic(i, j) - numeric);
        an2 += analytic(i, j) * analytic(i, j);
        num2 += numeric * numeric;
      }
    }
  }
  const double denom = std::max({std::sqrt(an2), std::sqrt(num2), 1e-12});
  return std::sqrt(diff2) / denom;
}

struct OpCase {
  const char* name;
  std::function<ad::Tensor(const std::vector<ad::Tensor>&)> op;
  std::vector<ad::Matrix> inputs;
};

// Inputs are kept away from kinks and domain edges so that central
// differences are meaningful.
inline std::vector<OpCase> AllOpCases(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto rand = [&](int r, int c, double lo, double hi) {
    ad::Matrix m(r, c);
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      m.data()[i] = lo + (hi - lo) * 0.5 * (unit(rng) + 1.0);
    }
    return m;
  };
  auto away = [&](int r, int c, std::vector<double> kinks, double lo,
                  double hi) {
    ad::Matrix m = rand(r, c, lo, hi);
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      for (double k : kinks) {
        if (std::abs(m.data()[i] - k) < 0.05) m.data()[i] = k + 0.1;
      }
    }
    return m;
  };
  using V = const std::vector<ad::Tensor>&;
  std::vector<OpCase> c;
  c.push_back({"MatMul", [](V a) { return ad::MatMul(a[0], a[1]); },
               {rand(3, 4, -1, 1), rand(4, 2, -1, 1)}});
  c.push_back({"Add", [](V a) { return ad::Add(a[0], a[1]); },
               {rand(3, 4, -1, 1), rand(3, 4, -1, 1)}});
  c.push_back({"AddRowBroadcast", [](V a) { return ad::Add(a[0], a[1]); },
               {rand(3, 4, -1, 1), rand(1, 4, -1, 1)}});
  c.push_back({"AddScalar", [](V a) { return ad::Add(a[0], a[1]); },
               {rand(3, 4, -1, 1), rand(1, 1, -1, 1)}});
  c.push_back({"Sub", [](V a) { return ad::Sub(a[0], a[1]); },
               {rand(3, 4, -1, 1), rand(1, 4, -1, 1)}});
  c.push_back({"Mul", [](V a) { return ad::Mul(a[0], a[1]); },
               {rand(3, 4, -1, 1), rand(3, 4, -1, 1)}});
  c.push_back({"MulRowBroadcast", [](V a) { return ad::Mul(a[0], a[1]); },
               {rand(3, 4, -1, 1), rand(1, 4, -1, 1)}});
  c.push_back({"Scale", [](V a) { return ad::Scale(a[0], -2.5); },
               {rand(3, 4, -1, 1)}});
  c.push_back({"Neg", [](V a) { return ad::Neg(a[0]); }, {rand(3, 4, -1, 1)}});
  c.push_back({"Square", [](V a) { return ad::Square(a[0]); },
               {rand(3, 4, -2, 2)}});
  c.push_back({"Exp", [](V a) { return ad::Exp(a[0]); }, {rand(3, 4, -2, 2)}});
  c.push_back({"Log", [](V a) { return ad::Log(a[0]); },
               {rand(3, 4, 0.2, 3)}});
  c.push_back({"NegXLogX", [](V a) { return ad::NegXLogX(a[0]); },
               {rand(3, 4, 0.05, 1)}});
  c.push_back({"Relu", [](V a) { return ad::Relu(a[0]); },
               {away(3, 4, {0.0}, -2, 2)}});
  c.push_back({"Relu6", [](V a) { return ad::Relu6(a[0]); },
               {away(3, 4, {0.0, 6.0}, -2, 8)}});
  c.push_back({"Tanh", [](V a) { return ad::Tanh(a[0]); }, {rand(3, 4, -2, 2)}});
  c.push_back({"Sigmoid", [](V a) { return ad::Sigmoid(a[0]); },
               {rand(3, 4, -3, 3)}});
  c.push_back({"Clamp", [](V a) { return ad::Clamp(a[0], -0.5, 0.7); },
               {away(3, 4, {-0.5, 0.7}, -1.5, 1.5)}});
  c.push_back({"SoftmaxRows", [](V a) { return ad::SoftmaxRows(a[0]); },
               {rand(3, 4, -2, 2)}});
  c.push_back({"LogSoftmaxRows", [](V a) { return ad::LogSoftmaxRows(a[0]); },
               {rand(3, 4, -2, 2)}});
  c.push_back({"Sum", [](V a) { return ad::Sum(a[0]); }, {rand(3, 4, -1, 1)}});
  c.push_back({"Mean", [](V a) { return ad::Mean(a[0]); }, {rand(3, 4, -1, 1)}});
  c.push_back({"ColSums", [](V a) { return ad::ColSums(a[0]); },
               {rand(3, 4, -1, 1)}});
  c.push_back({"RowSums", [](V a) { return ad::RowSums(a[0]); },
               {rand(3, 4, -1, 1)}});
  c.push_back({"LogMeanExp", [](V a) { return ad::LogMeanExp(a[0]); },
               {rand(3, 4, -2, 2)}});
  c.push_back({"ConcatCols",
               [](V a) { return ad::ConcatCols({a[0], a[1], a[0]}); },
               {rand(3, 2, -1, 1), rand(3, 3, -1, 1)}});
  c.push_back({"SliceCols", [](V a) { return ad::SliceCols(a[0], 1, 2); },
               {rand(3, 4, -1, 1)}});
  c.push_back({"GatherRows",
               [](V a) { return ad::GatherRows(a[0], {2, 0, 2, 1, 2}); },
               {rand(3, 4, -1, 1)}});
  c.push_back({"PickPerRow",
               [](V a) { return ad::PickPerRow(a[0], {3, 0, 1}); },
               {rand(3, 4, -1, 1)}});
  return c;
}

// Checks one op through L = sum(op(inputs) .* R) with a fixed random R.
inline double OpGradError(const OpCase& c, std::mt19937_64& rng) {
  std::vector<ad::Tensor> params;
  for (const ad::Matrix& m : c.inputs) params.push_back(ad::Tensor::Parameter(m));
  const ad::Matrix shape = c.op(params).value();
  std::normal_distribution<double> g;
  ad::Matrix r(shape.rows(), shape.cols());
  for (Eigen::Index i = 0; i < r.size(); ++i) r.data()[i] = g(rng);
  const ad::Tensor weights = ad::Tensor::Constant(r);
  return RelativeGradError(params, [&] {
    return ad::Sum(ad::Mul(c.op(params), weights));
  });
}

}  // namespace ldpfair::testing

#endif  // LDPFAIR_TESTS_GRADCHECK_H_
