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

#include "ldpfair/discrete_source.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

namespace ldpfair {
namespace {

absl::Status CheckAndNormalize(std::vector<double>& v, const char* what) {
  double total = 0.0;
  for (double p : v) {
    if (!std::isfinite(p)) {
      return absl::InvalidArgumentError(absl::StrCat(what, ": non-finite entry"));
    }
    if (p < 0.0) {
      return absl::InvalidArgumentError(
          absl::StrFormat("%s: negative entry %g", what, p));
    }
    total += p;
  }
  if (total <= 0.0) {
    return absl::InvalidArgumentError(absl::StrCat(what, ": zero total mass"));
  }
  if (std::abs(total - 1.0) > kNormalizationSlack) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "%s: total mass %.17g is not within %g of 1", what, total,
        kNormalizationSlack));
  }
  for (double& p : v) p /= total;
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<Channel> Channel::Create(Matrix rows) {
  if (rows.rows() == 0 || rows.cols() == 0) {
    return absl::InvalidArgumentError("channel: empty matrix");
  }
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    std::vector<double> row(rows.cols());
    for (Eigen::Index j = 0; j < rows.cols(); ++j) row[j] = rows(i, j);
    auto status = CheckAndNormalize(row, "channel row");
    if (!status.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat(status.message(), " (row ", i, ")"));
    }
    for (Eigen::Index j = 0; j < rows.cols(); ++j) rows(i, j) = row[j];
  }
  return Channel(std::move(rows));
}

absl::StatusOr<Channel> Channel::FromRowMajor(int in_card, int out_card,
                                              const std::vector<double>& v) {
  if (in_card <= 0 || out_card <= 0 ||
      v.size() != static_cast<std::size_t>(in_card) * out_card) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "channel: expected %d x %d entries, got %d", in_card, out_card,
        v.size()));
  }
  Matrix m(in_card, out_card);
  for (int i = 0; i < in_card; ++i)
    for (int j = 0; j < out_card; ++j) m(i, j) = v[i * out_card + j];
  return Create(std::move(m));
}

Channel Channel::Identity(int n) { return Channel(Matrix::Identity(n, n)); }

Channel Channel::Constant(int in_card, int out_card, int symbol) {
  Matrix m = Matrix::Zero(in_card, out_card);
  m.col(symbol).setOnes();
  return Channel(std::move(m));
}

Channel Channel::Uniform(int in_card, int out_card) {
  return Channel(Matrix::Constant(in_card, out_card, 1.0 / out_card));
}

absl::StatusOr<Channel> Compose(const Channel& a, const Channel& b) {
  if (a.out_card() != b.in_card()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "compose: output cardinality %d does not match input cardinality %d",
        a.out_card(), b.in_card()));
  }
  return Channel::Create(a.matrix() * b.matrix());
}

absl::StatusOr<JointSourceUSX> JointSourceUSX::Create(Array3 probs) {
  if (probs.n0 <= 0 || probs.n1 <= 0 || probs.n2 <= 0 ||
      probs.values.size() !=
          static_cast<std::size_t>(probs.n0) * probs.n1 * probs.n2) {
    return absl::InvalidArgumentError("source: malformed array shape");
  }
  auto status = CheckAndNormalize(probs.values, "source");
  if (!status.ok()) return status;
  return JointSourceUSX(std::move(probs));
}

Vector JointSourceUSX::MarginalU() const {
  Vector m = Vector::Zero(card_u());
  for (int u = 0; u < card_u(); ++u)
    for (int s = 0; s < card_s(); ++s)
      for (int x = 0; x < card_x(); ++x) m(u) += probs_.at(u, s, x);
  return m;
}

Vector JointSourceUSX::MarginalS() const {
  Vector m = Vector::Zero(card_s());
  for (int u = 0; u < card_u(); ++u)
    for (int s = 0; s < card_s(); ++s)
      for (int x = 0; x < card_x(); ++x) m(s) += probs_.at(u, s, x);
  return m;
}

Vector JointSourceUSX::MarginalX() const {
  Vector m = Vector::Zero(card_x());
  for (int u = 0; u < card_u(); ++u)
    for (int s = 0; s < card_s(); ++s)
      for (int x = 0; x < card_x(); ++x) m(x) += probs_.at(u, s, x);
  return m;
}

Matrix JointSourceUSX::JointUX() const {
  Matrix m = Matrix::Zero(card_u(), card_x());
  for (int u = 0; u < card_u(); ++u)
    for (int s = 0; s < card_s(); ++s)
      for (int x = 0; x < card_x(); ++x) m(u, x) += probs_.at(u, s, x);
  return m;
}

Matrix JointSourceUSX::JointSX() const {
  Matrix m = Matrix::Zero(card_s(), card_x());
  for (int u = 0; u < card_u(); ++u)
    for (int s = 0; s < card_s(); ++s)
      for (int x = 0; x < card_x(); ++x) m(s, x) += probs_.at(u, s, x);
  return m;
}

absl::StatusOr<std::vector<UsxSample>> JointSourceUSX::Sample(
    int n, std::uint64_t seed) const {
  if (n < 1) return absl::InvalidArgumentError("sample: n must be >= 1");
  std::vector<double> cdf(probs_.values.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < cdf.size(); ++i) {
    acc += probs_.values[i];
    cdf[i] = acc;
  }
  Rng rng(seed);
  std::uniform_real_distribution<double> unif(0.0, acc);
  std::vector<UsxSample> out;
  out.reserve(n);
  const int sx = card_s() * card_x();
  for (int i = 0; i < n; ++i) {
    const double r = unif(rng);
    auto it = std::upper_bound(cdf.begin(), cdf.end(), r);
    int cell = static_cast<int>(std::min<std::ptrdiff_t>(
        it - cdf.begin(), static_cast<std::ptrdiff_t>(cdf.size()) - 1));
    // Only reachable through the end-of-range clamp above.
    while (probs_.values[cell] == 0.0 && cell > 0) --cell;
    out.push_back({cell / sx, (cell / card_x()) % card_s(), cell % card_x()});
  }
  return out;
}

Matrix JointFull::PairMarginal(Axis a, Axis b) const {
  const int ia = static_cast<int>(a), ib = static_cast<int>(b);
  Matrix m = Matrix::Zero(dims_[ia], dims_[ib]);
  std::array<int, 4> idx{};
  std::size_t flat = 0;
  for (idx[0] = 0; idx[0] < dims_[0]; ++idx[0])
    for (idx[1] = 0; idx[1] < dims_[1]; ++idx[1])
      for (idx[2] = 0; idx[2] < dims_[2]; ++idx[2])
        for (idx[3] = 0; idx[3] < dims_[3]; ++idx[3], ++flat)
          m(idx[ia], idx[ib]) += probs_[flat];
  return m;
}

Array3 JointFull::TripleMarginal(Axis a, Axis b, Axis c) const {
  const int ia = static_cast<int>(a), ib = static_cast<int>(b),
            ic = static_cast<int>(c);
  Array3 out(dims_[ia], dims_[ib], dims_[ic]);
  std::array<int, 4> idx{};
  std::size_t flat = 0;
  for (idx[0] = 0; idx[0] < dims_[0]; ++idx[0])
    for (idx[1] = 0; idx[1] < dims_[1]; ++idx[1])
      for (idx[2] = 0; idx[2] < dims_[2]; ++idx[2])
        for (idx[3] = 0; idx[3] < dims_[3]; ++idx[3], ++flat)
          out.at(idx[ia], idx[ib], idx[ic]) += probs_[flat];
  return out;
}

Array3 JointFull::SourceMarginal() const {
  return TripleMarginal(Axis::kU, Axis::kS, Axis::kX);
}

absl::StatusOr<JointFull> InducedJoint(const JointSourceUSX& src,
                                       const Channel& enc) {
  if (enc.in_card() != src.card_x()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "induced joint: channel input cardinality %d != |X| = %d",
        enc.in_card(), src.card_x()));
  }
  JointFull j;
  j.dims_ = {src.card_u(), src.card_s(), src.card_x(), enc.out_card()};
  j.probs_.resize(static_cast<std::size_t>(j.dims_[0]) * j.dims_[1] *
                  j.dims_[2] * j.dims_[3]);
  std::size_t flat = 0;
  for (int u = 0; u < j.dims_[0]; ++u)
    for (int s = 0; s < j.dims_[1]; ++s)
      for (int x = 0; x < j.dims_[2]; ++x)
        for (int z = 0; z < j.dims_[3]; ++z, ++flat)
          j.probs_[flat] = src(u, s, x) * enc(x, z);
  return j;
}

namespace {

std::vector<double> DirichletDraw(int n, Rng& rng, double alpha) {
  std::gamma_distribution<double> gamma(alpha, 1.0);
  std::vector<double> v(n);
  double total = 0.0;
  for (double& p : v) {
    p = gamma(rng);
    total += p;
  }
  if (total <= 0.0) {
    // Degenerate draw for tiny alpha; fall back to a point mass.
    std::fill(v.begin(), v.end(), 0.0);
    v[std::uniform_int_distribution<int>(0, n - 1)(rng)] = 1.0;
    return v;
  }
  for (double& p : v) p /= total;
  return v;
}

}  // namespace

JointSourceUSX RandomSource(int card_u, int card_s, int card_x,
                            std::uint64_t seed, double alpha) {
  Rng rng(seed);
  Array3 a(card_u, card_s, card_x);
  a.values = DirichletDraw(card_u * card_s * card_x, rng, alpha);
  return *JointSourceUSX::Create(std::move(a));
}

Channel RandomChannel(int in_card, int out_card, Rng& rng, double alpha) {
  Matrix m(in_card, out_card);
  for (int i = 0; i < in_card; ++i) {
    auto row = DirichletDraw(out_card, rng, alpha);
    for (int j = 0; j < out_card; ++j) m(i, j) = row[j];
  }
  return *Channel::Create(std::move(m));
}

std::string FormatSource(const JointSourceUSX& src) {
  std::string out =
      absl::StrFormat("%d %d %d\n", src.card_u(), src.card_s(), src.card_x());
  for (double p : src.probs().values) absl::StrAppendFormat(&out, "%.17g\n", p);
  return out;
}

absl::StatusOr<JointSourceUSX> ParseSource(const std::string& text) {
  std::istringstream in(text);
  int cu = 0, cs = 0, cx = 0;
  if (!(in >> cu >> cs >> cx) || cu <= 0 || cs <= 0 || cx <= 0) {
    return absl::InvalidArgumentError(
        "source file: expected header with three positive cardinalities");
  }
  Array3 a(cu, cs, cx);
  for (double& p : a.values) {
    if (!(in >> p)) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "source file: expected %d probabilities", a.values.size()));
    }
  }
  double extra;
  if (in >> extra) {
    return absl::InvalidArgumentError("source file: trailing values");
  }
  return JointSourceUSX::Create(std::move(a));
}

std::string FormatChannel(const Channel& ch) {
  std::string out = absl::StrFormat("%d %d\n", ch.in_card(), ch.out_card());
  for (int i = 0; i < ch.in_card(); ++i) {
    for (int j = 0; j < ch.out_card(); ++j) {
      absl::StrAppendFormat(&out, j == 0 ? "%.17g" : " %.17g", ch(i, j));
    }
    out += '\n';
  }
  return out;
}

absl::StatusOr<Channel> ParseChannel(const std::string& text) {
  std::istringstream in(text);
  int n_in = 0, n_out = 0;
  if (!(in >> n_in >> n_out) || n_in <= 0 || n_out <= 0) {
    return absl::InvalidArgumentError(
        "channel file: expected header with two positive cardinalities");
  }
  std::vector<double> v(static_cast<std::size_t>(n_in) * n_out);
  for (double& p : v) {
    if (!(in >> p)) {
      return absl::InvalidArgumentError(
          absl::StrFormat("channel file: expected %d entries", v.size()));
    }
  }
  double extra;
  if (in >> extra) {
    return absl::InvalidArgumentError("channel file: trailing values");
  }
  return Channel::FromRowMajor(n_in, n_out, v);
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

absl::Status WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::UnavailableError(absl::StrCat("cannot write ", path));
  }
  out << contents;
  if (!out) return absl::UnavailableError(absl::StrCat("short write to ", path));
  return absl::OkStatus();
}

}  // namespace ldpfair
