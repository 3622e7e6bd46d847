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

#include "ldpfair/config.h"

#include <cmath>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "ldpfair/discrete_source.h"
#include "ldpfair/hashing.h"
#include "ldpfair/status_macros.h"

namespace ldpfair {
namespace {

enum class Kind { kString, kInt, kDouble, kList };

struct KeySpec {
  const char* name;
  Kind kind;
  const char* default_value;
};

constexpr KeySpec kKeys[] = {
    {"dataset", Kind::kString, "adult"},
    {"cache_dir", Kind::kString, "data/cache"},
    {"adult_url", Kind::kString, ""},
    {"compas_csv", Kind::kString, ""},
    {"checkpoint", Kind::kString, ""},
    {"mode", Kind::kString, "continuous"},
    {"modes", Kind::kString, "continuous,discrete"},
    {"epsilon", Kind::kList, "5"},
    {"beta", Kind::kList, "1"},
    {"t", Kind::kDouble, "0.5"},
    {"d", Kind::kInt, "2"},
    {"K", Kind::kInt, "4"},
    {"D", Kind::kInt, "8"},
    {"hidden", Kind::kInt, "100"},
    {"epochs", Kind::kInt, "150"},
    {"batch", Kind::kInt, "512"},
    {"lr", Kind::kDouble, "0.001"},
    {"mc_samples", Kind::kInt, "1"},
    {"vq_lambda", Kind::kDouble, "0.25"},
    {"seeds", Kind::kList, "0"},
    {"mine_iterations", Kind::kInt, "50000"},
    {"mine_batch", Kind::kInt, "1024"},
    {"mine_lr", Kind::kDouble, "0.001"},
    {"attacker_epochs", Kind::kInt, "20"},
    {"source_file", Kind::kString, ""},
    {"source_cards", Kind::kList, "2,2,4"},
    {"source_seed", Kind::kInt, "0"},
    {"rr_k", Kind::kInt, "0"},
    {"rr_d", Kind::kInt, "1"},
    {"restarts", Kind::kInt, "8"},
    {"iterations", Kind::kInt, "2000"},
    {"solver_lr", Kind::kDouble, "0.05"},
    {"tolerance", Kind::kDouble, "1e-7"},
    {"verify_encoders", Kind::kInt, "200"},
    {"verify_sources", Kind::kInt, "20"},
    {"verify_epsilons", Kind::kList, "0.5,1,2"},
    {"corollary2_gamma", Kind::kDouble, "0"},
    {"oracle_budget", Kind::kInt, "100000"},
    {"channel_file", Kind::kString, ""},
};

const KeySpec* Find(const std::string& key) {
  for (const KeySpec& k : kKeys)
    if (key == k.name) return &k;
  return nullptr;
}

absl::Status CheckValue(const KeySpec& k, const std::string& v) {
  switch (k.kind) {
    case Kind::kString:
      return absl::OkStatus();
    case Kind::kInt: {
      int x;
      if (!absl::SimpleAtoi(v, &x)) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "config: %s expects an integer, got '%s'", k.name, v));
      }
      return absl::OkStatus();
    }
    case Kind::kDouble: {
      double x;
      if (!absl::SimpleAtod(v, &x) || !std::isfinite(x)) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "config: %s expects a number, got '%s'", k.name, v));
      }
      return absl::OkStatus();
    }
    case Kind::kList: {
      auto grid = ParseGrid(v);
      if (!grid.ok()) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "config: %s: %s", k.name, grid.status().message()));
      }
      return absl::OkStatus();
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<double>> ParseNumbers(absl::string_view body) {
  std::vector<double> out;
  for (absl::string_view part : absl::StrSplit(body, ',')) {
    part = absl::StripAsciiWhitespace(part);
    double v;
    if (!absl::SimpleAtod(part, &v) || !std::isfinite(v)) {
      return absl::InvalidArgumentError(
          absl::StrFormat("bad number '%s'", std::string(part)));
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

absl::StatusOr<std::vector<double>> ParseGrid(const std::string& text) {
  absl::string_view t = absl::StripAsciiWhitespace(text);
  for (const char* fn : {"logspace", "linspace"}) {
    if (!absl::ConsumePrefix(&t, fn)) continue;
    t = absl::StripAsciiWhitespace(t);
    if (!absl::ConsumePrefix(&t, "(") || !absl::ConsumeSuffix(&t, ")")) {
      return absl::InvalidArgumentError(
          absl::StrFormat("%s needs parentheses", fn));
    }
    ASSIGN_OR_RETURN(std::vector<double> args, ParseNumbers(t));
    if (args.size() != 3 || args[2] < 1 || args[2] != std::floor(args[2])) {
      return absl::InvalidArgumentError(
          absl::StrFormat("%s(a,b,n) needs a positive integer n", fn));
    }
    const int n = static_cast<int>(args[2]);
    std::vector<double> out(n);
    const bool log = std::string(fn) == "logspace";
    for (int i = 0; i < n; ++i) {
      const double e =
          n == 1 ? args[0] : args[0] + (args[1] - args[0]) * i / (n - 1);
      out[i] = log ? std::pow(10.0, e) : e;
    }
    return out;
  }
  if (t.empty()) return absl::InvalidArgumentError("empty grid");
  return ParseNumbers(t);
}

RunConfig::RunConfig() {
  for (const KeySpec& k : kKeys) values_[k.name] = k.default_value;
}

std::vector<std::string> RunConfig::Keys() {
  std::vector<std::string> out;
  for (const KeySpec& k : kKeys) out.emplace_back(k.name);
  return out;
}

absl::Status RunConfig::Set(const std::string& key, const std::string& value) {
  const KeySpec* k = Find(key);
  if (k == nullptr) {
    return absl::InvalidArgumentError("config: unknown key '" + key + "'");
  }
  const std::string v(absl::StripAsciiWhitespace(value));
  RETURN_IF_ERROR(CheckValue(*k, v));
  values_[key] = v;
  explicit_[key] = true;
  return absl::OkStatus();
}

absl::StatusOr<RunConfig> RunConfig::Parse(const std::string& text) {
  RunConfig cfg;
  int line_no = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != absl::string_view::npos) line = line.substr(0, hash);
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == absl::string_view::npos) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "config line %d: expected key = value", line_no));
    }
    const std::string key(absl::StripAsciiWhitespace(line.substr(0, eq)));
    const std::string value(line.substr(eq + 1));
    auto st = cfg.Set(key, value);
    if (!st.ok()) {
      return absl::InvalidArgumentError(
          absl::StrFormat("config line %d: %s", line_no, st.message()));
    }
  }
  return cfg;
}

absl::StatusOr<RunConfig> RunConfig::Load(const std::string& path) {
  auto text = ReadFile(path);
  if (!text.ok()) {
    return absl::InvalidArgumentError("config: " +
                                      std::string(text.status().message()));
  }
  return Parse(*text);
}

std::string RunConfig::GetString(const std::string& key) const {
  return values_.at(key);
}

double RunConfig::GetDouble(const std::string& key) const {
  double v = 0.0;
  (void)absl::SimpleAtod(values_.at(key), &v);
  return v;
}

int RunConfig::GetInt(const std::string& key) const {
  int v = 0;
  (void)absl::SimpleAtoi(values_.at(key), &v);
  return v;
}

std::vector<double> RunConfig::GetList(const std::string& key) const {
  auto g = ParseGrid(values_.at(key));
  return g.ok() ? *g : std::vector<double>{};
}

std::vector<std::uint64_t> RunConfig::GetSeeds() const {
  std::vector<std::uint64_t> out;
  for (double v : GetList("seeds")) out.push_back(static_cast<std::uint64_t>(v));
  return out;
}

bool RunConfig::IsSet(const std::string& key) const {
  return explicit_.contains(key);
}

absl::Status RunConfig::Validate() const {
  auto fail = [](const std::string& msg) {
    return absl::InvalidArgumentError("config: " + msg);
  };
  const std::string ds = GetString("dataset");
  if (ds != "adult" && ds != "compas" && ds != "synthetic") {
    return fail("dataset must be adult, compas or synthetic");
  }
  if (ds == "compas" && GetString("compas_csv").empty()) {
    return fail("dataset=compas needs compas_csv (file is not downloaded)");
  }
  const std::string mode = GetString("mode");
  if (mode != "continuous" && mode != "discrete") {
    return fail("mode must be continuous or discrete");
  }
  for (absl::string_view m : absl::StrSplit(GetString("modes"), ',')) {
    m = absl::StripAsciiWhitespace(m);
    if (m != "continuous" && m != "discrete") {
      return fail("modes entries must be continuous or discrete");
    }
  }
  for (double e : GetList("epsilon"))
    if (e < 0) return fail("epsilon must be >= 0");
  for (double e : GetList("verify_epsilons"))
    if (e < 0) return fail("verify_epsilons must be >= 0");
  for (double b : GetList("beta"))
    if (b < 0) return fail("beta must be >= 0");
  for (double s : GetList("seeds"))
    if (s < 0 || s != std::floor(s)) return fail("seeds must be integers >= 0");
  if (GetDouble("t") <= 0) return fail("t must be > 0");
  if (GetInt("d") < 1 || GetInt("K") < 2 || GetInt("D") < 1 ||
      GetInt("hidden") < 1) {
    return fail("need d >= 1, K >= 2, D >= 1, hidden >= 1");
  }
  if (GetInt("epochs") < 0 || GetInt("batch") < 1 || GetDouble("lr") <= 0 ||
      GetInt("mc_samples") < 1 || GetDouble("vq_lambda") <= 0) {
    return fail("need epochs >= 0, batch >= 1, lr > 0, mc_samples >= 1, "
                "vq_lambda > 0");
  }
  if (GetInt("mine_iterations") < 100 || GetInt("mine_batch") < 2 ||
      GetDouble("mine_lr") <= 0 || GetInt("attacker_epochs") < 0) {
    return fail("need mine_iterations >= 100, mine_batch >= 2, mine_lr > 0");
  }
  const std::vector<double> cards = GetList("source_cards");
  if (cards.size() != 3) return fail("source_cards needs three values U,S,X");
  for (double c : cards)
    if (c < 1 || c > 32 || c != std::floor(c))
      return fail("source_cards must be integers in [1, 32]");
  if (GetInt("rr_k") < 0 || GetInt("rr_d") < 1) {
    return fail("need rr_k >= 0 (0 means |X|) and rr_d >= 1");
  }
  if (GetInt("restarts") < 1 || GetInt("iterations") < 1 ||
      GetDouble("solver_lr") <= 0 || GetDouble("tolerance") <= 0) {
    return fail("solver settings must be positive");
  }
  if (GetInt("verify_encoders") < 1 || GetInt("verify_sources") < 1 ||
      GetDouble("corollary2_gamma") < 0 || GetInt("oracle_budget") < 0) {
    return fail("bad verify settings");
  }
  return absl::OkStatus();
}

std::string RunConfig::Canonical() const {
  std::string out;
  for (const auto& [k, v] : values_) out += k + "=" + v + "\n";
  return out;
}

std::string RunConfig::Hash() const { return ShortHash(Canonical()); }

}  // namespace ldpfair
