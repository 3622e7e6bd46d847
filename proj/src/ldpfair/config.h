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

// Plain-text key=value run configuration. Lines are "key = value"; '#'
// starts a comment. List-valued keys accept "a,b,c", "logspace(a,b,n)"
// (base 10) and "linspace(a,b,n)".

#ifndef LDPFAIR_CONFIG_H_
#define LDPFAIR_CONFIG_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "absl/status/statusor.h"

namespace ldpfair {

// Expands a grid expression into its values.
absl::StatusOr<std::vector<double>> ParseGrid(const std::string& text);

class RunConfig {
 public:
  // All keys at their defaults.
  RunConfig();

  static absl::StatusOr<RunConfig> Parse(const std::string& text);
  static absl::StatusOr<RunConfig> Load(const std::string& path);

  // Unknown keys and unparsable values are InvalidArgument.
  absl::Status Set(const std::string& key, const std::string& value);

  std::string GetString(const std::string& key) const;
  double GetDouble(const std::string& key) const;
  int GetInt(const std::string& key) const;
  std::vector<double> GetList(const std::string& key) const;
  std::vector<std::uint64_t> GetSeeds() const;
  bool IsSet(const std::string& key) const;

  // Cross-key checks against module preconditions.
  absl::Status Validate() const;

  // Every key in sorted order as "key=value" lines, defaults included.
  std::string Canonical() const;
  // First 16 hex digits of SHA-256 of Canonical().
  std::string Hash() const;

  static std::vector<std::string> Keys();

 private:
  std::map<std::string, std::string> values_;
  std::map<std::string, bool> explicit_;
};

}  // namespace ldpfair

#endif  // LDPFAIR_CONFIG_H_
