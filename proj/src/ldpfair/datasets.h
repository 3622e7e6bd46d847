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

// Tabular benchmark ingestion (UCI Adult, COMPAS), a synthetic source with a
// known joint, and the on-disk dataset format.

#ifndef LDPFAIR_DATASETS_H_
#define LDPFAIR_DATASETS_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "ldpfair/discrete_source.h"

namespace ldpfair {

enum class ColumnKind { kNumeric, kCategorical };

struct ColumnSchema {
  std::string name;
  ColumnKind kind = ColumnKind::kNumeric;
  std::vector<std::string> levels;  // categorical only, one-hot order
  // Numeric only: the standardization applied, and the split it came from.
  double mean = 0.0;
  double stddev = 1.0;
  std::string stats_split = "train";

  bool operator==(const ColumnSchema&) const = default;
};

// Where each raw attribute lives in the encoded feature matrix.
struct FeatureLayout {
  std::vector<int> numeric;                    // column indices
  std::vector<std::pair<int, int>> groups;     // (start, width) one-hot groups
  int width = 0;
};

struct TabularDataset {
  std::string name;
  std::string split;
  std::vector<ColumnSchema> schema;
  Matrix x;  // rows x encoded width
  std::vector<int> u;
  std::vector<int> s;
  int card_u = 2;
  int card_s = 2;

  int rows() const { return static_cast<int>(x.rows()); }
  FeatureLayout Layout() const;
  // Subset of rows in the given order.
  TabularDataset Select(const std::vector<int>& rows) const;
};

struct DatasetSplits {
  TabularDataset train;
  TabularDataset test;
  // Non-fatal statistic check messages.
  std::vector<std::string> warnings;
};

inline constexpr int kAdultTrainRecords = 32561;
inline constexpr int kAdultTestRecords = 16281;
inline constexpr char kAdultDefaultUrl[] =
    "https://archive.ics.uci.edu/ml/machine-learning-databases/adult";
inline constexpr char kCacheDirEnv[] = "LDPFAIR_CACHE_DIR";

// $LDPFAIR_CACHE_DIR if set, else `fallback`.
std::string ResolveCacheDir(const std::string& fallback);

struct AdultRaw {
  std::string train;
  std::string test;
  bool from_cache = false;
};

// Number of data records in a raw Adult file (skips blank and '|' lines).
int CountAdultRecords(const std::string& raw);

// Returns cache_dir/adult/{train,test}.raw when present and complete;
// otherwise downloads <url>/adult.data and <url>/adult.test and caches them.
absl::StatusOr<AdultRaw> FetchUciAdult(const std::string& cache_dir,
                                       const std::string& url_override = "");

// S = sex (Male = 1), U = income > 50K, the other 13 attributes as X. Missing
// values ('?') are kept as their own category. Numeric columns are z-scored
// with training statistics.
absl::StatusOr<DatasetSplits> PreprocessAdult(const AdultRaw& raw);

inline constexpr int kCompasRows = 6172;
inline constexpr int kCompasTrainRows = 4320;
inline constexpr double kCompasPositiveRate = 0.5378;

// ProPublica two-year file: S = race is African-American, U = no two-year
// recidivism, 10 attributes, seeded 70/30 split.
absl::StatusOr<DatasetSplits> LoadCompas(const std::string& csv_path,
                                         std::uint64_t seed = 0);

struct SyntheticSpec {
  JointSourceUSX source = RandomSource(2, 2, 1, 0);
  Matrix means;  // card_x x feature dim, distinct rows
  double sigma = 0.5;
  int train_rows = 4000;
  int test_rows = 2000;
  std::uint64_t seed = 0;
};

struct SyntheticData {
  DatasetSplits splits;
  JointSourceUSX source;
  std::vector<int> train_x;
  std::vector<int> test_x;
};

// Binary U and S required.
absl::StatusOr<SyntheticData> GenerateSynthetic(const SyntheticSpec& spec);

// Seeded 2x2x4 source with means on a square; used by the CLI.
SyntheticSpec DefaultSyntheticSpec(std::uint64_t seed);

// Versioned binary format with a trailing SHA-256 content hash.
std::string SerializeDataset(const TabularDataset& ds);
absl::StatusOr<TabularDataset> DeserializeDataset(const std::string& bytes);
absl::Status SaveDataset(const TabularDataset& ds, const std::string& path);
absl::StatusOr<TabularDataset> LoadDataset(const std::string& path);
// SHA-256 of the serialized dataset body.
std::string DatasetHash(const TabularDataset& ds);

}  // namespace ldpfair

#endif  // LDPFAIR_DATASETS_H_
