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

// Batch commands behind the CLI. Each command validates the configuration,
// does its work and writes artifacts under an output directory; every
// artifact carries the configuration hash and seed list.

#ifndef LDPFAIR_COMMANDS_H_
#define LDPFAIR_COMMANDS_H_

#include <string>
#include <vector>

#include "absl/status/status.h"
#include "ldpfair/config.h"
#include "ldpfair/datasets.h"
#include "ldpfair/fair_encoder.h"
#include "ldpfair/fairness_metrics.h"

namespace ldpfair {

// fetch-data, verify, solve, frontier, train, evaluate, sweep, report.
std::vector<std::string> CommandNames();

// Status codes: InvalidArgument for configuration problems, Aborted for
// failed verification checks, anything else for runtime or data errors.
// `log` receives one human-readable line per notable event.
absl::Status RunCommand(const std::string& command, const RunConfig& cfg,
                        const std::string& out_dir, int jobs,
                        std::string* log = nullptr);

// CLI exit code for a command status: 0, 2 (config), 3 (check), 4 (runtime).
int ExitCodeFor(const absl::Status& status);

// Loads the configured dataset (adult, compas or synthetic).
absl::StatusOr<DatasetSplits> LoadConfiguredData(const RunConfig& cfg);

ModelSpec ModelSpecFor(const RunConfig& cfg, const TabularDataset& train,
                       EncoderMode mode, double epsilon);
TrainConfig TrainConfigFor(const RunConfig& cfg, double beta,
                           std::uint64_t seed);
EvalOptions EvalOptionsFor(const RunConfig& cfg);

}  // namespace ldpfair

#endif  // LDPFAIR_COMMANDS_H_
