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

// Command-line front end. Links only the C API.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ldpfair/ldpfair.h"

namespace {

int Fail(ldpf_status status, const std::string& context) {
  std::fprintf(stderr, "ldpfair: %s: %s (%s)\n", context.c_str(),
               ldpf_last_error(), ldpf_status_name(status));
  return ldpf_exit_code(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fair representations under local differential privacy"};
  std::string command;
  std::string config_path;
  std::string out_dir = "out";
  std::vector<std::string> overrides;
  long long seed = -1;
  int jobs = 1;
  app.add_option("command", command,
                 std::string("One of: ") + ldpf_command_names())
      ->required();
  app.add_option("--config,-c", config_path, "key=value config file");
  app.add_option("--out,-o", out_dir, "Output directory");
  app.add_option("--seed", seed, "Override the seeds key with one seed")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--jobs,-j", jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--set", overrides, "Override a config key (key=value)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  ldpf_config* cfg = nullptr;
  ldpf_status st = config_path.empty()
                       ? ldpf_config_default(&cfg)
                       : ldpf_config_load(config_path.c_str(), &cfg);
  if (st != LDPF_OK) return Fail(st, "config");
  for (const std::string& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      ldpf_config_free(cfg);
      std::fprintf(stderr, "ldpfair: --set expects key=value, got '%s'\n",
                   kv.c_str());
      return 2;
    }
    st = ldpf_config_set(cfg, kv.substr(0, eq).c_str(),
                         kv.substr(eq + 1).c_str());
    if (st != LDPF_OK) {
      ldpf_config_free(cfg);
      return Fail(st, "--set " + kv);
    }
  }
  if (seed >= 0) {
    st = ldpf_config_set(cfg, "seeds", std::to_string(seed).c_str());
    if (st != LDPF_OK) {
      ldpf_config_free(cfg);
      return Fail(st, "--seed");
    }
  }

  char* hash = nullptr;
  if (ldpf_config_hash(cfg, &hash) == LDPF_OK) {
    std::fprintf(stderr, "ldpfair %s: %s config_hash=%s\n", ldpf_version(),
                 command.c_str(), hash);
    ldpf_string_free(hash);
  }
  char* log = nullptr;
  st = ldpf_run_command(cfg, command.c_str(), out_dir.c_str(), jobs, &log);
  if (log != nullptr) {
    std::fputs(log, stdout);
    ldpf_string_free(log);
  }
  ldpf_config_free(cfg);
  if (st != LDPF_OK) return Fail(st, command);
  return 0;
}
