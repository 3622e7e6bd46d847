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

#include "ldpfair/ldpfair.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_join.h"
#include "ldpfair/commands.h"
#include "ldpfair/config.h"
#include "ldpfair/discrete_source.h"
#include "ldpfair/ib_solver.h"
#include "ldpfair/info_measures.h"
#include "ldpfair/ldp_mechanisms.h"

struct ldpf_source {
  ldpfair::JointSourceUSX value;
};
struct ldpf_channel {
  ldpfair::Channel value;
};
struct ldpf_config {
  ldpfair::RunConfig value;
};

namespace {

thread_local std::string g_last_error;

ldpf_status FromCode(absl::StatusCode code) {
  switch (code) {
    case absl::StatusCode::kOk:
      return LDPF_OK;
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kOutOfRange:
      return LDPF_INVALID_ARGUMENT;
    case absl::StatusCode::kFailedPrecondition:
      return LDPF_FAILED_PRECONDITION;
    case absl::StatusCode::kAborted:
      return LDPF_ABORTED;
    case absl::StatusCode::kNotFound:
      return LDPF_NOT_FOUND;
    case absl::StatusCode::kUnavailable:
      return LDPF_UNAVAILABLE;
    case absl::StatusCode::kDataLoss:
      return LDPF_DATA_LOSS;
    case absl::StatusCode::kResourceExhausted:
      return LDPF_RESOURCE_EXHAUSTED;
    default:
      return LDPF_INTERNAL;
  }
}

ldpf_status Report(const absl::Status& status) {
  g_last_error = status.ok() ? "" : std::string(status.message());
  return FromCode(status.code());
}

ldpf_status NullArgument(const char* name) {
  return Report(absl::InvalidArgumentError(std::string(name) + " is NULL"));
}

char* CopyString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename F>
ldpf_status Guard(F&& body) {
  try {
    return Report(body());
  } catch (const std::exception& e) {
    return Report(absl::InternalError(std::string("exception: ") + e.what()));
  } catch (...) {
    return Report(absl::InternalError("unknown exception"));
  }
}

template <typename Handle, typename T>
absl::Status Emit(absl::StatusOr<T> v, Handle** out) {
  if (!v.ok()) return v.status();
  *out = new Handle{*std::move(v)};
  return absl::OkStatus();
}

}  // namespace

extern "C" {

const char* ldpf_version(void) { return "0.1.0"; }

const char* ldpf_last_error(void) { return g_last_error.c_str(); }

const char* ldpf_status_name(ldpf_status status) {
  switch (status) {
    case LDPF_OK:
      return "OK";
    case LDPF_INVALID_ARGUMENT:
      return "INVALID_ARGUMENT";
    case LDPF_FAILED_PRECONDITION:
      return "FAILED_PRECONDITION";
    case LDPF_ABORTED:
      return "ABORTED";
    case LDPF_NOT_FOUND:
      return "NOT_FOUND";
    case LDPF_UNAVAILABLE:
      return "UNAVAILABLE";
    case LDPF_DATA_LOSS:
      return "DATA_LOSS";
    case LDPF_RESOURCE_EXHAUSTED:
      return "RESOURCE_EXHAUSTED";
    case LDPF_INTERNAL:
      return "INTERNAL";
  }
  return "UNKNOWN";
}

int ldpf_exit_code(ldpf_status status) {
  switch (status) {
    case LDPF_OK:
      return 0;
    case LDPF_INVALID_ARGUMENT:
      return 2;
    case LDPF_ABORTED:
      return 3;
    default:
      return 4;
  }
}

void ldpf_string_free(char* s) { std::free(s); }

ldpf_status ldpf_source_create(int card_u, int card_s, int card_x,
                               const double* probs, ldpf_source** out) {
  if (probs == nullptr) return NullArgument("probs");
  if (out == nullptr) return NullArgument("out");
  return Guard([&]() -> absl::Status {
    if (card_u < 1 || card_s < 1 || card_x < 1) {
      return absl::InvalidArgumentError("cardinalities must be >= 1");
    }
    ldpfair::Array3 a(card_u, card_s, card_x);
    std::copy(probs, probs + a.values.size(), a.values.begin());
    return Emit(ldpfair::JointSourceUSX::Create(std::move(a)), out);
  });
}

ldpf_status ldpf_source_random(int card_u, int card_s, int card_x,
                               uint64_t seed, ldpf_source** out) {
  if (out == nullptr) return NullArgument("out");
  return Guard([&]() -> absl::Status {
    if (card_u < 1 || card_s < 1 || card_x < 1) {
      return absl::InvalidArgumentError("cardinalities must be >= 1");
    }
    *out = new ldpf_source{
        ldpfair::RandomSource(card_u, card_s, card_x, seed)};
    return absl::OkStatus();
  });
}

ldpf_status ldpf_source_parse(const char* text, ldpf_source** out) {
  if (text == nullptr) return NullArgument("text");
  if (out == nullptr) return NullArgument("out");
  return Guard([&] { return Emit(ldpfair::ParseSource(text), out); });
}

ldpf_status ldpf_source_cards(const ldpf_source* src, int* card_u, int* card_s,
                              int* card_x) {
  if (src == nullptr) return NullArgument("src");
  if (card_u != nullptr) *card_u = src->value.card_u();
  if (card_s != nullptr) *card_s = src->value.card_s();
  if (card_x != nullptr) *card_x = src->value.card_x();
  return Report(absl::OkStatus());
}

void ldpf_source_free(ldpf_source* src) { delete src; }

ldpf_status ldpf_channel_create(int in_card, int out_card, const double* rows,
                                ldpf_channel** out) {
  if (rows == nullptr) return NullArgument("rows");
  if (out == nullptr) return NullArgument("out");
  return Guard([&]() -> absl::Status {
    if (in_card < 1 || out_card < 1) {
      return absl::InvalidArgumentError("cardinalities must be >= 1");
    }
    std::vector<double> v(rows, rows + static_cast<size_t>(in_card) * out_card);
    return Emit(ldpfair::Channel::FromRowMajor(in_card, out_card, v), out);
  });
}

ldpf_status ldpf_channel_parse(const char* text, ldpf_channel** out) {
  if (text == nullptr) return NullArgument("text");
  if (out == nullptr) return NullArgument("out");
  return Guard([&] { return Emit(ldpfair::ParseChannel(text), out); });
}

ldpf_status ldpf_channel_shape(const ldpf_channel* ch, int* in_card,
                               int* out_card) {
  if (ch == nullptr) return NullArgument("ch");
  if (in_card != nullptr) *in_card = ch->value.in_card();
  if (out_card != nullptr) *out_card = ch->value.out_card();
  return Report(absl::OkStatus());
}

ldpf_status ldpf_channel_entries(const ldpf_channel* ch, double* rows,
                                 size_t len) {
  if (ch == nullptr) return NullArgument("ch");
  if (rows == nullptr) return NullArgument("rows");
  const int n = ch->value.in_card(), m = ch->value.out_card();
  if (len < static_cast<size_t>(n) * m) {
    return Report(absl::InvalidArgumentError("buffer too small"));
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) rows[i * m + j] = ch->value(i, j);
  return Report(absl::OkStatus());
}

ldpf_status ldpf_channel_format(const ldpf_channel* ch, char** text) {
  if (ch == nullptr) return NullArgument("ch");
  if (text == nullptr) return NullArgument("text");
  return Guard([&] {
    *text = CopyString(ldpfair::FormatChannel(ch->value));
    return absl::OkStatus();
  });
}

void ldpf_channel_free(ldpf_channel* ch) { delete ch; }

ldpf_status ldpf_compose(const ldpf_channel* a, const ldpf_channel* b,
                         ldpf_channel** out) {
  if (a == nullptr) return NullArgument("a");
  if (b == nullptr) return NullArgument("b");
  if (out == nullptr) return NullArgument("out");
  return Guard([&] { return Emit(ldpfair::Compose(a->value, b->value), out); });
}

ldpf_status ldpf_rr_channel(double epsilon, int k, int d, ldpf_channel** out) {
  if (out == nullptr) return NullArgument("out");
  return Guard([&]() -> absl::Status {
    auto rr = ldpfair::RandomizedResponse::Create(epsilon, k, d);
    if (!rr.ok()) return rr.status();
    return Emit(rr->ExactChannel(), out);
  });
}

ldpf_status ldpf_verify_ldp(const ldpf_channel* ch, double epsilon,
                            double* max_log_ratio, int* pass) {
  if (ch == nullptr) return NullArgument("ch");
  return Guard([&] {
    const ldpfair::LdpVerdict v = ldpfair::VerifyLdp(ch->value, epsilon);
    if (max_log_ratio != nullptr) *max_log_ratio = v.max_log_ratio;
    if (pass != nullptr) *pass = v.pass ? 1 : 0;
    return absl::OkStatus();
  });
}

ldpf_status ldpf_check_lemma1(const ldpf_channel* encoder,
                              const ldpf_channel* mechanism, double epsilon,
                              double* composed_max_log_ratio, int* pass) {
  if (encoder == nullptr) return NullArgument("encoder");
  if (mechanism == nullptr) return NullArgument("mechanism");
  return Guard([&]() -> absl::Status {
    auto r = ldpfair::CheckLemma1(encoder->value, mechanism->value, epsilon);
    if (!r.ok()) return r.status();
    if (composed_max_log_ratio != nullptr) {
      *composed_max_log_ratio = r->composed.max_log_ratio;
    }
    if (pass != nullptr) *pass = r->composed.pass ? 1 : 0;
    return absl::OkStatus();
  });
}

ldpf_status ldpf_mutual_information(const ldpf_source* src,
                                    const ldpf_channel* channel, ldpf_axis a,
                                    ldpf_axis b, double* out) {
  if (src == nullptr) return NullArgument("src");
  if (channel == nullptr) return NullArgument("channel");
  if (out == nullptr) return NullArgument("out");
  return Guard([&]() -> absl::Status {
    if (a < LDPF_AXIS_U || a > LDPF_AXIS_Z || b < LDPF_AXIS_U ||
        b > LDPF_AXIS_Z || a == b) {
      return absl::InvalidArgumentError("axes must be distinct U, S, X or Z");
    }
    auto joint = ldpfair::InducedJoint(src->value, channel->value);
    if (!joint.ok()) return joint.status();
    auto mi = ldpfair::MutualInformation(joint->PairMarginal(
        static_cast<ldpfair::Axis>(a), static_cast<ldpfair::Axis>(b)));
    if (!mi.ok()) return mi.status();
    *out = *mi;
    return absl::OkStatus();
  });
}

void ldpf_solver_options_default(ldpf_solver_options* opts) {
  if (opts == nullptr) return;
  const ldpfair::SolverConfig d;
  opts->restarts = d.restarts;
  opts->iterations = d.iterations;
  opts->learning_rate = d.learning_rate;
  opts->tolerance = d.tolerance;
  opts->seed = d.seed;
}

ldpf_status ldpf_solve_g(const ldpf_source* src, double epsilon, double beta,
                         const ldpf_solver_options* opts,
                         ldpf_frontier_point* point, ldpf_channel** encoder) {
  if (src == nullptr) return NullArgument("src");
  if (point == nullptr) return NullArgument("point");
  return Guard([&]() -> absl::Status {
    ldpfair::SolverConfig cfg;
    cfg.beta = beta;
    if (opts != nullptr) {
      cfg.restarts = opts->restarts;
      cfg.iterations = opts->iterations;
      cfg.learning_rate = opts->learning_rate;
      cfg.tolerance = opts->tolerance;
      cfg.seed = opts->seed;
    }
    auto mech = ldpfair::DefaultMechanism(src->value, epsilon);
    if (!mech.ok()) return mech.status();
    auto pt = ldpfair::SolveG(src->value, *mech, cfg);
    if (!pt.ok()) return pt.status();
    *point = ldpf_frontier_point{pt->beta, pt->epsilon, pt->Gamma,
                                 pt->Omega, pt->nu,     pt->ixz,
                                 pt->objective, pt->converged ? 1 : 0};
    if (encoder != nullptr) *encoder = new ldpf_channel{pt->encoder};
    return absl::OkStatus();
  });
}

ldpf_status ldpf_config_default(ldpf_config** out) {
  if (out == nullptr) return NullArgument("out");
  return Guard([&] {
    *out = new ldpf_config{ldpfair::RunConfig()};
    return absl::OkStatus();
  });
}

ldpf_status ldpf_config_parse(const char* text, ldpf_config** out) {
  if (text == nullptr) return NullArgument("text");
  if (out == nullptr) return NullArgument("out");
  return Guard([&] { return Emit(ldpfair::RunConfig::Parse(text), out); });
}

ldpf_status ldpf_config_load(const char* path, ldpf_config** out) {
  if (path == nullptr) return NullArgument("path");
  if (out == nullptr) return NullArgument("out");
  return Guard([&] { return Emit(ldpfair::RunConfig::Load(path), out); });
}

ldpf_status ldpf_config_set(ldpf_config* cfg, const char* key,
                            const char* value) {
  if (cfg == nullptr) return NullArgument("cfg");
  if (key == nullptr) return NullArgument("key");
  if (value == nullptr) return NullArgument("value");
  return Guard([&] { return cfg->value.Set(key, value); });
}

ldpf_status ldpf_config_get(const ldpf_config* cfg, const char* key,
                            char** value) {
  if (cfg == nullptr) return NullArgument("cfg");
  if (key == nullptr) return NullArgument("key");
  if (value == nullptr) return NullArgument("value");
  return Guard([&]() -> absl::Status {
    const auto keys = ldpfair::RunConfig::Keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      return absl::InvalidArgumentError(std::string("unknown key: ") + key);
    }
    *value = CopyString(cfg->value.GetString(key));
    return absl::OkStatus();
  });
}

ldpf_status ldpf_config_hash(const ldpf_config* cfg, char** hash) {
  if (cfg == nullptr) return NullArgument("cfg");
  if (hash == nullptr) return NullArgument("hash");
  return Guard([&] {
    *hash = CopyString(cfg->value.Hash());
    return absl::OkStatus();
  });
}

ldpf_status ldpf_config_canonical(const ldpf_config* cfg, char** text) {
  if (cfg == nullptr) return NullArgument("cfg");
  if (text == nullptr) return NullArgument("text");
  return Guard([&] {
    *text = CopyString(cfg->value.Canonical());
    return absl::OkStatus();
  });
}

void ldpf_config_free(ldpf_config* cfg) { delete cfg; }

const char* ldpf_command_names(void) {
  static const std::string names = absl::StrJoin(ldpfair::CommandNames(), ",");
  return names.c_str();
}

ldpf_status ldpf_run_command(const ldpf_config* cfg, const char* command,
                             const char* out_dir, int jobs, char** log) {
  if (cfg == nullptr) return NullArgument("cfg");
  if (command == nullptr) return NullArgument("command");
  if (out_dir == nullptr) return NullArgument("out_dir");
  std::string text;
  const ldpf_status st = Guard([&] {
    return ldpfair::RunCommand(command, cfg->value, out_dir, jobs, &text);
  });
  if (log != nullptr) *log = CopyString(text);
  return st;
}

}  // extern "C"
