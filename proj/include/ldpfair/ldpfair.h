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

// C interface to the ldpfair library.
//
// All functions return an ldpf_status. On failure a message is available
// from ldpf_last_error() until the next call on the same thread. Objects are
// opaque handles released with the matching *_free function. Strings returned
// through char** out-parameters are released with ldpf_string_free.

#ifndef LDPFAIR_LDPFAIR_H_
#define LDPFAIR_LDPFAIR_H_

#include <stddef.h>
#include <stdint.h>

#if defined(LDPFAIR_BUILDING_LIBRARY)
#define LDPF_API __attribute__((visibility("default")))
#else
#define LDPF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  LDPF_OK = 0,
  LDPF_INVALID_ARGUMENT = 1,
  LDPF_FAILED_PRECONDITION = 2,
  LDPF_ABORTED = 3,
  LDPF_NOT_FOUND = 4,
  LDPF_UNAVAILABLE = 5,
  LDPF_DATA_LOSS = 6,
  LDPF_RESOURCE_EXHAUSTED = 7,
  LDPF_INTERNAL = 8,
} ldpf_status;

typedef enum {
  LDPF_AXIS_U = 0,
  LDPF_AXIS_S = 1,
  LDPF_AXIS_X = 2,
  LDPF_AXIS_Z = 3,
} ldpf_axis;

typedef struct ldpf_source ldpf_source;
typedef struct ldpf_channel ldpf_channel;
typedef struct ldpf_config ldpf_config;

typedef struct {
  int restarts;
  int iterations;
  double learning_rate;
  double tolerance;
  uint64_t seed;
} ldpf_solver_options;

typedef struct {
  double beta;
  double epsilon;
  double Gamma;  // I(U;Z)
  double Omega;  // I(S;Z)
  double nu;     // I(X;Z|S)
  double ixz;    // I(X;Z)
  double objective;
  int converged;
} ldpf_frontier_point;

LDPF_API const char* ldpf_version(void);
LDPF_API const char* ldpf_last_error(void);
LDPF_API const char* ldpf_status_name(ldpf_status status);
// Process exit code for a status: 0 ok, 2 invalid argument, 3 aborted,
// 4 anything else.
LDPF_API int ldpf_exit_code(ldpf_status status);
LDPF_API void ldpf_string_free(char* s);

// Joint sources p(u, s, x). probs is row-major over (u, s, x).
LDPF_API ldpf_status ldpf_source_create(int card_u, int card_s, int card_x,
                                        const double* probs,
                                        ldpf_source** out);
LDPF_API ldpf_status ldpf_source_random(int card_u, int card_s, int card_x,
                                        uint64_t seed, ldpf_source** out);
LDPF_API ldpf_status ldpf_source_parse(const char* text, ldpf_source** out);
LDPF_API ldpf_status ldpf_source_cards(const ldpf_source* src, int* card_u,
                                       int* card_s, int* card_x);
LDPF_API void ldpf_source_free(ldpf_source* src);

// Channels p(out | in). rows is row-major, in_card x out_card.
LDPF_API ldpf_status ldpf_channel_create(int in_card, int out_card,
                                         const double* rows,
                                         ldpf_channel** out);
LDPF_API ldpf_status ldpf_channel_parse(const char* text, ldpf_channel** out);
LDPF_API ldpf_status ldpf_channel_shape(const ldpf_channel* ch, int* in_card,
                                        int* out_card);
// Copies in_card * out_card entries into rows; len is the buffer length.
LDPF_API ldpf_status ldpf_channel_entries(const ldpf_channel* ch, double* rows,
                                          size_t len);
LDPF_API ldpf_status ldpf_channel_format(const ldpf_channel* ch, char** text);
LDPF_API void ldpf_channel_free(ldpf_channel* ch);

// out = b after a.
LDPF_API ldpf_status ldpf_compose(const ldpf_channel* a, const ldpf_channel* b,
                                  ldpf_channel** out);
// Exact channel of d-fold k-ary randomized response with total budget eps.
LDPF_API ldpf_status ldpf_rr_channel(double epsilon, int k, int d,
                                     ldpf_channel** out);
LDPF_API ldpf_status ldpf_verify_ldp(const ldpf_channel* ch, double epsilon,
                                     double* max_log_ratio, int* pass);
LDPF_API ldpf_status ldpf_check_lemma1(const ldpf_channel* encoder,
                                       const ldpf_channel* mechanism,
                                       double epsilon,
                                       double* composed_max_log_ratio,
                                       int* pass);
// I(A;B) in nats under p(u, s, x) p(z | x).
LDPF_API ldpf_status ldpf_mutual_information(const ldpf_source* src,
                                             const ldpf_channel* channel,
                                             ldpf_axis a, ldpf_axis b,
                                             double* out);

LDPF_API void ldpf_solver_options_default(ldpf_solver_options* opts);
// Solves for the encoder under k-ary randomized response, k = max(2, |X|).
// encoder may be NULL.
LDPF_API ldpf_status ldpf_solve_g(const ldpf_source* src, double epsilon,
                                  double beta, const ldpf_solver_options* opts,
                                  ldpf_frontier_point* point,
                                  ldpf_channel** encoder);

LDPF_API ldpf_status ldpf_config_default(ldpf_config** out);
LDPF_API ldpf_status ldpf_config_parse(const char* text, ldpf_config** out);
LDPF_API ldpf_status ldpf_config_load(const char* path, ldpf_config** out);
LDPF_API ldpf_status ldpf_config_set(ldpf_config* cfg, const char* key,
                                     const char* value);
LDPF_API ldpf_status ldpf_config_get(const ldpf_config* cfg, const char* key,
                                     char** value);
LDPF_API ldpf_status ldpf_config_hash(const ldpf_config* cfg, char** hash);
LDPF_API ldpf_status ldpf_config_canonical(const ldpf_config* cfg,
                                           char** text);
LDPF_API void ldpf_config_free(ldpf_config* cfg);

// Comma-separated list of command names.
LDPF_API const char* ldpf_command_names(void);
// Runs a pipeline command, writing artifacts under out_dir. log may be NULL.
LDPF_API ldpf_status ldpf_run_command(const ldpf_config* cfg,
                                      const char* command, const char* out_dir,
                                      int jobs, char** log);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // LDPFAIR_LDPFAIR_H_
