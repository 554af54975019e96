// Copyright 2026 The noisymc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to noisymc. All functions return an nmc_status; on failure a
 * description is available from nmc_last_error() on the calling thread.
 *
 * Text results are copied into caller buffers. Pass buf = NULL, cap = 0 to
 * query the size: *needed receives the length including the terminating
 * NUL. A buffer that is too small yields NMC_ERR_SIZE and is left holding
 * a truncated, NUL-terminated prefix. */
#ifndef NOISYMC_NMC_H_
#define NOISYMC_NMC_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define NMC_API __declspec(dllexport)
#else
#define NMC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nmc_status {
  NMC_OK = 0,
  NMC_ERR_DIMENSION = 1,
  NMC_ERR_DOMAIN = 2,
  NMC_ERR_SIZE = 3,
  NMC_ERR_DEGENERATE_WEIGHTS = 4,
  NMC_ERR_CONFIG = 5,
  NMC_ERR_NUMERIC = 6,
  NMC_ERR_IO = 7,
  NMC_ERR_INVALID_ARGUMENT = 8,
  NMC_ERR_INTERNAL = 9
} nmc_status;

NMC_API const char* nmc_version(void);
NMC_API const char* nmc_status_name(nmc_status status);
/* Message of the last failure on this thread ("" if none). */
NMC_API const char* nmc_last_error(void);

/* ---- experiment configuration ---- */

typedef struct nmc_config nmc_config;

/* Defaults of a named preset (see nmc_list_presets). */
NMC_API nmc_status nmc_config_create(const char* experiment, nmc_config** out);
/* key=value file; the experiment key selects the preset first. */
NMC_API nmc_status nmc_config_load_file(const char* path, nmc_config** out);
NMC_API nmc_status nmc_config_set(nmc_config* cfg, const char* key,
                                  const char* value);
NMC_API nmc_status nmc_config_validate(const nmc_config* cfg);
NMC_API nmc_status nmc_config_to_text(const nmc_config* cfg, char* buf,
                                      size_t cap, size_t* needed);
NMC_API void nmc_config_destroy(nmc_config* cfg);

/* One preset per line: name, a tab, then its description. */
NMC_API nmc_status nmc_list_presets(char* buf, size_t cap, size_t* needed);

/* ---- experiment runs ---- */

typedef struct nmc_results nmc_results;

NMC_API nmc_status nmc_run_experiment(const nmc_config* cfg,
                                      nmc_results** out);
NMC_API nmc_status nmc_results_row_count(const nmc_results* res, size_t* out);
/* Oracle units spent by row `row` (the last row is the aggregate). */
NMC_API nmc_status nmc_results_oracle_units(const nmc_results* res,
                                            size_t row, uint64_t* out);
/* Aggregate relative median squared errors (NaN when no truth exists). */
NMC_API nmc_status nmc_results_errors(const nmc_results* res,
                                      double* mean_error, double* var_error);
/* Per-run moment estimates of row `row`; `dim` is the buffer length. */
NMC_API nmc_status nmc_results_moments(const nmc_results* res, size_t row,
                                       double* mean, double* var, size_t dim);
NMC_API nmc_status nmc_results_write_csv(const nmc_results* res,
                                         const char* path, int with_wall_time);
NMC_API nmc_status nmc_results_csv(const nmc_results* res, char* buf,
                                   size_t cap, size_t* needed);
NMC_API nmc_status nmc_results_summary(const nmc_results* res, char* buf,
                                       size_t cap, size_t* needed);
NMC_API void nmc_results_destroy(nmc_results* res);

/* Long PM-MH run for the cart-pole reference histograms, written to
 * out_path. The summary text holds the MMSE policy and its return. */
NMC_API nmc_status nmc_groundtruth_cartpole(const nmc_config* cfg,
                                            uint64_t iterations,
                                            const char* out_path,
                                            char* summary, size_t cap,
                                            size_t* needed);

/* ---- noisy oracles and closed forms ---- */

typedef struct nmc_oracle nmc_oracle;

/* target: "banana", "bimodal" or "gaussmix-1d".
 * noise: "none", "exp" (rate), "rectified" (sigma), "folded" (sigma) or
 * "log-additive" (sigma); `param` is ignored for "none". */
NMC_API nmc_status nmc_oracle_create(const char* target, const char* noise,
                                     double param, uint64_t seed,
                                     nmc_oracle** out);
NMC_API nmc_status nmc_oracle_dimension(const nmc_oracle* o, size_t* out);
NMC_API nmc_status nmc_oracle_evaluate(nmc_oracle* o, const double* theta,
                                       size_t dim, double* out);
/* Exact density p(theta) and mean function m(theta). */
NMC_API nmc_status nmc_oracle_density(const nmc_oracle* o, const double* theta,
                                      size_t dim, double* out);
NMC_API nmc_status nmc_oracle_mean(const nmc_oracle* o, const double* theta,
                                   size_t dim, double* out);
NMC_API nmc_status nmc_oracle_eval_count(const nmc_oracle* o, uint64_t* out);
NMC_API void nmc_oracle_destroy(nmc_oracle* o);

NMC_API nmc_status nmc_rectified_mean(double p, double sigma, double* out);
NMC_API nmc_status nmc_folded_mean(double p, double sigma, double* out);

/* ---- kNN surrogate ---- */

typedef struct nmc_surrogate nmc_surrogate;

NMC_API nmc_status nmc_surrogate_create(size_t dim, const double* lower,
                                        const double* upper, size_t k,
                                        double floor, nmc_surrogate** out);
NMC_API nmc_status nmc_surrogate_insert(nmc_surrogate* s, const double* theta,
                                        size_t dim, double value);
NMC_API nmc_status nmc_surrogate_predict(const nmc_surrogate* s,
                                         const double* theta, size_t dim,
                                         double* out);
NMC_API nmc_status nmc_surrogate_size(const nmc_surrogate* s, size_t* out);
/* Design nodes, one per line: coordinates then value. */
NMC_API nmc_status nmc_surrogate_save(const nmc_surrogate* s,
                                      const char* path);
/* Appends the nodes stored in `path`. */
NMC_API nmc_status nmc_surrogate_load(nmc_surrogate* s, const char* path);
NMC_API void nmc_surrogate_destroy(nmc_surrogate* s);

/* ---- cart-pole ---- */

/* One episode of the linear policy theta[6] from a seeded initial state.
 * trajectory_path may be NULL; otherwise "t s0..s5 a r" lines go there. */
NMC_API nmc_status nmc_cartpole_episode(const double* theta, uint64_t seed,
                                        int symmetric_angles,
                                        const char* trajectory_path,
                                        int* episode_return);

#ifdef __cplusplus
}
#endif

#endif /* NOISYMC_NMC_H_ */
