/*
   Copyright 2026 the aoilab authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

/*
 * aoilab -- C API of the age-of-information queueing laboratory.
 *
 * The library evaluates closed-form average-age results for a family of
 * queueing systems and cross-validates them with deterministic simulation.
 * All entry points return an aoi_status; on failure, aoi_last_error() gives
 * a human-readable message for the calling thread. Opaque handles own their
 * resources and are released with their matching _free function.
 */
#ifndef AOILAB_H
#define AOILAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum aoi_status {
    AOI_OK = 0,
    AOI_ERR_DOMAIN = 2,   /* instability / parameters outside a formula's domain */
    AOI_ERR_USAGE = 64,   /* unknown model, malformed config, bad arguments */
    AOI_ERR_INTERNAL = 70 /* failed internal cross-check */
} aoi_status;

const char* aoi_version(void);
uint64_t aoi_default_seed(void);

/* Message from the last failing call on this thread; empty string if none. */
const char* aoi_last_error(void);

/* ------------------------------------------------------------------ */
/* Closed-form evaluation                                              */
/* ------------------------------------------------------------------ */

typedef struct aoi_params {
    double lambda;
    double mu;
    double gamma;
    double theta;
    double alpha;
    const double* rates; /* tandem-chain service rates, in order */
    size_t n_rates;
} aoi_params;

typedef struct aoi_report {
    double delta0;       /* zero-age baseline average age */
    double correction;   /* aged-updates correction term */
    double delta_total;  /* end-to-end average age */
    int has_bounds;
    double bound_lower;  /* bounds on delta_total when defined */
    double bound_upper;
    double bound_lower_clamped;
    double mean_age;     /* mean / sd of the initial-age process */
    double sd_age;
    size_t n_extras;     /* model-specific named values */
    char extra_names[8][24];
    double extra_values[8];
} aoi_report;

/* Models: mm1, zero-wait, tandem-two, tandem-chain, hetero-tandem, retrial,
 * mm11, hem1. */
aoi_status aoi_analytic(const char* model, const aoi_params* params,
                        aoi_report* out);

/* ------------------------------------------------------------------ */
/* Simulation                                                          */
/* ------------------------------------------------------------------ */

typedef struct aoi_run_stats {
    double aaoi;
    double eff_rate;
    double cross_moment;
    double correlation;
    double cv_y;
    double mean_age;
    double sd_age;
    double far_rate;
    double se_aaoi;
    double se_eff_rate;
    double se_cross;
    double elapsed;
    uint64_t delivered;
    uint64_t blocked;
    int se_reliable;
} aoi_run_stats;

typedef struct aoi_scenario aoi_scenario; /* opaque */
typedef struct aoi_results aoi_results;   /* opaque */

/* Builds a scenario. `system` is one of: mm1, zero-wait, tandem-two,
 * tandem-chain, hetero-tandem, retrial, independent-feed. `age_feed` is a
 * distribution expression such as "pointmass(2)" or "exponential(1)"; pass
 * NULL for zero initial ages. Pass warmup = UINT64_MAX for the default
 * policy (max(1e4, 5%) of the run, clamped to half). */
aoi_status aoi_scenario_create(const char* system, const aoi_params* params,
                               const char* age_feed, uint32_t replications,
                               uint64_t departures, uint64_t warmup,
                               uint64_t seed, aoi_scenario** out);

/* Parses / serializes the flat key-value config format. The serialized text
 * round-trips losslessly through aoi_scenario_parse. Free the string with
 * aoi_string_free. */
aoi_status aoi_scenario_parse(const char* config_text, aoi_scenario** out);
aoi_status aoi_scenario_serialize(const aoi_scenario* scenario, char** out);
void aoi_scenario_free(aoi_scenario* scenario);

/* Runs every replication (threads = 0 picks the hardware default; the
 * result is identical for any thread count). When keep_packet_log is
 * nonzero the first replication records its delivered packets. */
aoi_status aoi_scenario_run(const aoi_scenario* scenario, unsigned threads,
                            int keep_packet_log, aoi_results** out);

size_t aoi_results_count(const aoi_results* results);
aoi_status aoi_results_row(const aoi_results* results, size_t index,
                           aoi_run_stats* out);
/* Mean/sd/se of per-replication average ages plus the closure diagnostics. */
aoi_status aoi_results_aggregate(const aoi_results* results,
                                 aoi_run_stats* out);
aoi_status aoi_results_reference(const aoi_results* results,
                                 aoi_report* out);
/* Writes "id,generation,arrival,service_start,departure,initial_age" rows
 * for the recorded replication. */
aoi_status aoi_results_write_packet_log(const aoi_results* results,
                                        const char* path);
void aoi_results_free(aoi_results* results);

void aoi_string_free(char* text);

/* ------------------------------------------------------------------ */
/* Experiment harnesses                                                */
/* ------------------------------------------------------------------ */

typedef struct aoi_table_row {
    double loads[16];
    size_t n_loads;
    double age_av;
    double age_sd;
    double age_lb;
    double age_ub;
} aoi_table_row;

/* Simulates a tandem for orderings of the given loads (load = lambda/rate).
 * mode: "as-given", "all" (every permutation, up to 8 stages), or
 * "slowest-last" (ascending load). rows/n_rows: caller-owned buffer and its
 * capacity; n_rows is set to the number written. */
aoi_status aoi_tandem_table(const double* loads, size_t n_loads,
                            const char* mode, double lambda,
                            uint32_t replications, uint64_t departures,
                            uint64_t warmup, uint64_t seed, unsigned threads,
                            aoi_table_row* rows, size_t* n_rows);

typedef struct aoi_zw_row {
    double alpha;
    double correction;
    double lower;
    double upper;
    double clamped_lower;
} aoi_zw_row;

/* Correction term and bounds of the zero-wait erasure model over an alpha
 * grid; rows must hold n_alphas entries. */
aoi_status aoi_zw_bounds_sweep(double mu, const double* alphas,
                               size_t n_alphas, aoi_zw_row* rows);

/* ------------------------------------------------------------------ */
/* Verification suites                                                 */
/* ------------------------------------------------------------------ */

typedef void (*aoi_verify_line_cb)(const char* name, int passed,
                                   const char* detail, void* user);

/* Suites: theorem1, appendix-lemmas, bounds. Invokes cb per check and sets
 * *n_failed. Returns AOI_ERR_USAGE for unknown suites; a completed run with
 * failing checks still returns AOI_OK. */
aoi_status aoi_verify(const char* suite, uint64_t seed, unsigned threads,
                      aoi_verify_line_cb cb, void* user, int* n_failed);

#ifdef __cplusplus
}
#endif

#endif /* AOILAB_H */
