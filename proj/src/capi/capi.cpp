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
#include "aoilab.h"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "scenarios/experiments.hpp"
#include "scenarios/scenario.hpp"
#include "scenarios/verify.hpp"
#include "support/errors.hpp"

#define AOILAB_EXPORT __attribute__((visibility("default")))

namespace {

thread_local std::string g_last_error;

aoi_status capture(const std::function<void()>& body) {
    try {
        body();
        g_last_error.clear();
        return AOI_OK;
    } catch (const aoilab::UsageError& e) {
        g_last_error = e.what();
        return AOI_ERR_USAGE;
    } catch (const aoilab::DomainError& e) {
        g_last_error = e.what();
        return AOI_ERR_DOMAIN;
    } catch (const aoilab::InternalError& e) {
        g_last_error = e.what();
        return AOI_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return AOI_ERR_USAGE;
    }
}

aoilab::analytic::ModelParams to_model_params(const aoi_params* p) {
    aoilab::analytic::ModelParams mp;
    if (p == nullptr) return mp;
    mp.lambda = p->lambda;
    mp.mu = p->mu;
    mp.gamma = p->gamma;
    mp.theta = p->theta;
    mp.alpha = p->alpha;
    if (p->rates != nullptr)
        mp.rates.assign(p->rates, p->rates + p->n_rates);
    return mp;
}

void fill_report(const aoilab::analytic::AnalyticReport& r, aoi_report* out) {
    std::memset(out, 0, sizeof(*out));
    out->delta0 = r.delta0;
    out->correction = r.correction;
    out->delta_total = r.delta_total;
    out->has_bounds = r.has_bounds ? 1 : 0;
    out->bound_lower = r.bounds.lower;
    out->bound_upper = r.bounds.upper;
    out->bound_lower_clamped = r.bound_lower_clamped;
    out->mean_age = r.mean_age;
    out->sd_age = r.sd_age;
    out->n_extras = 0;
    for (const auto& [name, value] : r.extras) {
        if (out->n_extras >= 8) break;
        std::snprintf(out->extra_names[out->n_extras],
                      sizeof(out->extra_names[0]), "%s", name.c_str());
        out->extra_values[out->n_extras] = value;
        ++out->n_extras;
    }
}

void fill_stats(const aoilab::sim::RunStatistics& s, aoi_run_stats* out) {
    std::memset(out, 0, sizeof(*out));
    out->aaoi = s.aaoi;
    out->eff_rate = s.eff_rate;
    out->cross_moment = s.cross_moment;
    out->correlation = s.correlation;
    out->cv_y = s.cv_y;
    out->mean_age = s.mean_age;
    out->sd_age = s.sd_age;
    out->far_rate = s.far_rate;
    out->se_aaoi = s.se_aaoi;
    out->se_eff_rate = s.se_eff_rate;
    out->se_cross = s.se_cross;
    out->elapsed = s.elapsed;
    out->delivered = s.delivered;
    out->blocked = s.blocked;
    out->se_reliable = s.se_reliable ? 1 : 0;
}

}  // namespace

struct aoi_scenario {
    aoilab::ScenarioSpec spec;
};

struct aoi_results {
    aoilab::ExperimentResult result;
    std::vector<aoilab::sim::PacketRecord> packet_log;
};

extern "C" {

AOILAB_EXPORT const char* aoi_version(void) { return aoilab::kVersion; }

AOILAB_EXPORT uint64_t aoi_default_seed(void) { return aoilab::kDefaultSeed; }

AOILAB_EXPORT const char* aoi_last_error(void) { return g_last_error.c_str(); }

AOILAB_EXPORT aoi_status aoi_analytic(const char* model,
                                      const aoi_params* params,
                                      aoi_report* out) {
    return capture([&] {
        if (model == nullptr || out == nullptr)
            throw aoilab::UsageError("aoi_analytic: null argument");
        const auto report =
            aoilab::analytic::analytic_report(model, to_model_params(params));
        fill_report(report, out);
    });
}

AOILAB_EXPORT aoi_status aoi_scenario_create(
    const char* system, const aoi_params* params, const char* age_feed,
    uint32_t replications, uint64_t departures, uint64_t warmup,
    uint64_t seed, aoi_scenario** out) {
    return capture([&] {
        if (system == nullptr || out == nullptr)
            throw aoilab::UsageError("aoi_scenario_create: null argument");
        aoilab::ScenarioSpec spec;
        spec.system = aoilab::system_from_name(system);
        spec.name = system;
        if (params != nullptr) {
            spec.lambda = params->lambda;
            spec.mu = params->mu;
            spec.gamma = params->gamma;
            spec.theta = params->theta;
            spec.alpha = params->alpha;
            if (params->rates != nullptr)
                spec.rates.assign(params->rates,
                                  params->rates + params->n_rates);
        }
        if (age_feed != nullptr) spec.age_feed = age_feed;
        spec.replications = replications;
        spec.departures = departures;
        spec.warmup = warmup == UINT64_MAX
                          ? aoilab::sim::default_warmup(departures)
                          : warmup;
        spec.seed = seed;
        *out = new aoi_scenario{std::move(spec)};
    });
}

AOILAB_EXPORT aoi_status aoi_scenario_parse(const char* config_text,
                                            aoi_scenario** out) {
    return capture([&] {
        if (config_text == nullptr || out == nullptr)
            throw aoilab::UsageError("aoi_scenario_parse: null argument");
        *out = new aoi_scenario{aoilab::parse_scenario(config_text)};
    });
}

AOILAB_EXPORT aoi_status aoi_scenario_serialize(const aoi_scenario* scenario,
                                                char** out) {
    return capture([&] {
        if (scenario == nullptr || out == nullptr)
            throw aoilab::UsageError("aoi_scenario_serialize: null argument");
        const std::string text = aoilab::serialize_scenario(scenario->spec);
        char* buf = new char[text.size() + 1];
        std::memcpy(buf, text.c_str(), text.size() + 1);
        *out = buf;
    });
}

AOILAB_EXPORT void aoi_scenario_free(aoi_scenario* scenario) {
    delete scenario;
}

AOILAB_EXPORT aoi_status aoi_scenario_run(const aoi_scenario* scenario,
                                          unsigned threads,
                                          int keep_packet_log,
                                          aoi_results** out) {
    return capture([&] {
        if (scenario == nullptr || out == nullptr)
            throw aoilab::UsageError("aoi_scenario_run: null argument");
        auto results = std::make_unique<aoi_results>();
        results->result = aoilab::run_scenario(scenario->spec, threads);
        if (keep_packet_log != 0) {
            aoilab::RngStream rng(scenario->spec.seed, 0);
            aoilab::sim::CollectOptions collect;
            collect.log = true;
            auto run =
                aoilab::run_scenario_once(scenario->spec, rng, collect);
            results->packet_log = std::move(run.log);
        }
        *out = results.release();
    });
}

AOILAB_EXPORT size_t aoi_results_count(const aoi_results* results) {
    return results == nullptr ? 0 : results->result.replications.size();
}

AOILAB_EXPORT aoi_status aoi_results_row(const aoi_results* results,
                                         size_t index, aoi_run_stats* out) {
    return capture([&] {
        if (results == nullptr || out == nullptr)
            throw aoilab::UsageError("aoi_results_row: null argument");
        if (index >= results->result.replications.size())
            throw aoilab::UsageError("aoi_results_row: index out of range");
        fill_stats(results->result.replications[index], out);
    });
}

AOILAB_EXPORT aoi_status aoi_results_aggregate(const aoi_results* results,
                                               aoi_run_stats* out) {
    return capture([&] {
        if (results == nullptr || out == nullptr)
            throw aoilab::UsageError("aoi_results_aggregate: null argument");
        const auto& agg = results->result.aggregate;
        std::memset(out, 0, sizeof(*out));
        out->aaoi = agg.mean_aaoi;
        out->eff_rate = agg.mean_eff;
        out->cross_moment = agg.mean_cross;
        out->correlation = agg.mean_corr;
        out->cv_y = agg.mean_cv_y;
        out->mean_age = agg.mean_age;
        out->sd_age = agg.mean_sd_age;
        out->far_rate = agg.mean_far_rate;
        out->se_aaoi = agg.se_aaoi;
        out->delivered = results->result.replications.empty()
                             ? 0
                             : results->result.replications.front().delivered;
        out->se_reliable = results->result.replications.size() >= 2 ? 1 : 0;
    });
}

AOILAB_EXPORT aoi_status aoi_results_reference(const aoi_results* results,
                                               aoi_report* out) {
    return capture([&] {
        if (results == nullptr || out == nullptr)
            throw aoilab::UsageError("aoi_results_reference: null argument");
        const auto& ref = results->result.reference;
        std::memset(out, 0, sizeof(*out));
        out->delta0 = ref.delta0;
        out->correction = ref.correction;
        out->delta_total = ref.delta_total;
        out->has_bounds = ref.has_bounds ? 1 : 0;
        out->bound_lower = ref.bounds.lower;
        out->bound_upper = ref.bounds.upper;
        out->bound_lower_clamped = ref.bounds.clamped().lower;
    });
}

AOILAB_EXPORT aoi_status aoi_results_write_packet_log(
    const aoi_results* results, const char* path) {
    return capture([&] {
        if (results == nullptr || path == nullptr)
            throw aoilab::UsageError(
                "aoi_results_write_packet_log: null argument");
        if (results->packet_log.empty())
            throw aoilab::UsageError(
                "no packet log recorded; run with keep_packet_log");
        std::FILE* f = std::fopen(path, "w");
        if (f == nullptr)
            throw aoilab::UsageError(std::string("cannot open ") + path);
        std::fputs("id,generation,arrival,service_start,departure,initial_age\n",
                   f);
        for (const auto& p : results->packet_log) {
            std::fprintf(f, "%llu,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                         static_cast<unsigned long long>(p.id), p.generation,
                         p.arrival, p.service_start, p.departure,
                         p.initial_age);
        }
        std::fclose(f);
    });
}

AOILAB_EXPORT void aoi_results_free(aoi_results* results) { delete results; }

AOILAB_EXPORT void aoi_string_free(char* text) { delete[] text; }

AOILAB_EXPORT aoi_status aoi_tandem_table(
    const double* loads, size_t n_loads, const char* mode, double lambda,
    uint32_t replications, uint64_t departures, uint64_t warmup,
    uint64_t seed, unsigned threads, aoi_table_row* rows, size_t* n_rows) {
    return capture([&] {
        if (loads == nullptr || mode == nullptr || rows == nullptr ||
            n_rows == nullptr)
            throw aoilab::UsageError("aoi_tandem_table: null argument");
        if (n_loads == 0 || n_loads > 16)
            throw aoilab::UsageError("aoi_tandem_table: 1..16 loads");
        std::vector<double> load_vec(loads, loads + n_loads);
        std::vector<std::vector<std::size_t>> orderings;
        const std::string m = mode;
        if (m == "all") {
            orderings = aoilab::all_orderings(n_loads);
        } else if (m == "as-given") {
            orderings.push_back(aoilab::identity_ordering(n_loads));
        } else if (m == "slowest-last") {
            auto perm = aoilab::identity_ordering(n_loads);
            std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
                return load_vec[a] < load_vec[b];
            });
            orderings.push_back(std::move(perm));
        } else {
            throw aoilab::UsageError(
                "aoi_tandem_table: mode must be all, as-given or "
                "slowest-last");
        }
        if (orderings.size() > *n_rows)
            throw aoilab::UsageError("aoi_tandem_table: rows buffer too small");
        aoilab::TableOptions opts;
        opts.lambda = lambda;
        opts.replications = replications;
        opts.departures = departures;
        opts.warmup = warmup == UINT64_MAX
                          ? aoilab::sim::default_warmup(departures)
                          : warmup;
        opts.seed = seed;
        opts.threads = threads;
        const auto table =
            aoilab::reproduce_tandem_table(load_vec, orderings, opts);
        for (std::size_t i = 0; i < table.size(); ++i) {
            aoi_table_row& row = rows[i];
            std::memset(&row, 0, sizeof(row));
            row.n_loads = table[i].loads.size();
            for (std::size_t k = 0; k < table[i].loads.size(); ++k)
                row.loads[k] = table[i].loads[k];
            row.age_av = table[i].age_av;
            row.age_sd = table[i].age_sd;
            row.age_lb = table[i].age_lb;
            row.age_ub = table[i].age_ub;
        }
        *n_rows = table.size();
    });
}

AOILAB_EXPORT aoi_status aoi_zw_bounds_sweep(double mu, const double* alphas,
                                             size_t n_alphas,
                                             aoi_zw_row* rows) {
    return capture([&] {
        if (alphas == nullptr || rows == nullptr)
            throw aoilab::UsageError("aoi_zw_bounds_sweep: null argument");
        std::vector<double> grid(alphas, alphas + n_alphas);
        const auto sweep = aoilab::zw_bounds_sweep(mu, grid);
        for (std::size_t i = 0; i < sweep.size(); ++i) {
            rows[i].alpha = sweep[i].alpha;
            rows[i].correction = sweep[i].correction;
            rows[i].lower = sweep[i].lower;
            rows[i].upper = sweep[i].upper;
            rows[i].clamped_lower = sweep[i].clamped_lower;
        }
    });
}

AOILAB_EXPORT aoi_status aoi_verify(const char* suite, uint64_t seed,
                                    unsigned threads, aoi_verify_line_cb cb,
                                    void* user, int* n_failed) {
    return capture([&] {
        if (suite == nullptr)
            throw aoilab::UsageError("aoi_verify: null suite");
        const auto result = aoilab::verify::run_suite(suite, seed, threads);
        for (const auto& line : result.lines) {
            if (cb != nullptr)
                cb(line.name.c_str(), line.pass ? 1 : 0, line.detail.c_str(),
                   user);
        }
        if (n_failed != nullptr) *n_failed = result.failed();
    });
}

}  // extern "C"
