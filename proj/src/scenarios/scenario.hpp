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
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "analytic/formulas.hpp"
#include "simkernel/runners.hpp"

namespace aoilab {

inline constexpr std::uint64_t kDefaultSeed = 20260808;
inline constexpr const char* kVersion = "0.1.0";

enum class System {
    MM1,
    ZeroWait,
    TandemTwo,
    TandemChain,
    HeteroTandem,
    Retrial,
    IndependentFeed,
};

std::string system_name(System s);
System system_from_name(const std::string& name);  // throws UsageError

/// Declarative experiment: one queueing system, its parameters, and the
/// replication plan. Serializes losslessly to a flat key-value config.
struct ScenarioSpec {
    std::string name = "scenario";
    System system = System::MM1;
    double lambda = 1, mu = 2, gamma = 2, theta = 1, alpha = 0;
    std::vector<double> rates;          // tandem-chain service rates
    std::string age_feed;               // distribution expression (feed runs)
    std::vector<std::uint32_t> ordering;  // optional permutation of rates
    std::uint32_t replications = 1;
    std::uint64_t departures = 100'000;
    std::uint64_t warmup = 10'000;
    std::uint64_t seed = kDefaultSeed;

    bool operator==(const ScenarioSpec&) const = default;

    /// Service rates with the ordering permutation applied.
    std::vector<double> ordered_rates() const;
};

ScenarioSpec parse_scenario(const std::string& config_text);
std::string serialize_scenario(const ScenarioSpec& spec);

/// Closed-form reference values the simulation is compared against.
struct AnalyticReference {
    double delta0 = 0;      // zero-age baseline of the final queue
    double correction = 0;  // exact correction term, when known
    double delta_total = 0;
    bool has_exact_total = false;
    bool has_bounds = false;
    analytic::BoundInterval bounds;  // on the end-to-end average age
};

AnalyticReference analytic_reference(const ScenarioSpec& spec);

struct Aggregate {
    double mean_aaoi = 0, sd_aaoi = 0, se_aaoi = 0;
    double mean_eff = 0, mean_cross = 0, mean_corr = 0, mean_cv_y = 0;
    double mean_age = 0, mean_sd_age = 0, mean_far_rate = 0;
    // decomposition closure: mean over replications of
    // aaoi_r - eff_r * cross_r, minus the analytic baseline
    double closure_gap = 0, closure_se = 0, closure_sigmas = 0;
    bool closure_pass = false;
};

struct ExperimentResult {
    ScenarioSpec spec;
    std::vector<sim::RunStatistics> replications;
    Aggregate aggregate;
    AnalyticReference reference;
};

/// Runs one replication of the scenario on the given stream.
sim::RunResult run_scenario_once(const ScenarioSpec& spec, RngStream& rng,
                                 const sim::CollectOptions& collect = {});

/// Runs all replications (streams seed..seed x rep) and aggregates.
ExperimentResult run_scenario(const ScenarioSpec& spec, unsigned threads = 0);

}  // namespace aoilab
