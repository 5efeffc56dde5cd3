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

#include <span>
#include <vector>

#include "scenarios/scenario.hpp"

namespace aoilab {

struct TableOptions {
    double lambda = 1.0;
    std::uint32_t replications = 100;
    std::uint64_t departures = 100'000;
    std::uint64_t warmup = 10'000;
    std::uint64_t seed = kDefaultSeed;
    unsigned threads = 0;
};

struct TableRow {
    std::vector<double> loads;  // per-position utilisation, in tandem order
    double age_av = 0;          // mean of per-replication average ages
    double age_sd = 0;          // sd of per-replication average ages
    double age_lb = 0;          // interval bound, final queue as listed
    double age_ub = 0;
    std::vector<double> rep_means;  // per-replication average ages
};

/// Simulates a tandem for each ordering of the given loads (load = lambda /
/// service rate) and pairs it with the interval bounds for that ordering.
std::vector<TableRow> reproduce_tandem_table(
    std::span<const double> loads,
    const std::vector<std::vector<std::size_t>>& orderings,
    const TableOptions& opts);

/// All n! orderings (guarded to small n).
std::vector<std::vector<std::size_t>> all_orderings(std::size_t n);

/// Identity ordering (slowest server last when loads are ascending).
std::vector<std::size_t> identity_ordering(std::size_t n);

/// n loads equally spaced over [lo, hi].
std::vector<double> equispaced_loads(std::size_t n, double lo = 0.1,
                                     double hi = 0.9);

struct OrderingInvariance {
    std::vector<double> means;  // per-ordering replication means
    std::vector<double> ses;
    double max_gap = 0;         // largest |mean_i - mean_j|
    double max_gap_sigmas = 0;  // that gap in pooled-standard-error units
    double anova_p = 1;         // one-way ANOVA across orderings
};

/// Compares the empirical age across server orderings. Reports the evidence;
/// asserts nothing.
OrderingInvariance ordering_invariance(
    std::span<const double> loads,
    const std::vector<std::vector<std::size_t>>& orderings,
    const TableOptions& opts);

/// Same comparison computed from already-simulated table rows.
OrderingInvariance ordering_stats_from_rows(const std::vector<TableRow>& rows);

struct ZwSweepRow {
    double alpha = 0;
    double correction = 0;  // exact, equals the mean equivalent initial age
    double lower = 0;       // correction-term bounds
    double upper = 0;
    double clamped_lower = 0;
};

std::vector<ZwSweepRow> zw_bounds_sweep(double mu,
                                        std::span<const double> alphas);

struct ClosureVerdict {
    std::string name;
    double measured = 0;   // mean simulated average age
    double predicted = 0;  // delta0 + measured rate * measured cross moment
    double gap = 0;        // measured closure residual vs analytic baseline
    double se = 0;
    double sigmas = 0;
    bool pass = false;
};

/// Checks the aged-updates decomposition on each scenario: the simulated age
/// minus the measured correction must match the zero-age baseline within
/// three combined standard errors.
std::vector<ClosureVerdict> decomposition_closure_suite(
    std::span<const ScenarioSpec> scenarios, unsigned threads = 0);

/// The five canonical closure scenarios used by the verification suite:
/// 20 replications of 1e5 measured deliveries each.
std::vector<ScenarioSpec> canonical_closure_scenarios(
    std::uint64_t seed = kDefaultSeed, std::uint32_t replications = 20,
    std::uint64_t departures = 110'000, std::uint64_t warmup = 10'000);

}  // namespace aoilab
