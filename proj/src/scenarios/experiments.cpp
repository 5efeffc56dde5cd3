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
#include "scenarios/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "support/errors.hpp"
#include "support/numerics.hpp"
#include "support/stats.hpp"

namespace aoilab {

std::vector<std::vector<std::size_t>> all_orderings(std::size_t n) {
    require_domain(n >= 1 && n <= 8, "all_orderings supports 1..8 positions");
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<std::size_t>> out;
    do {
        out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

std::vector<std::size_t> identity_ordering(std::size_t n) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    return perm;
}

std::vector<double> equispaced_loads(std::size_t n, double lo, double hi) {
    require_domain(n >= 1, "need at least one load");
    std::vector<double> loads(n);
    for (std::size_t i = 0; i < n; ++i) {
        loads[i] = n == 1 ? lo
                          : lo + (hi - lo) * static_cast<double>(i) /
                                     static_cast<double>(n - 1);
    }
    return loads;
}

std::vector<TableRow> reproduce_tandem_table(
    std::span<const double> loads,
    const std::vector<std::vector<std::size_t>>& orderings,
    const TableOptions& opts) {
    for (double load : loads)
        require_domain(load > 0 && load < 1, "loads must lie in (0, 1)");
    require_domain(!orderings.empty(), "need at least one ordering");
    std::vector<TableRow> rows;
    rows.reserve(orderings.size());
    for (std::size_t o = 0; o < orderings.size(); ++o) {
        const auto& ordering = orderings[o];
        require_domain(ordering.size() == loads.size(),
                       "ordering must be a permutation of the loads");
        std::vector<bool> seen(loads.size(), false);
        TableRow row;
        std::vector<double> rates;
        for (std::size_t idx : ordering) {
            require_domain(idx < loads.size() && !seen[idx],
                           "ordering must be a permutation of the loads");
            seen[idx] = true;
            row.loads.push_back(loads[idx]);
            rates.push_back(opts.lambda / loads[idx]);
        }
        const std::span<const double> priors(rates.data(), rates.size() - 1);
        const auto bounds =
            analytic::tandem_chain_bounds(opts.lambda, priors, rates.back());
        row.age_lb = bounds.interval.lower;
        row.age_ub = bounds.interval.upper;

        // Stream ids stay distinct across orderings so rows are independent.
        auto runs = sim::run_replications(
            opts.replications, opts.seed, opts.threads,
            [&](std::uint32_t, RngStream& rng) {
                sim::RunOptions ro;
                ro.departures = opts.departures;
                ro.warmup = opts.warmup;
                return sim::run_tandem(rates, opts.lambda, ro, rng);
            },
            /*stream_base=*/o * opts.replications);
        SampleStats stats;
        for (const auto& r : runs) {
            row.rep_means.push_back(r.stats.aaoi);
            stats.add(r.stats.aaoi);
        }
        row.age_av = stats.mean();
        row.age_sd = stats.sd();
        rows.push_back(std::move(row));
    }
    return rows;
}

OrderingInvariance ordering_invariance(
    std::span<const double> loads,
    const std::vector<std::vector<std::size_t>>& orderings,
    const TableOptions& opts) {
    return ordering_stats_from_rows(
        reproduce_tandem_table(loads, orderings, opts));
}

OrderingInvariance ordering_stats_from_rows(
    const std::vector<TableRow>& rows) {
    OrderingInvariance out;
    for (const auto& row : rows) {
        out.means.push_back(row.age_av);
        out.ses.push_back(row.age_sd /
                          std::sqrt(static_cast<double>(row.rep_means.size())));
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            const double gap = std::fabs(out.means[i] - out.means[j]);
            const double pooled = std::sqrt(out.ses[i] * out.ses[i] +
                                            out.ses[j] * out.ses[j]);
            out.max_gap = std::max(out.max_gap, gap);
            if (pooled > 0)
                out.max_gap_sigmas = std::max(out.max_gap_sigmas, gap / pooled);
        }
    }
    // One-way ANOVA over per-replication means.
    const std::size_t k = rows.size();
    std::size_t total_n = 0;
    double grand = 0;
    for (const auto& row : rows) {
        total_n += row.rep_means.size();
        for (double v : row.rep_means) grand += v;
    }
    if (k >= 2 && total_n > k) {
        grand /= static_cast<double>(total_n);
        double ssb = 0, ssw = 0;
        for (const auto& row : rows) {
            const double n = static_cast<double>(row.rep_means.size());
            double mean = 0;
            for (double v : row.rep_means) mean += v;
            mean /= n;
            ssb += n * (mean - grand) * (mean - grand);
            for (double v : row.rep_means) ssw += (v - mean) * (v - mean);
        }
        const double d1 = static_cast<double>(k - 1);
        const double d2 = static_cast<double>(total_n - k);
        const double f = (ssb / d1) / (ssw / d2);
        out.anova_p = f_distribution_sf(f, d1, d2);
    }
    return out;
}

std::vector<ZwSweepRow> zw_bounds_sweep(double mu,
                                        std::span<const double> alphas) {
    std::vector<ZwSweepRow> rows;
    rows.reserve(alphas.size());
    for (double alpha : alphas) {
        const Distribution age = analytic::zw_initial_age_mixture(alpha, mu);
        ZwSweepRow row;
        row.alpha = alpha;
        row.correction = age.mean();
        const auto b = analytic::correction_bounds(age.mean(), age.sd(), 1.0);
        row.lower = b.lower;
        row.upper = b.upper;
        row.clamped_lower = b.clamped().lower;
        rows.push_back(row);
    }
    return rows;
}

std::vector<ClosureVerdict> decomposition_closure_suite(
    std::span<const ScenarioSpec> scenarios, unsigned threads) {
    std::vector<ClosureVerdict> out;
    for (const auto& spec : scenarios) {
        const ExperimentResult res = run_scenario(spec, threads);
        ClosureVerdict v;
        v.name = spec.name;
        v.measured = res.aggregate.mean_aaoi;
        v.predicted = res.reference.delta0 +
                      res.aggregate.mean_eff * res.aggregate.mean_cross;
        v.gap = res.aggregate.closure_gap;
        v.se = res.aggregate.closure_se;
        v.sigmas = res.aggregate.closure_sigmas;
        v.pass = res.aggregate.closure_pass;
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<ScenarioSpec> canonical_closure_scenarios(
    std::uint64_t seed, std::uint32_t replications, std::uint64_t departures,
    std::uint64_t warmup) {
    std::vector<ScenarioSpec> specs(5);
    specs[0].name = "fixed-delay-feed";
    specs[0].system = System::IndependentFeed;
    specs[0].lambda = 1;
    specs[0].mu = 2;
    specs[0].age_feed = "pointmass(2)";

    specs[1].name = "zero-wait";
    specs[1].system = System::ZeroWait;
    specs[1].alpha = 0.5;
    specs[1].mu = 1;

    specs[2].name = "tandem-two";
    specs[2].system = System::TandemTwo;
    specs[2].lambda = 1;
    specs[2].gamma = 2;
    specs[2].mu = 2;

    specs[3].name = "hetero-tandem";
    specs[3].system = System::HeteroTandem;
    specs[3].lambda = 1;
    specs[3].gamma = 1;
    specs[3].mu = 2;

    specs[4].name = "retrial";
    specs[4].system = System::Retrial;
    specs[4].lambda = 1;
    specs[4].theta = 1;
    specs[4].mu = 4;

    for (auto& s : specs) {
        s.seed = seed;
        s.replications = replications;
        s.departures = departures;
        s.warmup = warmup;
    }
    return specs;
}

}  // namespace aoilab
