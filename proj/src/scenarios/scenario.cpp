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
#include "scenarios/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "support/errors.hpp"
#include "support/stats.hpp"

namespace aoilab {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double to_double(const std::string& s, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (...) {
        throw UsageError("config: bad number for '" + key + "': " + s);
    }
}

std::uint64_t to_u64(const std::string& s, const std::string& key) {
    const double v = to_double(s, key);
    if (v < 0 || v != std::floor(v))
        throw UsageError("config: '" + key + "' must be a nonnegative integer");
    return static_cast<std::uint64_t>(v);
}

}  // namespace

std::string system_name(System s) {
    switch (s) {
        case System::MM1: return "mm1";
        case System::ZeroWait: return "zero-wait";
        case System::TandemTwo: return "tandem-two";
        case System::TandemChain: return "tandem-chain";
        case System::HeteroTandem: return "hetero-tandem";
        case System::Retrial: return "retrial";
        case System::IndependentFeed: return "independent-feed";
    }
    return "mm1";
}

System system_from_name(const std::string& name) {
    if (name == "mm1") return System::MM1;
    if (name == "zero-wait") return System::ZeroWait;
    if (name == "tandem-two") return System::TandemTwo;
    if (name == "tandem-chain" || name == "tandem") return System::TandemChain;
    if (name == "hetero-tandem") return System::HeteroTandem;
    if (name == "retrial") return System::Retrial;
    if (name == "independent-feed") return System::IndependentFeed;
    throw UsageError("unknown system: '" + name + "'");
}

std::vector<double> ScenarioSpec::ordered_rates() const {
    if (ordering.empty()) return rates;
    require_domain(ordering.size() == rates.size(),
                   "ordering must be a permutation of the rates list");
    std::vector<bool> seen(rates.size(), false);
    std::vector<double> out;
    out.reserve(rates.size());
    for (std::uint32_t idx : ordering) {
        require_domain(idx < rates.size() && !seen[idx],
                       "ordering must be a permutation of the rates list");
        seen[idx] = true;
        out.push_back(rates[idx]);
    }
    return out;
}

ScenarioSpec parse_scenario(const std::string& config_text) {
    ScenarioSpec spec;
    spec.age_feed.clear();
    std::string section;
    std::istringstream in(config_text);
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError("config: expected 'key = value': " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section == "scenario") {
            if (key == "name") spec.name = value;
            else if (key == "system") spec.system = system_from_name(value);
            else if (key == "replications")
                spec.replications = static_cast<std::uint32_t>(to_u64(value, key));
            else if (key == "departures") spec.departures = to_u64(value, key);
            else if (key == "warmup") spec.warmup = to_u64(value, key);
            else if (key == "seed") spec.seed = to_u64(value, key);
            else if (key == "ordering") {
                spec.ordering.clear();
                for (const auto& part : split(value, ','))
                    spec.ordering.push_back(
                        static_cast<std::uint32_t>(to_u64(trim(part), key)));
            } else
                throw UsageError("config: unknown scenario key '" + key + "'");
        } else if (section == "parameters") {
            if (key == "lambda") spec.lambda = to_double(value, key);
            else if (key == "mu") spec.mu = to_double(value, key);
            else if (key == "gamma") spec.gamma = to_double(value, key);
            else if (key == "theta") spec.theta = to_double(value, key);
            else if (key == "alpha") spec.alpha = to_double(value, key);
            else if (key == "rates") {
                spec.rates.clear();
                for (const auto& part : split(value, ','))
                    spec.rates.push_back(to_double(trim(part), key));
            } else if (key == "age_feed")
                spec.age_feed = value;
            else
                throw UsageError("config: unknown parameter key '" + key + "'");
        } else {
            throw UsageError("config: key outside [scenario]/[parameters]: " +
                             line);
        }
    }
    return spec;
}

std::string serialize_scenario(const ScenarioSpec& spec) {
    std::ostringstream out;
    out << "[scenario]\n";
    out << "name = " << spec.name << "\n";
    out << "system = " << system_name(spec.system) << "\n";
    out << "replications = " << spec.replications << "\n";
    out << "departures = " << spec.departures << "\n";
    out << "warmup = " << spec.warmup << "\n";
    out << "seed = " << spec.seed << "\n";
    if (!spec.ordering.empty()) {
        out << "ordering = ";
        for (std::size_t i = 0; i < spec.ordering.size(); ++i)
            out << (i ? "," : "") << spec.ordering[i];
        out << "\n";
    }
    out << "\n[parameters]\n";
    out << "lambda = " << fmt17(spec.lambda) << "\n";
    out << "mu = " << fmt17(spec.mu) << "\n";
    out << "gamma = " << fmt17(spec.gamma) << "\n";
    out << "theta = " << fmt17(spec.theta) << "\n";
    out << "alpha = " << fmt17(spec.alpha) << "\n";
    if (!spec.rates.empty()) {
        out << "rates = ";
        for (std::size_t i = 0; i < spec.rates.size(); ++i)
            out << (i ? "," : "") << fmt17(spec.rates[i]);
        out << "\n";
    }
    if (!spec.age_feed.empty()) out << "age_feed = " << spec.age_feed << "\n";
    return out.str();
}

AnalyticReference analytic_reference(const ScenarioSpec& spec) {
    using namespace analytic;
    AnalyticReference ref;
    switch (spec.system) {
        case System::MM1:
            ref.delta0 = aaoi_mm1_fcfs(spec.lambda, spec.mu);
            ref.delta_total = ref.delta0;
            ref.has_exact_total = true;
            break;
        case System::IndependentFeed: {
            ref.delta0 = aaoi_mm1_fcfs(spec.lambda, spec.mu);
            const Distribution feed = Distribution::parse(spec.age_feed);
            ref.correction = feed.mean();
            ref.delta_total = ref.delta0 + ref.correction;
            ref.has_exact_total = true;
            const auto b = correction_bounds(feed.mean(), feed.sd(), 1.0);
            ref.bounds = {ref.delta0 + b.lower, ref.delta0 + b.upper};
            ref.has_bounds = true;
            break;
        }
        case System::ZeroWait: {
            ref.delta0 = zw_aaoi(0.0, spec.mu);
            const Distribution age =
                zw_initial_age_mixture(spec.alpha, spec.mu);
            ref.correction = age.mean();
            ref.delta_total = zw_aaoi(spec.alpha, spec.mu);
            ref.has_exact_total = true;
            const auto b = correction_bounds(age.mean(), age.sd(), 1.0);
            ref.bounds = {ref.delta0 + b.lower, ref.delta0 + b.upper};
            ref.has_bounds = true;
            break;
        }
        case System::TandemTwo: {
            ref.delta0 = aaoi_mm1_fcfs(spec.lambda, spec.mu);
            ref.correction =
                spec.lambda *
                tandem_cross_moment(spec.lambda, spec.gamma, spec.mu);
            ref.delta_total = aaoi_tandem_two(spec.lambda, spec.gamma, spec.mu);
            ref.has_exact_total = true;
            const double ea = 1.0 / (spec.gamma - spec.lambda);
            const auto b = correction_bounds(ea, ea, 1.0);
            ref.bounds = {ref.delta0 + b.lower, ref.delta0 + b.upper};
            ref.has_bounds = true;
            break;
        }
        case System::TandemChain: {
            const auto rates = spec.ordered_rates();
            require_domain(!rates.empty(), "tandem-chain needs rates");
            const std::span<const double> priors(rates.data(),
                                                 rates.size() - 1);
            const auto b =
                tandem_chain_bounds(spec.lambda, priors, rates.back());
            ref.delta0 = b.delta0;
            ref.has_bounds = true;
            ref.bounds = b.interval;
            ref.correction = b.mean_age;  // exact only under independence
            ref.delta_total = tandem_heuristic_estimate(b.interval);
            ref.has_exact_total = false;
            break;
        }
        case System::HeteroTandem:
            ref.delta0 = hem1_aaoi(spec.lambda, spec.gamma, spec.mu);
            ref.correction = 1.0 / spec.gamma;
            ref.delta_total =
                tandem_hetero_aaoi(spec.lambda, spec.gamma, spec.mu);
            ref.has_exact_total = true;
            break;
        case System::Retrial: {
            const auto o =
                retrial_orbit_metrics(spec.lambda, spec.theta, spec.mu);
            ref.delta0 =
                aaoi_mm11_nonpreemptive(spec.lambda + spec.theta, spec.mu);
            ref.correction = o.mean_initial_age;
            ref.delta_total = retrial_aaoi(spec.lambda, spec.theta, spec.mu);
            ref.has_exact_total = true;
            break;
        }
    }
    return ref;
}

sim::RunResult run_scenario_once(const ScenarioSpec& spec, RngStream& rng,
                                 const sim::CollectOptions& collect) {
    sim::RunOptions opts;
    opts.departures = spec.departures;
    opts.warmup = spec.warmup;
    opts.collect = collect;
    switch (spec.system) {
        case System::MM1:
            return sim::run_single_node(sim::NodeModel::fcfs(spec.mu),
                                        spec.lambda, sim::AgeFeed{}, opts, rng);
        case System::IndependentFeed:
            return sim::run_single_node(
                sim::NodeModel::fcfs(spec.mu), spec.lambda,
                sim::AgeFeed{Distribution::parse(spec.age_feed)}, opts, rng);
        case System::ZeroWait:
            return sim::run_zero_wait(spec.alpha, spec.mu, opts, rng);
        case System::TandemTwo: {
            const double rates[2] = {spec.gamma, spec.mu};
            return sim::run_tandem(rates, spec.lambda, opts, rng);
        }
        case System::TandemChain: {
            const auto rates = spec.ordered_rates();
            return sim::run_tandem(rates, spec.lambda, opts, rng);
        }
        case System::HeteroTandem:
            return sim::run_hetero_tandem(spec.lambda, spec.gamma, spec.mu,
                                          opts, rng);
        case System::Retrial:
            return sim::run_retrial(spec.lambda, spec.theta, spec.mu, opts,
                                    rng);
    }
    throw DomainError("unknown system");
}

ExperimentResult run_scenario(const ScenarioSpec& spec, unsigned threads) {
    require_domain(spec.replications >= 1, "replications must be >= 1");
    ExperimentResult result;
    result.spec = spec;
    result.reference = analytic_reference(spec);
    auto runs = sim::run_replications(
        spec.replications, spec.seed, threads,
        [&](std::uint32_t, RngStream& rng) {
            return run_scenario_once(spec, rng);
        });
    result.replications.reserve(runs.size());
    SampleStats aaoi, eff, cross, corr, cvy, age, sdage, far, closure;
    for (auto& r : runs) {
        const auto& s = r.stats;
        aaoi.add(s.aaoi);
        eff.add(s.eff_rate);
        cross.add(s.cross_moment);
        corr.add(s.correlation);
        cvy.add(s.cv_y);
        age.add(s.mean_age);
        sdage.add(s.sd_age);
        far.add(s.far_rate);
        closure.add(s.aaoi - s.eff_rate * s.cross_moment);
        result.replications.push_back(s);
    }
    Aggregate& agg = result.aggregate;
    agg.mean_aaoi = aaoi.mean();
    agg.sd_aaoi = aaoi.sd();
    agg.se_aaoi = aaoi.se();
    agg.mean_eff = eff.mean();
    agg.mean_cross = cross.mean();
    agg.mean_corr = corr.mean();
    agg.mean_cv_y = cvy.mean();
    agg.mean_age = age.mean();
    agg.mean_sd_age = sdage.mean();
    agg.mean_far_rate = far.mean();
    agg.closure_gap = closure.mean() - result.reference.delta0;
    agg.closure_se = closure.se();
    if (spec.replications >= 2 && agg.closure_se > 0) {
        agg.closure_sigmas = std::fabs(agg.closure_gap) / agg.closure_se;
        agg.closure_pass = agg.closure_sigmas < 3.0;
    }
    return result;
}

}  // namespace aoilab
