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
#include "simkernel/runners.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "support/errors.hpp"

namespace aoilab::sim {

namespace {

void validate_options(const RunOptions& opts) {
    require_domain(opts.departures >= 1, "departures must be >= 1");
    require_domain(opts.warmup < opts.departures,
                   "warmup must be smaller than departures");
}

/// Shared per-run bookkeeping: warmup gating, sample collection, logging.
class Recorder {
public:
    Recorder(const RunOptions& opts, RunResult& out)
        : opts_(opts),
          out_(out),
          acc_(opts.departures - opts.warmup) {}

    bool warm() const { return delivered_total_ >= opts_.warmup; }
    std::uint64_t delivered_total() const { return delivered_total_; }
    bool done() const { return delivered_total_ >= opts_.departures; }

    void deliver(const PacketRecord& p) {
        ++delivered_total_;
        if (delivered_total_ <= opts_.warmup) return;
        acc_.add(p.departure, p.generation, p.initial_age);
        const auto& c = opts_.collect;
        if (c.max_y > 0 && out_.interdepartures.size() < c.max_y) {
            if (have_prev_dep_)
                out_.interdepartures.push_back(p.departure - prev_departure_);
        }
        if (c.max_ages > 0 && out_.initial_ages.size() < c.max_ages) {
            if (age_tick_++ % c.age_stride == 0)
                out_.initial_ages.push_back(p.initial_age);
        }
        if (c.max_feed > 0 && out_.feed_interarrivals.size() < c.max_feed) {
            if (have_prev_arrival_)
                out_.feed_interarrivals.push_back(p.arrival - prev_arrival_);
        }
        if (c.log) {
            PacketRecord copy = p;
            copy.id = acc_.delivered();
            out_.log.push_back(std::move(copy));
        }
        prev_departure_ = p.departure;
        have_prev_dep_ = true;
        prev_arrival_ = p.arrival;
        have_prev_arrival_ = true;
    }

    void finish(std::uint64_t blocked) {
        out_.stats = acc_.finalize();
        out_.stats.blocked = blocked;
    }

private:
    const RunOptions& opts_;
    RunResult& out_;
    DeliveryStats acc_;
    std::uint64_t delivered_total_ = 0;
    double prev_departure_ = 0;
    bool have_prev_dep_ = false;
    double prev_arrival_ = 0;
    bool have_prev_arrival_ = false;
    std::size_t age_tick_ = 0;
};

}  // namespace

NodeModel NodeModel::fcfs(double mu) {
    require_domain(mu > 0, "service rate must be positive");
    return {Kind::FcfsInfinite, mu, 0, 0};
}

NodeModel NodeModel::blocking(double mu) {
    require_domain(mu > 0, "service rate must be positive");
    return {Kind::SingleCapacityBlocking, mu, 0, 0};
}

NodeModel NodeModel::zero_wait(double mu, double alpha) {
    require_domain(mu > 0, "service rate must be positive");
    require_domain(alpha >= 0 && alpha < 1, "alpha must lie in [0, 1)");
    return {Kind::ZeroWaitErrorChannel, mu, alpha, 0};
}

NodeModel NodeModel::retrial(double mu, double theta) {
    require_domain(mu > 0 && theta > 0, "rates must be positive");
    return {Kind::RetrialOrbit, mu, 0, theta};
}

double AgeFeed::next(RngStream& rng) {
    if (dist_) return dist_->sample(rng);
    if (!trace_.empty()) {
        require_domain(pos_ < trace_.size(), "age trace exhausted");
        return trace_[pos_++];
    }
    return 0.0;
}

std::uint64_t default_warmup(std::uint64_t departures) {
    const std::uint64_t five_percent = departures / 20;
    const std::uint64_t w = std::max<std::uint64_t>(10'000, five_percent);
    return std::min(w, departures / 2);
}

double RetrialOccupancy::busy_fraction() const {
    double busy = 0;
    for (double t : busy_time) busy += t;
    return total_time > 0 ? busy / total_time : 0;
}

namespace {

RunResult run_fcfs(double mu, double lambda, AgeFeed feed,
                   const RunOptions& opts, RngStream& rng) {
    if (!opts.allow_unstable)
        require_domain(strictly_below(lambda, mu),
                       "fcfs queue requires lambda < mu (set allow_unstable "
                       "for exploratory runs)");
    RunResult out;
    Recorder rec(opts, out);
    double arrival_clock = 0;
    double prev_departure = 0;
    PacketRecord p;
    while (!rec.done()) {
        arrival_clock += rng.exponential(lambda);
        const double age = feed.next(rng);
        const double service = rng.exponential(mu);
        p.generation = arrival_clock - age;
        p.arrival = arrival_clock;
        p.service_start = std::max(prev_departure, arrival_clock);
        p.departure = p.service_start + service;
        p.initial_age = age;
        prev_departure = p.departure;
        rec.deliver(p);
    }
    rec.finish(0);
    return out;
}

RunResult run_blocking(double mu, double lambda, AgeFeed feed,
                       const RunOptions& opts, RngStream& rng) {
    RunResult out;
    Recorder rec(opts, out);
    double arrival_clock = 0;
    double busy_until = 0;
    std::uint64_t blocked = 0;
    PacketRecord p;
    while (!rec.done()) {
        arrival_clock += rng.exponential(lambda);
        if (arrival_clock < busy_until) {
            ++blocked;
            continue;
        }
        const double age = feed.next(rng);
        const double service = rng.exponential(mu);
        p.generation = arrival_clock - age;
        p.arrival = arrival_clock;
        p.service_start = arrival_clock;
        p.departure = arrival_clock + service;
        p.initial_age = age;
        busy_until = p.departure;
        rec.deliver(p);
    }
    rec.finish(blocked);
    return out;
}

}  // namespace

RunResult run_single_node(const NodeModel& node, double arrival_rate,
                          AgeFeed feed, const RunOptions& opts,
                          RngStream& rng) {
    validate_options(opts);
    switch (node.kind) {
        case NodeModel::Kind::FcfsInfinite:
            require_domain(arrival_rate > 0, "arrival rate must be positive");
            return run_fcfs(node.mu, arrival_rate, std::move(feed), opts, rng);
        case NodeModel::Kind::SingleCapacityBlocking:
            require_domain(arrival_rate > 0, "arrival rate must be positive");
            return run_blocking(node.mu, arrival_rate, std::move(feed), opts,
                                rng);
        case NodeModel::Kind::ZeroWaitErrorChannel:
            require_domain(feed.is_zero(),
                           "zero-wait nodes derive initial ages internally");
            return run_zero_wait(node.alpha, node.mu, opts, rng);
        case NodeModel::Kind::RetrialOrbit:
            require_domain(feed.is_zero(),
                           "retrial nodes derive initial ages internally");
            return run_retrial(arrival_rate, node.theta, node.mu, opts, rng);
    }
    throw DomainError("unknown node kind");
}

RunResult run_tandem(std::span<const double> rates, double arrival_rate,
                     const RunOptions& opts, RngStream& rng) {
    validate_options(opts);
    require_domain(!rates.empty(), "tandem needs at least one stage");
    require_domain(arrival_rate > 0, "arrival rate must be positive");
    for (double r : rates)
        require_domain(strictly_below(arrival_rate, r),
                       "tandem requires lambda below every service rate");
    RunResult out;
    Recorder rec(opts, out);
    const std::size_t stages = rates.size();
    std::vector<double> prev_departure(stages, 0.0);
    double arrival_clock = 0;
    PacketRecord p;
    std::vector<double> node_arrivals(stages);
    while (!rec.done()) {
        arrival_clock += rng.exponential(arrival_rate);
        double t = arrival_clock;
        double final_start = arrival_clock;
        for (std::size_t k = 0; k < stages; ++k) {
            node_arrivals[k] = t;
            const double start = std::max(prev_departure[k], t);
            if (k + 1 == stages) final_start = start;
            t = start + rng.exponential(rates[k]);
            prev_departure[k] = t;
        }
        p.generation = arrival_clock;
        p.arrival = node_arrivals.back();
        p.service_start = final_start;
        p.departure = t;
        p.initial_age = p.arrival - arrival_clock;
        if (opts.collect.log) p.node_arrivals = node_arrivals;
        rec.deliver(p);
    }
    rec.finish(0);
    return out;
}

RunResult run_hetero_tandem(double lambda, double gamma, double mu,
                            const RunOptions& opts, RngStream& rng) {
    validate_options(opts);
    require_domain(lambda > 0 && gamma > 0 && mu > 0,
                   "rates must be positive");
    const double rho = lambda * gamma / (mu * (lambda + gamma));
    require_domain(strictly_below(rho, 1.0),
                   "hetero tandem requires lambda*gamma/(mu*(lambda+gamma)) "
                   "< 1");
    RunResult out;
    Recorder rec(opts, out);
    double arrival_clock = 0;
    double busy1_until = 0;
    double prev_departure2 = 0;
    std::uint64_t blocked = 0;
    PacketRecord p;
    while (!rec.done()) {
        arrival_clock += rng.exponential(lambda);
        if (arrival_clock < busy1_until) {
            ++blocked;
            continue;
        }
        const double s1 = rng.exponential(gamma);
        const double d1 = arrival_clock + s1;
        busy1_until = d1;
        const double start2 = std::max(prev_departure2, d1);
        const double d2 = start2 + rng.exponential(mu);
        prev_departure2 = d2;
        p.generation = arrival_clock;
        p.arrival = d1;
        p.service_start = start2;
        p.departure = d2;
        p.initial_age = s1;
        rec.deliver(p);
    }
    rec.finish(blocked);
    return out;
}

RunResult run_zero_wait(double alpha, double mu, const RunOptions& opts,
                        RngStream& rng) {
    validate_options(opts);
    require_domain(mu > 0, "service rate must be positive");
    require_domain(alpha >= 0 && alpha < 1, "alpha must lie in [0, 1)");
    RunResult out;
    Recorder rec(opts, out);
    double clock = 0;
    double packet_stamp = 0;   // generation of the update in flight
    double monitor_stamp = 0;  // generation currently shown at the monitor
    PacketRecord p;
    while (!rec.done()) {
        const double service_start = clock;
        const double service = rng.exponential(mu);
        clock += service;
        const bool failed = rng.next_unit() <= alpha;
        // Failed deliveries leave the age path untouched, which is the same
        // as delivering a packet stamped with what the monitor already has.
        const double stamp = failed ? monitor_stamp : packet_stamp;
        p.generation = stamp;
        p.arrival = service_start;
        p.service_start = service_start;
        p.departure = clock;
        p.initial_age = service_start - stamp;
        rec.deliver(p);
        monitor_stamp = stamp;
        if (!failed) packet_stamp = clock;  // fresh update, zero wait
    }
    rec.finish(0);
    return out;
}

RunResult run_retrial(double lambda, double theta, double mu,
                      const RunOptions& opts, RngStream& rng) {
    validate_options(opts);
    require_domain(lambda > 0 && theta > 0 && mu > 0,
                   "rates must be positive");
    const double rho = lambda / mu;
    const double pi = theta / (lambda + theta);
    if (!opts.allow_unstable)
        require_domain(strictly_below(rho, pi),
                       "retrial queue requires rho < pi, i.e. lambda/mu < "
                       "theta/(lambda+theta)");
    RunResult out;
    Recorder rec(opts, out);
    double clock = 0;
    bool busy = false;
    double in_service_generation = 0;
    double in_service_start = 0;
    std::vector<double> orbit;  // generation stamps of orbiting packets
    PacketRecord p;
    auto& occ = out.occupancy;
    while (!rec.done()) {
        const bool count_state = rec.warm();
        double dt;
        int event;  // 0 = primary arrival, 1 = departure, 2 = orbit retrial
        if (busy) {
            const double total = lambda + mu;
            dt = rng.exponential(total);
            event = rng.next_unit() <= mu / total ? 1 : 0;
        } else if (orbit.empty()) {
            dt = rng.exponential(lambda);
            event = 0;
        } else {
            const double total = lambda + theta;
            dt = rng.exponential(total);
            event = rng.next_unit() <= lambda / total ? 0 : 2;
        }
        if (count_state) {
            const int n = static_cast<int>(
                std::min<std::size_t>(orbit.size(), RetrialOccupancy::kMaxOrbit));
            (busy ? occ.busy_time[n] : occ.idle_time[n]) += dt;
            occ.total_time += dt;
        }
        clock += dt;
        switch (event) {
            case 0:  // primary arrival: fresh stamp
                if (busy) {
                    orbit.push_back(clock);
                } else {
                    busy = true;
                    in_service_generation = clock;
                    in_service_start = clock;
                }
                break;
            case 1: {  // service completion
                p.generation = in_service_generation;
                p.arrival = in_service_start;
                p.service_start = in_service_start;
                p.departure = clock;
                p.initial_age = in_service_start - in_service_generation;
                busy = false;
                rec.deliver(p);
                break;
            }
            case 2: {  // successful retrial, uniformly random orbit pick
                const std::size_t idx = rng.next_index(orbit.size());
                in_service_generation = orbit[idx];
                orbit[idx] = orbit.back();
                orbit.pop_back();
                busy = true;
                in_service_start = clock;
                break;
            }
        }
    }
    rec.finish(0);
    return out;
}

std::vector<RunResult> run_replications(
    std::uint32_t reps, std::uint64_t seed, unsigned threads,
    const std::function<RunResult(std::uint32_t, RngStream&)>& fn,
    std::uint64_t stream_base) {
    std::vector<RunResult> results(reps);
    if (reps == 0) return results;
    unsigned workers = threads == 0 ? std::thread::hardware_concurrency()
                                    : threads;
    workers = std::max(1u, std::min<unsigned>(workers, reps));
    if (workers == 1) {
        for (std::uint32_t r = 0; r < reps; ++r) {
            RngStream rng(seed, stream_base + r);
            results[r] = fn(r, rng);
        }
        return results;
    }
    std::atomic<std::uint32_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::uint32_t r = next.fetch_add(1);
            if (r >= reps) return;
            try {
                RngStream rng(seed, stream_base + r);
                results[r] = fn(r, rng);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return results;
}

}  // namespace aoilab::sim
