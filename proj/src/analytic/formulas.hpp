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

#include <map>
#include <span>
#include <string>
#include <vector>

#include "stochastic/distribution.hpp"

// Closed-form average-age evaluators. All functions are pure and stateless;
// they throw DomainError outside their stability/validity region instead of
// returning divergent values.
namespace aoilab::analytic {

/// Marginal statistics feeding the age correction term.
struct CorrectionInputs {
    double mean_initial_age = 0;   // E[A]
    double sd_initial_age = 0;     // sigma_A
    double cv_interdeparture = 0;  // kappa_Y
    double correlation = 0;        // r in [-1, 1]
    double effective_rate = 1;     // deliveries per unit time
};

struct BoundInterval {
    double lower = 0;
    double upper = 0;
    double width() const { return upper - lower; }
    BoundInterval clamped() const { return {lower < 0 ? 0 : lower, upper}; }
};

/// Average age of an M/M/1 FCFS queue fed by zero-age updates.
double aaoi_mm1_fcfs(double lambda, double mu);

/// Aged-updates decomposition: baseline age plus rate-weighted cross moment
/// of inter-departure times with the previous packet's initial age.
double aged_updates_combine(double delta0, double effective_rate,
                        double cross_moment);

/// E[A] + r * kappa_Y * sigma_A. Rejects inputs implying a negative value.
double correction_term(const CorrectionInputs& in);

/// [E[A] - kappa_Y sigma_A, E[A] + kappa_Y sigma_A].
BoundInterval correction_bounds(double mean_initial_age, double sd_initial_age,
                                double cv_interdeparture);

/// Zero-wait source over an erasure channel: average age 2/(mu(1-alpha)).
double zw_aaoi(double alpha, double mu);

/// Distribution of the equivalent initial age induced by retransmissions in
/// the zero-wait erasure model.
Distribution zw_initial_age_mixture(double alpha, double mu);

/// E[Y2 * T1-previous] for two M/M/1 queues in tandem (rates gamma then mu).
double tandem_cross_moment(double lambda, double gamma, double mu);

/// Covariance of the final inter-departure time with the previous packet's
/// system time in the next-to-last queue; strictly negative when stable.
double tandem_covariance(double lambda, double gamma_c, double gamma_c1);

/// Exact average age at the end of an M/M/1 -> M/M/1 tandem.
double aaoi_tandem_two(double lambda, double gamma, double mu);

struct TandemChainBounds {
    double delta0 = 0;    // zero-age AAoI of the final queue
    double mean_age = 0;  // mean initial age entering the final queue
    double sd_age = 0;
    BoundInterval interval;  // bounds on the end-to-end AAoI
};

/// Interval bounds for a chain of M/M/1 queues ending in rate mu_last.
TandemChainBounds tandem_chain_bounds(double lambda,
                                      std::span<const double> prior_rates,
                                      double mu_last);

/// Rule-of-thumb point estimate, 0.55*lower + 0.45*upper.
double tandem_heuristic_estimate(const BoundInterval& interval);

/// Root in (0,1) of sigma = X~(mu - mu*sigma) for hypoexponential(lambda,
/// gamma) inter-arrivals; closed form cross-checked against bisection.
double hem1_sigma(double lambda, double gamma, double mu);

/// Zero-age AAoI of the HE/M/1 queue (hypoexponential arrivals, rate-mu
/// exponential service).
double hem1_aaoi(double lambda, double gamma, double mu);

struct Hem1Moments {
    double mean_y = 0;           // E[Y]
    double second_moment_y = 0;  // E[Y^2]
    double cross_yt = 0;         // E[Y_n T_{n-1}]
    double sigma = 0;
    double w = 0;  // residual-density mixing weight (signed)
    double pdf_y(double t) const;
    double residual_pdf(double t) const;

    double lambda = 0, gamma = 0, mu = 0, a1 = 0, a2 = 0, a3 = 0;
};

/// Inter-departure moments and densities of the HE/M/1 queue. Requires
/// pairwise-distinct lambda, gamma, mu.
Hem1Moments hem1_moments(double lambda, double gamma, double mu);

/// End-to-end AAoI of the blocking-queue -> HE/M/1 tandem.
double tandem_hetero_aaoi(double lambda, double gamma, double mu);

/// Zero-age AAoI of a single-capacity M/M/1/1 queue without preemption.
double aaoi_mm11_nonpreemptive(double total_rate, double mu);

/// Steady state of the single-retrial-stream M/M/1 retrial queue.
struct RetrialSteadyState {
    double rho = 0;              // lambda / mu
    double pi = 0;               // theta / (lambda + theta)
    double p00 = 0;              // 1 - rho/pi
    double geometric_ratio = 0;  // rho / pi

    /// P(server idle, n in orbit); n >= 0.
    double p_idle(int n) const;
    /// P(server busy, n in orbit); n >= 0.
    double p_busy(int n) const;
    double p_busy_total() const { return rho; }
};

RetrialSteadyState retrial_steady_state(double lambda, double theta, double mu);

struct RetrialOrbitMetrics {
    double l_orbit = 0;           // mean number of updates in orbit
    double w_orbit = 0;           // mean orbit time per update (Little)
    double mean_initial_age = 0;  // pi * w_orbit
};

RetrialOrbitMetrics retrial_orbit_metrics(double lambda, double theta,
                                          double mu);

/// Closed-form AAoI of the retrial queue via the aged-updates decomposition.
double retrial_aaoi(double lambda, double theta, double mu);

/// One-stop formula evaluation for the CLI: baseline age, correction, total,
/// and bounds where defined, plus model-specific extras.
struct AnalyticReport {
    double delta0 = 0;
    double correction = 0;
    double delta_total = 0;
    bool has_bounds = false;
    BoundInterval bounds;  // on delta_total
    double bound_lower_clamped = 0;  // correction lower bound clamped at zero
    double mean_age = 0;
    double sd_age = 0;
    double cv_y = 0;
    std::vector<std::pair<std::string, double>> extras;
};

struct ModelParams {
    double lambda = 0, mu = 0, gamma = 0, theta = 0, alpha = 0;
    std::vector<double> rates;  // tandem chains: prior rates then final rate
};

/// Models: mm1, zero-wait, tandem-two, tandem-chain, hetero-tandem, retrial,
/// mm11, hem1. Throws UsageError for unknown names, DomainError outside
/// stability regions.
AnalyticReport analytic_report(const std::string& model, const ModelParams& p);

}  // namespace aoilab::analytic
