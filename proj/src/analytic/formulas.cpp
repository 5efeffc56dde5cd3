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
#include "analytic/formulas.hpp"

#include <algorithm>
#include <cmath>

#include "support/errors.hpp"
#include "support/numerics.hpp"

namespace aoilab::analytic {

namespace {

void require_rates_positive(std::initializer_list<double> rates) {
    for (double r : rates)
        require_domain(std::isfinite(r) && r > 0, "rates must be positive");
}

void require_stable(double lambda, double mu, const char* msg) {
    if (!strictly_below(lambda, mu)) throw DomainError(msg);
}

}  // namespace

double aaoi_mm1_fcfs(double lambda, double mu) {
    require_rates_positive({lambda, mu});
    require_stable(lambda, mu, "mm1 requires lambda < mu");
    const double r = lambda / mu;
    return 1.0 / lambda + 1.0 / mu + r * r / (mu - lambda);
}

double aged_updates_combine(double delta0, double effective_rate,
                        double cross_moment) {
    require_domain(delta0 >= 0 && effective_rate >= 0 && cross_moment >= 0,
                   "aged_updates_combine requires nonnegative inputs");
    return delta0 + effective_rate * cross_moment;
}

double correction_term(const CorrectionInputs& in) {
    require_domain(in.sd_initial_age >= 0, "sd_initial_age must be >= 0");
    require_domain(in.cv_interdeparture >= 0, "cv_interdeparture must be >= 0");
    require_domain(std::fabs(in.correlation) <= 1.0,
                   "correlation must lie in [-1, 1]");
    require_domain(in.effective_rate > 0, "effective_rate must be > 0");
    const double c = in.mean_initial_age +
                     in.correlation * in.cv_interdeparture * in.sd_initial_age;
    require_domain(c >= 0,
                   "inputs imply a negative correction; inconsistent with a "
                   "nonnegative age-interdeparture product");
    return c;
}

BoundInterval correction_bounds(double mean_initial_age, double sd_initial_age,
                                double cv_interdeparture) {
    require_domain(
        mean_initial_age >= 0 && sd_initial_age >= 0 && cv_interdeparture >= 0,
        "correction_bounds requires nonnegative inputs");
    const double half = cv_interdeparture * sd_initial_age;
    return {mean_initial_age - half, mean_initial_age + half};
}

double zw_aaoi(double alpha, double mu) {
    require_rates_positive({mu});
    require_domain(alpha >= 0 && alpha < 1, "zero-wait requires 0 <= alpha < 1");
    return 2.0 / (mu * (1.0 - alpha));
}

Distribution zw_initial_age_mixture(double alpha, double mu) {
    require_rates_positive({mu});
    require_domain(alpha >= 0 && alpha < 1, "zero-wait requires 0 <= alpha < 1");
    if (alpha == 0) return Distribution::point_mass(0);
    const double m = mu * (1.0 - alpha);
    return Distribution::mixture(
        {(1 - alpha) * (1 - alpha), 2 * alpha * (1 - alpha), alpha * alpha},
        {Distribution::point_mass(0), Distribution::exponential(m),
         Distribution::erlang(2, m)});
}

double tandem_cross_moment(double lambda, double gamma, double mu) {
    require_rates_positive({lambda, gamma, mu});
    require_stable(lambda, gamma, "tandem requires lambda < gamma");
    require_stable(lambda, mu, "tandem requires lambda < mu");
    return 1.0 / (gamma * lambda) +
           (lambda / (gamma * gamma)) / (gamma - lambda) +
           (lambda / (gamma * mu)) / (gamma + mu - lambda);
}

double tandem_covariance(double lambda, double gamma_c, double gamma_c1) {
    require_rates_positive({lambda, gamma_c, gamma_c1});
    require_stable(lambda, gamma_c, "tandem requires lambda < gamma_c");
    require_stable(lambda, gamma_c1, "tandem requires lambda < gamma_c1");
    return (1.0 / (gamma_c * gamma_c)) * (gamma_c + gamma_c1) *
           (lambda - gamma_c1) /
           (gamma_c1 * (gamma_c + gamma_c1 - lambda));
}

double aaoi_tandem_two(double lambda, double gamma, double mu) {
    require_rates_positive({lambda, gamma, mu});
    require_stable(lambda, gamma, "tandem requires lambda < gamma");
    require_stable(lambda, mu, "tandem requires lambda < mu");
    const double rm = lambda / mu;
    const double rg = lambda / gamma;
    return 1.0 / lambda + 1.0 / mu + rm * rm / (mu - lambda) + 1.0 / gamma +
           rg * rg / (gamma - lambda) +
           lambda * lambda / (gamma * mu) / (gamma + mu - lambda);
}

TandemChainBounds tandem_chain_bounds(double lambda,
                                      std::span<const double> prior_rates,
                                      double mu_last) {
    TandemChainBounds out;
    out.delta0 = aaoi_mm1_fcfs(lambda, mu_last);
    double mean = 0;
    double var = 0;
    for (double g : prior_rates) {
        require_rates_positive({g});
        require_stable(lambda, g, "tandem requires lambda below every rate");
        const double t = 1.0 / (g - lambda);
        mean += t;
        var += t * t;
    }
    out.mean_age = mean;
    out.sd_age = std::sqrt(var);
    // Departures stay Poisson through the chain, so kappa_Y = 1.
    out.interval = {out.delta0 + mean - out.sd_age,
                    out.delta0 + mean + out.sd_age};
    return out;
}

double tandem_heuristic_estimate(const BoundInterval& interval) {
    require_domain(interval.lower <= interval.upper,
                   "interval must satisfy lower <= upper");
    return 0.55 * interval.lower + 0.45 * interval.upper;
}

double hem1_sigma(double lambda, double gamma, double mu) {
    require_rates_positive({lambda, gamma, mu});
    const double rho = lambda * gamma / (mu * (lambda + gamma));
    require_domain(strictly_below(rho, 1.0),
                   "hem1 requires rho = lambda*gamma/(mu*(lambda+gamma)) < 1");
    const double s = lambda + gamma + mu;
    const double sigma =
        (s - std::sqrt(s * s - 4.0 * lambda * gamma)) / (2.0 * mu);
    // Independent verification on the fixed-point form; any disagreement is a
    // hard failure, not a warning.
    const auto residual = [&](double x) {
        const double z = mu - mu * x;
        return x - (lambda / (lambda + z)) * (gamma / (gamma + z));
    };
    const double root = bisect(residual, 0.0, 1.0 - 1e-12);
    if (std::fabs(root - sigma) > 1e-10)
        throw InternalError("hem1_sigma: closed form and bisection disagree");
    return sigma;
}

double hem1_aaoi(double lambda, double gamma, double mu) {
    const double sigma = hem1_sigma(lambda, gamma, mu);
    const double rho = lambda * gamma / (mu * (lambda + gamma));
    return 1.0 / lambda + 1.0 / gamma + 1.0 / mu +
           sigma * rho / (mu - mu * sigma) -
           (1.0 - sigma * sigma) / (lambda + gamma);
}

double Hem1Moments::pdf_y(double t) const {
    if (t < 0) return 0;
    const double v = a1 * mu * std::exp(-mu * t) +
                     a2 * lambda * std::exp(-lambda * t) +
                     a3 * gamma * std::exp(-gamma * t);
    return (v < 0 && v > -1e-14) ? 0.0 : v;
}

double Hem1Moments::residual_pdf(double t) const {
    if (t < 0) return 0;
    const double v = w * lambda * std::exp(-lambda * t) +
                     (1.0 - w) * gamma * std::exp(-gamma * t);
    return (v < 0 && v > -1e-14) ? 0.0 : v;
}

Hem1Moments hem1_moments(double lambda, double gamma, double mu) {
    require_domain(lambda != gamma && gamma != mu && lambda != mu,
                   "hem1_moments requires pairwise-distinct rates");
    Hem1Moments m;
    m.lambda = lambda;
    m.gamma = gamma;
    m.mu = mu;
    m.sigma = hem1_sigma(lambda, gamma, mu);
    const double sigma = m.sigma;
    const double ms = mu - mu * sigma;  // conditional system-time rate
    m.mean_y = 1.0 / lambda + 1.0 / gamma;
    const double ex2 =
        2.0 * (1.0 / (lambda * lambda) + 1.0 / (gamma * gamma) +
               1.0 / (lambda * gamma));
    m.second_moment_y = ex2 + 2.0 * sigma / (lambda * gamma);
    m.w = gamma * (gamma + ms) / ((gamma - lambda) * (lambda + gamma + ms));
    m.cross_yt = (1.0 / mu) * (1.0 / gamma + 1.0 / lambda - 1.0 / mu) +
                 (sigma / mu) * (1.0 / gamma + 1.0 / lambda + 1.0 / ms);
    m.a2 = (1.0 - sigma) * m.w * mu / (mu - lambda);
    m.a3 = (1.0 - sigma) * (1.0 - m.w) * mu / (mu - gamma);
    m.a1 = 1.0 - m.a2 - m.a3;
    return m;
}

double tandem_hetero_aaoi(double lambda, double gamma, double mu) {
    // Initial age at the second queue is the first queue's service time,
    // independent of later inter-departures, so the correction is 1/gamma.
    return hem1_aaoi(lambda, gamma, mu) + 1.0 / gamma;
}

double aaoi_mm11_nonpreemptive(double total_rate, double mu) {
    require_rates_positive({total_rate, mu});
    return 1.0 / total_rate + 1.0 / mu +
           total_rate / (mu * (total_rate + mu));
}

double RetrialSteadyState::p_idle(int n) const {
    if (n < 0) return 0;
    if (n == 0) return p00;
    return p00 * (1.0 - pi) * std::pow(geometric_ratio, n);
}

double RetrialSteadyState::p_busy(int n) const {
    if (n < 0) return 0;
    return p00 * rho * std::pow(geometric_ratio, n);
}

RetrialSteadyState retrial_steady_state(double lambda, double theta,
                                        double mu) {
    require_rates_positive({lambda, theta, mu});
    RetrialSteadyState s;
    s.rho = lambda / mu;
    s.pi = theta / (lambda + theta);
    require_domain(strictly_below(s.rho, s.pi),
                   "retrial queue requires rho < pi, i.e. lambda/mu < "
                   "theta/(lambda+theta)");
    s.geometric_ratio = s.rho / s.pi;
    s.p00 = 1.0 - s.geometric_ratio;
    return s;
}

RetrialOrbitMetrics retrial_orbit_metrics(double lambda, double theta,
                                          double mu) {
    const RetrialSteadyState s = retrial_steady_state(lambda, theta, mu);
    RetrialOrbitMetrics m;
    m.l_orbit = s.rho * (1.0 + s.rho - s.pi) / (s.pi - s.rho);
    m.w_orbit = (1.0 + s.rho - s.pi) / (mu * (s.pi - s.rho));
    m.mean_initial_age = s.pi * m.w_orbit;
    return m;
}

double retrial_aaoi(double lambda, double theta, double mu) {
    const RetrialSteadyState s = retrial_steady_state(lambda, theta, mu);
    const double u = 1.0 + s.rho - s.pi;
    return (1.0 / mu) *
           (u / s.rho + s.rho / u + s.pi * u / (s.pi - s.rho));
}

AnalyticReport analytic_report(const std::string& model,
                               const ModelParams& p) {
    AnalyticReport r;
    if (model == "mm1") {
        r.delta0 = aaoi_mm1_fcfs(p.lambda, p.mu);
        r.delta_total = r.delta0;
    } else if (model == "zero-wait") {
        r.delta0 = zw_aaoi(0.0, p.mu);
        const Distribution age = zw_initial_age_mixture(p.alpha, p.mu);
        r.mean_age = age.mean();
        r.sd_age = age.sd();
        r.cv_y = 1.0;  // inter-departures are exponential
        r.correction = r.mean_age;
        r.delta_total = zw_aaoi(p.alpha, p.mu);
        const auto b = correction_bounds(r.mean_age, r.sd_age, r.cv_y);
        r.bounds = {r.delta0 + b.lower, r.delta0 + b.upper};
        r.bound_lower_clamped = r.delta0 + b.clamped().lower;
        r.has_bounds = true;
    } else if (model == "tandem-two") {
        r.delta0 = aaoi_mm1_fcfs(p.lambda, p.mu);
        const double cross = tandem_cross_moment(p.lambda, p.gamma, p.mu);
        r.correction = p.lambda * cross;
        r.delta_total = aaoi_tandem_two(p.lambda, p.gamma, p.mu);
        r.mean_age = 1.0 / (p.gamma - p.lambda);
        r.sd_age = r.mean_age;
        r.cv_y = 1.0;
        const auto b = correction_bounds(r.mean_age, r.sd_age, r.cv_y);
        r.bounds = {r.delta0 + b.lower, r.delta0 + b.upper};
        r.bound_lower_clamped = r.delta0 + b.clamped().lower;
        r.has_bounds = true;
        r.extras.emplace_back("cross_moment", cross);
        r.extras.emplace_back(
            "covariance", tandem_covariance(p.lambda, p.gamma, p.mu));
    } else if (model == "tandem-chain") {
        require_domain(p.rates.size() >= 1,
                       "tandem-chain requires a rates list");
        const std::span<const double> priors(p.rates.data(),
                                             p.rates.size() - 1);
        const auto b = tandem_chain_bounds(p.lambda, priors, p.rates.back());
        r.delta0 = b.delta0;
        r.mean_age = b.mean_age;
        r.sd_age = b.sd_age;
        r.cv_y = 1.0;
        r.correction = b.mean_age;  // midpoint of the correction interval
        r.has_bounds = true;
        r.bounds = b.interval;
        r.bound_lower_clamped =
            b.delta0 + std::max(0.0, b.mean_age - b.sd_age);
        r.delta_total = tandem_heuristic_estimate(b.interval);
        r.extras.emplace_back("heuristic_estimate", r.delta_total);
    } else if (model == "hetero-tandem") {
        r.delta0 = hem1_aaoi(p.lambda, p.gamma, p.mu);
        r.correction = 1.0 / p.gamma;
        r.delta_total = tandem_hetero_aaoi(p.lambda, p.gamma, p.mu);
        r.mean_age = 1.0 / p.gamma;
        r.sd_age = 1.0 / p.gamma;
        r.extras.emplace_back("sigma", hem1_sigma(p.lambda, p.gamma, p.mu));
    } else if (model == "hem1") {
        r.delta0 = hem1_aaoi(p.lambda, p.gamma, p.mu);
        r.delta_total = r.delta0;
        r.extras.emplace_back("sigma", hem1_sigma(p.lambda, p.gamma, p.mu));
        if (p.lambda != p.gamma && p.gamma != p.mu && p.lambda != p.mu) {
            const auto m = hem1_moments(p.lambda, p.gamma, p.mu);
            r.extras.emplace_back("mean_y", m.mean_y);
            r.extras.emplace_back("second_moment_y", m.second_moment_y);
            r.extras.emplace_back("cross_yt", m.cross_yt);
        }
    } else if (model == "retrial") {
        const auto s = retrial_steady_state(p.lambda, p.theta, p.mu);
        const auto o = retrial_orbit_metrics(p.lambda, p.theta, p.mu);
        r.delta0 = aaoi_mm11_nonpreemptive(p.lambda + p.theta, p.mu);
        r.correction = o.mean_initial_age;
        r.delta_total = retrial_aaoi(p.lambda, p.theta, p.mu);
        r.mean_age = o.mean_initial_age;
        r.extras.emplace_back("rho", s.rho);
        r.extras.emplace_back("pi", s.pi);
        r.extras.emplace_back("p00", s.p00);
        r.extras.emplace_back("l_orbit", o.l_orbit);
        r.extras.emplace_back("w_orbit", o.w_orbit);
    } else if (model == "mm11") {
        r.delta0 = aaoi_mm11_nonpreemptive(p.lambda + p.theta, p.mu);
        r.delta_total = r.delta0;
    } else {
        throw UsageError("unknown analytic model: '" + model + "'");
    }
    return r;
}

}  // namespace aoilab::analytic
