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
#include "scenarios/verify.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>

#include "scenarios/experiments.hpp"
#include "stochastic/conditional.hpp"
#include "support/errors.hpp"
#include "support/numerics.hpp"

namespace aoilab::verify {

namespace {

std::string fmt(const char* format, ...) {
    char buf[256];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

/// Monte Carlo frequency of an event, checked against a closed-form
/// probability within four binomial standard errors.
CheckLine mc_probability_check(const std::string& name, double expected,
                               const std::function<bool(RngStream&)>& event,
                               std::size_t draws, RngStream& rng) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < draws; ++i)
        if (event(rng)) ++hits;
    const double p_hat = static_cast<double>(hits) / draws;
    const double se = std::sqrt(expected * (1.0 - expected) / draws);
    CheckLine line;
    line.name = name;
    line.pass = std::fabs(p_hat - expected) < 4.0 * se;
    line.detail = fmt("expected %.6f, estimated %.6f (4se = %.6f)", expected,
                      p_hat, 4.0 * se);
    return line;
}

/// Rejection-samples `count` conditional values and KS-tests them at 1%.
CheckLine ks_conditional_check(
    const std::string& name, std::size_t count,
    const std::function<bool(RngStream&, double&)>& draw,
    const std::function<double(double)>& cdf, RngStream& rng) {
    std::vector<double> samples;
    samples.reserve(count);
    while (samples.size() < count) {
        double v = 0;
        if (draw(rng, v)) samples.push_back(v);
    }
    const KsResult ks = ks_test(std::move(samples), cdf);
    CheckLine line;
    line.name = name;
    line.pass = ks.pass(0.01);
    line.detail = fmt("ks statistic %.5f, p = %.4f (n = %zu)", ks.statistic,
                      ks.p_value, ks.n);
    return line;
}

SuiteResult suite_closure(std::uint64_t seed, unsigned threads) {
    SuiteResult out;
    out.suite = "theorem1";
    const auto scenarios = canonical_closure_scenarios(seed);
    const auto verdicts = decomposition_closure_suite(scenarios, threads);
    for (const auto& v : verdicts) {
        CheckLine line;
        line.name = "closure/" + v.name;
        line.pass = v.pass;
        line.detail = fmt(
            "measured %.5f, baseline-plus-correction %.5f, residual %.5f "
            "(%.2f se)",
            v.measured, v.predicted, v.gap, v.sigmas);
        out.lines.push_back(std::move(line));
    }
    return out;
}

SuiteResult suite_appendix_lemmas(std::uint64_t seed) {
    SuiteResult out;
    out.suite = "appendix-lemmas";
    RngStream rng(seed, 9001);
    constexpr std::size_t kDraws = 1'000'000;
    constexpr std::size_t kCond = 100'000;

    // P(X > Y) equals the transform of Y evaluated at the rate of X.
    {
        const Distribution y = Distribution::hypoexponential({1.0, 2.0});
        const double p = prob_exp_exceeds(1.0, y);
        out.lines.push_back(mc_probability_check(
            "exp-exceeds/hypoexp(1,2)", p,
            [&](RngStream& r) { return r.exponential(1.0) > y.sample(r); },
            kDraws, rng));
    }
    {
        const Distribution y = Distribution::exponential(1.0);
        const double p = prob_exp_exceeds(2.0, y);
        out.lines.push_back(mc_probability_check(
            "exp-exceeds/exp(1)-at-rate-2", p,
            [&](RngStream& r) { return r.exponential(2.0) > y.sample(r); },
            kDraws, rng));
    }
    // Hypoexponential overtaking an exponential.
    {
        const HypoexpVsExpConditionals laws(1.0, 1.0, 2.0);
        out.lines.push_back(mc_probability_check(
            "hypoexp-vs-exp/p-exceed(1;1,2)", laws.p_exceed(),
            [&](RngStream& r) {
                const double x = r.exponential(1.0);
                const double y = r.exponential(1.0) + r.exponential(2.0);
                return y > x;
            },
            kDraws, rng));
    }
    // Exponential race probability.
    {
        const auto race = exp_race_conditionals(1.0, 2.0);
        out.lines.push_back(mc_probability_check(
            "exp-race/p-win(1,2)", race.p_win,
            [&](RngStream& r) {
                const double x1 = r.exponential(1.0);
                const double x2 = r.exponential(2.0);
                return x2 > x1;
            },
            kDraws, rng));
    }
    // Conditional laws of the exponential race (1, 2).
    {
        const auto race = exp_race_conditionals(1.0, 2.0);
        const auto draw_pair = [](RngStream& r, double& x1, double& x2) {
            x1 = r.exponential(1.0);
            x2 = r.exponential(2.0);
            return x2 > x1;
        };
        out.lines.push_back(ks_conditional_check(
            "exp-race/loser-law", kCond,
            [&](RngStream& r, double& v) {
                double x1, x2;
                if (!draw_pair(r, x1, x2)) return false;
                v = x1;
                return true;
            },
            [&](double x) { return race.loser_given_win.cdf(x); }, rng));
        out.lines.push_back(ks_conditional_check(
            "exp-race/gap-law", kCond,
            [&](RngStream& r, double& v) {
                double x1, x2;
                if (!draw_pair(r, x1, x2)) return false;
                v = x2 - x1;
                return true;
            },
            [&](double x) { return race.gap_given_win.cdf(x); }, rng));
        out.lines.push_back(ks_conditional_check(
            "exp-race/winner-law", kCond,
            [&](RngStream& r, double& v) {
                double x1, x2;
                if (!draw_pair(r, x1, x2)) return false;
                v = x2;
                return true;
            },
            [&](double x) { return race.winner_given_win.cdf(x); }, rng));
    }
    // Conditional laws of hypoexp(1,2) vs exp(1).
    {
        const double lambda = 1.0, mu1 = 1.0, mu2 = 2.0;
        const HypoexpVsExpConditionals laws(lambda, mu1, mu2);
        const double w = laws.mixing_weight();
        const auto overshoot_cdf = [&](double z) {
            if (z < 0) return 0.0;
            return w * -std::expm1(-mu1 * z) + (1 - w) * -std::expm1(-mu2 * z);
        };
        const auto x_cdf = [&](double x) {
            if (x < 0) return 0.0;
            return w * -std::expm1(-(lambda + mu1) * x) +
                   (1 - w) * -std::expm1(-(lambda + mu2) * x);
        };
        const auto draw_pair = [&](RngStream& r, double& x, double& y) {
            x = r.exponential(lambda);
            y = r.exponential(mu1) + r.exponential(mu2);
            return y > x;
        };
        out.lines.push_back(ks_conditional_check(
            "hypoexp-vs-exp/overshoot-law", kCond,
            [&](RngStream& r, double& v) {
                double x, y;
                if (!draw_pair(r, x, y)) return false;
                v = y - x;
                return true;
            },
            overshoot_cdf, rng));
        out.lines.push_back(ks_conditional_check(
            "hypoexp-vs-exp/conditional-x-law", kCond,
            [&](RngStream& r, double& v) {
                double x, y;
                if (!draw_pair(r, x, y)) return false;
                v = x;
                return true;
            },
            x_cdf, rng));
        // Densities must integrate to one and stay nonnegative even though
        // the mixing weight is signed.
        {
            const double horizon = 50.0 / std::min(mu1, mu2);
            const double mass = integrate(
                [&](double z) { return laws.overshoot_pdf(z); }, 0, horizon);
            CheckLine line;
            line.name = "hypoexp-vs-exp/overshoot-pdf-mass";
            line.pass = std::fabs(mass - 1.0) < 1e-9;
            line.detail = fmt("integral %.12f", mass);
            out.lines.push_back(std::move(line));
        }
        {
            bool nonneg = true;
            const double hi = 20.0 / std::min(mu1, mu2);
            for (int i = 0; i < 10'000; ++i) {
                const double z = hi * i / 9999.0;
                if (laws.overshoot_pdf(z) < 0 ||
                    laws.conditional_x_pdf(z) < 0) {
                    nonneg = false;
                    break;
                }
            }
            CheckLine line;
            line.name = "hypoexp-vs-exp/density-nonnegative";
            line.pass = nonneg;
            line.detail = "grid of 1e4 points";
            out.lines.push_back(std::move(line));
        }
    }
    return out;
}

SuiteResult suite_bounds(std::uint64_t seed) {
    SuiteResult out;
    out.suite = "bounds";
    RngStream rng(seed, 77);
    // Containment of the exact correction inside the marginal-only bounds.
    {
        int violations = 0;
        for (int i = 0; i < 200; ++i) {
            const double lambda = 1.0;
            const double gamma = 1.05 + 8.95 * rng.next_unit();
            const double mu = 1.05 + 8.95 * rng.next_unit();
            const double exact =
                lambda * analytic::tandem_cross_moment(lambda, gamma, mu);
            const double ea = 1.0 / (gamma - lambda);
            const auto b = analytic::correction_bounds(ea, ea, 1.0);
            if (exact < b.lower - 1e-12 || exact > b.upper + 1e-12)
                ++violations;
        }
        CheckLine line;
        line.name = "containment/tandem-two";
        line.pass = violations == 0;
        line.detail = fmt("%d violations over 200 draws", violations);
        out.lines.push_back(std::move(line));
    }
    {
        int violations = 0;
        for (int i = 0; i < 200; ++i) {
            const double alpha = 0.95 * rng.next_unit();
            const double mu = 0.2 + 4.8 * rng.next_unit();
            const Distribution age = analytic::zw_initial_age_mixture(alpha, mu);
            const double exact = age.mean();  // independent feed
            const auto b = analytic::correction_bounds(age.mean(), age.sd(), 1.0);
            if (exact < b.lower - 1e-12 || exact > b.upper + 1e-12)
                ++violations;
        }
        CheckLine line;
        line.name = "containment/zero-wait";
        line.pass = violations == 0;
        line.detail = fmt("%d violations over 200 draws", violations);
        out.lines.push_back(std::move(line));
    }
    // Correction terms stay nonnegative across the stability region.
    {
        int negatives = 0;
        for (int i = 0; i < 1000; ++i) {
            const double gamma = 1.05 + 8.95 * rng.next_unit();
            const double mu = 1.05 + 8.95 * rng.next_unit();
            const double theta = 0.1 + 5.0 * rng.next_unit();
            const double alpha = 0.95 * rng.next_unit();
            if (analytic::tandem_cross_moment(1.0, gamma, mu) < 0) ++negatives;
            if (analytic::zw_initial_age_mixture(alpha, mu).mean() < 0)
                ++negatives;
            const double rho = 1.0 / mu;
            const double pi = theta / (1.0 + theta);
            if (strictly_below(rho, pi)) {
                if (analytic::retrial_orbit_metrics(1.0, theta, mu)
                        .mean_initial_age < 0)
                    ++negatives;
            }
        }
        CheckLine line;
        line.name = "correction/nonnegative";
        line.pass = negatives == 0;
        line.detail = fmt("%d negative corrections over sweep", negatives);
        out.lines.push_back(std::move(line));
    }
    // Correlation implied by the negative tandem covariance stays above the
    // admissible floor -1/(kappa_A * kappa_Y).
    {
        bool ok = true;
        double worst = 0;
        for (int i = 0; i < 1000; ++i) {
            const double gamma = 1.05 + 8.95 * rng.next_unit();
            const double mu = 1.05 + 8.95 * rng.next_unit();
            const double cov = analytic::tandem_covariance(1.0, gamma, mu);
            const double sigma_y = 1.0;  // exponential inter-departures
            const double sigma_a = 1.0 / (gamma - 1.0);
            const double r = cov / (sigma_y * sigma_a);
            worst = std::min(worst, r);
            if (!(r > -1.0)) ok = false;  // kappa_A = kappa_Y = 1 here
        }
        CheckLine line;
        line.name = "correlation/floor";
        line.pass = ok;
        line.detail = fmt("most negative implied correlation %.4f", worst);
        out.lines.push_back(std::move(line));
    }
    return out;
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"theorem1", "appendix-lemmas", "bounds"};
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed,
                      unsigned threads) {
    if (name == "theorem1") return suite_closure(seed, threads);
    if (name == "appendix-lemmas") return suite_appendix_lemmas(seed);
    if (name == "bounds") return suite_bounds(seed);
    throw UsageError("unknown verification suite: '" + name + "'");
}

}  // namespace aoilab::verify
