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
#include "stochastic/conditional.hpp"

#include <cmath>

#include "support/errors.hpp"

namespace aoilab {

namespace {

// Signed-weight exponential mixtures can produce tiny negative values from
// cancellation; clamp those to zero.
double clamp_density(double v) {
    return (v < 0.0 && v > -1e-14) ? 0.0 : v;
}

}  // namespace

double prob_exp_exceeds(double lambda, const Distribution& y) {
    require_domain(lambda > 0, "prob_exp_exceeds requires lambda > 0");
    return y.lst(lambda);
}

ExpRaceConditionals exp_race_conditionals(double rate1, double rate2) {
    require_domain(rate1 > 0 && rate2 > 0,
                   "exp_race_conditionals requires positive rates");
    ExpRaceConditionals r{
        rate1 / (rate1 + rate2),
        Distribution::exponential(rate1 + rate2),
        Distribution::exponential(rate2),
        // X2 = X1 + (X2 - X1): given the race outcome these stages are
        // independent exponentials, so the winner's value is their sum.
        Distribution::hypoexponential({rate1 + rate2, rate2}),
    };
    return r;
}

HypoexpVsExpConditionals::HypoexpVsExpConditionals(double lambda, double mu1,
                                                   double mu2)
    : lambda_(lambda), mu1_(mu1), mu2_(mu2) {
    require_domain(lambda > 0 && mu1 > 0 && mu2 > 0,
                   "conditional laws require positive rates");
    require_domain(mu1 != mu2,
                   "requires mu1 != mu2 (equal-rate form is degenerate)");
    w_ = mu2 * (lambda + mu2) / ((mu2 - mu1) * (lambda + mu1 + mu2));
    p_exceed_ = lambda * (lambda + mu1 + mu2) /
                ((lambda + mu1) * (lambda + mu2));
}

double HypoexpVsExpConditionals::overshoot_pdf(double z) const {
    if (z < 0) return 0.0;
    return clamp_density(w_ * mu1_ * std::exp(-mu1_ * z) +
                         (1.0 - w_) * mu2_ * std::exp(-mu2_ * z));
}

double HypoexpVsExpConditionals::conditional_x_pdf(double x) const {
    if (x < 0) return 0.0;
    return clamp_density(
        w_ * (lambda_ + mu1_) * std::exp(-(lambda_ + mu1_) * x) +
        (1.0 - w_) * (lambda_ + mu2_) * std::exp(-(lambda_ + mu2_) * x));
}

double HypoexpVsExpConditionals::joint_pdf(double z, double x) const {
    if (z < 0 || x < 0) return 0.0;
    return clamp_density(
        w_ * mu1_ * std::exp(-mu1_ * z) * (lambda_ + mu1_) *
            std::exp(-(lambda_ + mu1_) * x) +
        (1.0 - w_) * mu2_ * std::exp(-mu2_ * z) * (lambda_ + mu2_) *
            std::exp(-(lambda_ + mu2_) * x));
}

}  // namespace aoilab
