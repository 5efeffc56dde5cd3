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

#include <cstddef>
#include <functional>
#include <vector>

namespace aoilab {

/// Adaptive Simpson quadrature on [a, b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-11);

struct KsResult {
    double statistic = 0;   // sup |F_empirical - F|
    double p_value = 1;
    std::size_t n = 0;
    bool pass(double alpha = 0.01) const { return p_value >= alpha; }
};

/// One-sample Kolmogorov-Smirnov test against a reference CDF. For laws with
/// atoms, pass the left limit F(x-) as well; tied samples are then compared
/// against the correct side of the jump.
KsResult ks_test(std::vector<double> samples,
                 const std::function<double(double)>& cdf,
                 const std::function<double(double)>& left_cdf = {});

/// Survival function of the Kolmogorov statistic distribution.
double kolmogorov_q(double t);

/// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);

/// Upper tail of the F(d1, d2) distribution at f.
double f_distribution_sf(double f, double d1, double d2);

/// Bisection root of a continuous sign-changing function on [lo, hi].
double bisect(const std::function<double(double)>& f, double lo, double hi,
              int iterations = 200);

}  // namespace aoilab
