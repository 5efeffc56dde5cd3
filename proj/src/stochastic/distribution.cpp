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
#include "stochastic/distribution.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "support/errors.hpp"

namespace aoilab {

namespace {

void require_positive_rate(double rate) {
    require_domain(std::isfinite(rate) && rate > 0.0,
                   "distribution rates must be strictly positive");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

Distribution Distribution::exponential(double rate) {
    require_positive_rate(rate);
    Distribution d;
    d.kind_ = Kind::Exponential;
    d.rate_ = rate;
    return d;
}

Distribution Distribution::erlang(unsigned shape, double rate) {
    require_domain(shape >= 1, "erlang shape must be >= 1");
    require_positive_rate(rate);
    if (shape == 1) return exponential(rate);
    Distribution d;
    d.kind_ = Kind::Erlang;
    d.shape_ = shape;
    d.rate_ = rate;
    return d;
}

Distribution Distribution::hypoexponential(std::vector<double> rates) {
    require_domain(!rates.empty(), "hypoexponential needs at least one rate");
    for (double r : rates) require_positive_rate(r);
    if (rates.size() == 1) return exponential(rates.front());
    const bool all_equal =
        std::all_of(rates.begin(), rates.end(),
                    [&](double r) { return r == rates.front(); });
    if (all_equal) {
        return erlang(static_cast<unsigned>(rates.size()), rates.front());
    }
    Distribution d;
    d.kind_ = Kind::Hypoexponential;
    d.rates_ = std::move(rates);
    return d;
}

Distribution Distribution::mixture(std::vector<double> weights,
                                   std::vector<Distribution> components) {
    require_domain(!weights.empty() && weights.size() == components.size(),
                   "mixture weights/components size mismatch");
    double total = 0;
    for (double w : weights) {
        require_domain(std::isfinite(w) && w >= 0.0,
                       "mixture weights must be nonnegative");
        total += w;
    }
    require_domain(std::fabs(total - 1.0) <= 1e-12,
                   "mixture weights must sum to 1");
    std::vector<double> w;
    std::vector<Distribution> c;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] > 0.0) {
            w.push_back(weights[i]);
            c.push_back(components[i]);
        }
    }
    require_domain(!w.empty(), "mixture needs a positive-weight component");
    if (w.size() == 1) return c.front();
    Distribution d;
    d.kind_ = Kind::Mixture;
    d.weights_ = std::move(w);
    d.components_ = std::move(c);
    return d;
}

Distribution Distribution::point_mass(double value) {
    require_domain(std::isfinite(value) && value >= 0.0,
                   "point mass value must be >= 0");
    Distribution d;
    d.kind_ = Kind::PointMass;
    d.value_ = value;
    return d;
}

double Distribution::mean() const {
    switch (kind_) {
        case Kind::Exponential: return 1.0 / rate_;
        case Kind::Erlang: return shape_ / rate_;
        case Kind::Hypoexponential: {
            double m = 0;
            for (double r : rates_) m += 1.0 / r;
            return m;
        }
        case Kind::Mixture: {
            double m = 0;
            for (std::size_t i = 0; i < weights_.size(); ++i)
                m += weights_[i] * components_[i].mean();
            return m;
        }
        case Kind::PointMass: return value_;
    }
    return 0;
}

double Distribution::second_moment() const {
    switch (kind_) {
        case Kind::Exponential: return 2.0 / (rate_ * rate_);
        case Kind::Erlang:
            return static_cast<double>(shape_) * (shape_ + 1) / (rate_ * rate_);
        case Kind::Hypoexponential: {
            double m = 0, v = 0;
            for (double r : rates_) {
                m += 1.0 / r;
                v += 1.0 / (r * r);
            }
            return m * m + v;
        }
        case Kind::Mixture: {
            double m2 = 0;
            for (std::size_t i = 0; i < weights_.size(); ++i)
                m2 += weights_[i] * components_[i].second_moment();
            return m2;
        }
        case Kind::PointMass: return value_ * value_;
    }
    return 0;
}

double Distribution::variance() const {
    const double m = mean();
    return std::max(0.0, second_moment() - m * m);
}

double Distribution::sd() const { return std::sqrt(variance()); }

double Distribution::lst(double s) const {
    require_domain(s >= 0.0, "lst requires s >= 0");
    switch (kind_) {
        case Kind::Exponential: return rate_ / (rate_ + s);
        case Kind::Erlang: return std::pow(rate_ / (rate_ + s), shape_);
        case Kind::Hypoexponential: {
            double p = 1;
            for (double r : rates_) p *= r / (r + s);
            return p;
        }
        case Kind::Mixture: {
            double t = 0;
            for (std::size_t i = 0; i < weights_.size(); ++i)
                t += weights_[i] * components_[i].lst(s);
            return t;
        }
        case Kind::PointMass: return std::exp(-s * value_);
    }
    return 0;
}

double Distribution::cdf(double x) const {
    if (x < 0) return 0.0;
    switch (kind_) {
        case Kind::Exponential: return -std::expm1(-rate_ * x);
        case Kind::Erlang: {
            // 1 - sum_{i<k} (rx)^i/i! e^{-rx}
            double term = 1.0;
            double sum = 1.0;
            const double rx = rate_ * x;
            for (unsigned i = 1; i < shape_; ++i) {
                term *= rx / i;
                sum += term;
            }
            return 1.0 - sum * std::exp(-rx);
        }
        case Kind::Hypoexponential: {
            // Requires pairwise-distinct rates (all-equal lists were
            // canonicalized to Erlang at construction).
            for (std::size_t i = 0; i < rates_.size(); ++i)
                for (std::size_t j = i + 1; j < rates_.size(); ++j)
                    require_domain(rates_[i] != rates_[j],
                                   "hypoexponential cdf needs distinct rates");
            double acc = 0;
            for (std::size_t i = 0; i < rates_.size(); ++i) {
                double coef = 1.0;
                for (std::size_t j = 0; j < rates_.size(); ++j) {
                    if (j != i) coef *= rates_[j] / (rates_[j] - rates_[i]);
                }
                acc += coef * (-std::expm1(-rates_[i] * x));
            }
            return std::clamp(acc, 0.0, 1.0);
        }
        case Kind::Mixture: {
            double acc = 0;
            for (std::size_t i = 0; i < weights_.size(); ++i)
                acc += weights_[i] * components_[i].cdf(x);
            return acc;
        }
        case Kind::PointMass: return x >= value_ ? 1.0 : 0.0;
    }
    return 0;
}

double Distribution::cdf_left(double x) const {
    switch (kind_) {
        case Kind::PointMass: return x > value_ ? 1.0 : 0.0;
        case Kind::Mixture: {
            double acc = 0;
            for (std::size_t i = 0; i < weights_.size(); ++i)
                acc += weights_[i] * components_[i].cdf_left(x);
            return acc;
        }
        default: return cdf(x);
    }
}

double Distribution::sample(RngStream& rng) const {
    switch (kind_) {
        case Kind::Exponential: return rng.exponential(rate_);
        case Kind::Erlang: {
            double total = 0;
            for (unsigned i = 0; i < shape_; ++i) total += rng.exponential(rate_);
            return total;
        }
        case Kind::Hypoexponential: {
            double total = 0;
            for (double r : rates_) total += rng.exponential(r);
            return total;
        }
        case Kind::Mixture: {
            const double u = rng.next_unit();
            double acc = 0;
            for (std::size_t i = 0; i < weights_.size(); ++i) {
                acc += weights_[i];
                if (u <= acc) return components_[i].sample(rng);
            }
            return components_.back().sample(rng);
        }
        case Kind::PointMass: return value_;
    }
    return 0;
}

std::string Distribution::to_string() const {
    switch (kind_) {
        case Kind::Exponential: return "exponential(" + format_double(rate_) + ")";
        case Kind::Erlang:
            return "erlang(" + std::to_string(shape_) + "," +
                   format_double(rate_) + ")";
        case Kind::Hypoexponential: {
            std::string s = "hypoexponential(";
            for (std::size_t i = 0; i < rates_.size(); ++i) {
                if (i) s += ",";
                s += format_double(rates_[i]);
            }
            return s + ")";
        }
        case Kind::Mixture: {
            std::string s = "mixture(";
            for (std::size_t i = 0; i < weights_.size(); ++i) {
                if (i) s += "; ";
                s += format_double(weights_[i]) + ":" + components_[i].to_string();
            }
            return s + ")";
        }
        case Kind::PointMass: return "pointmass(" + format_double(value_) + ")";
    }
    return "";
}

bool Distribution::operator==(const Distribution& other) const {
    return kind_ == other.kind_ && rate_ == other.rate_ &&
           shape_ == other.shape_ && value_ == other.value_ &&
           rates_ == other.rates_ && weights_ == other.weights_ &&
           components_ == other.components_;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view s) {
    s = trim(s);
    try {
        std::size_t pos = 0;
        const double v = std::stod(std::string(s), &pos);
        if (pos != s.size()) throw UsageError("trailing characters");
        return v;
    } catch (const UsageError&) {
        throw;
    } catch (...) {
        throw UsageError("bad number in distribution expression: '" +
                         std::string(s) + "'");
    }
}

// Splits on `sep` at paren depth zero.
std::vector<std::string_view> split_top(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        else if (s[i] == ')') --depth;
        else if (s[i] == sep && depth == 0) {
            parts.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    parts.push_back(s.substr(start));
    return parts;
}

}  // namespace

Distribution Distribution::parse(std::string_view text) {
    const std::string_view s = trim(text);
    if (s == "zero") return point_mass(0.0);
    const auto open = s.find('(');
    if (open == std::string_view::npos || s.back() != ')')
        throw UsageError("bad distribution expression: '" + std::string(s) + "'");
    const std::string_view name = trim(s.substr(0, open));
    const std::string_view args = s.substr(open + 1, s.size() - open - 2);
    if (name == "exponential" || name == "exp")
        return exponential(parse_number(args));
    if (name == "pointmass") return point_mass(parse_number(args));
    if (name == "erlang") {
        const auto parts = split_top(args, ',');
        if (parts.size() != 2) throw UsageError("erlang(shape,rate) expected");
        const double shape = parse_number(parts[0]);
        if (shape < 1 || shape != std::floor(shape))
            throw UsageError("erlang shape must be a positive integer");
        return erlang(static_cast<unsigned>(shape), parse_number(parts[1]));
    }
    if (name == "hypoexponential" || name == "hypoexp") {
        std::vector<double> rates;
        for (auto part : split_top(args, ',')) rates.push_back(parse_number(part));
        return hypoexponential(std::move(rates));
    }
    if (name == "mixture") {
        std::vector<double> weights;
        std::vector<Distribution> comps;
        for (auto part : split_top(args, ';')) {
            part = trim(part);
            const auto colon = part.find(':');
            if (colon == std::string_view::npos)
                throw UsageError("mixture components use weight:component");
            weights.push_back(parse_number(part.substr(0, colon)));
            comps.push_back(parse(part.substr(colon + 1)));
        }
        return mixture(std::move(weights), std::move(comps));
    }
    throw UsageError("unknown distribution kind: '" + std::string(name) + "'");
}

}  // namespace aoilab
