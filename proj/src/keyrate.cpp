// Copyright 2026 The sqkd-rate Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sqkd/keyrate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "sqkd/errors.hpp"
#include "sqkd/linalg.hpp"

namespace sqkd {

namespace {

double root_product(double a, double b) { return std::sqrt(std::max(a * b, 0.0)); }

KeyRateReport evaluate(const ChannelStatistics &s) {
    KeyRateReport r;
    r.overlap_bound = cross_overlap_lower_bound(s);
    r.capped_bound = cap_overlap_bound(r.overlap_bound);
    const LambdaTilde lam = lambda_tilde(s.p(0, 0, 0), s.p(1, 1, 1), r.capped_bound);
    r.lambda_tilde = lam.value;
    r.lambda_clamped = lam.clamped;
    r.s_bec = s_bec(s);
    r.s_ec_upper = s_ec_upper(s, lam.value);
    r.p_alice_zero = p_alice_zero(s);
    r.joint = joint_key_distribution(s);
    r.h_b_given_a = shannon_entropy(r.joint) - binary_entropy(r.p_alice_zero);
    r.rate = r.s_bec - r.s_ec_upper - r.h_b_given_a;
    return r;
}

} // namespace

double cross_overlap_lower_bound(const ChannelStatistics &s) {
    return 1.0 - s.p_pm - s.p_mp                      //
           - root_product(s.p(0, 0, 0), s.p(1, 0, 1)) //
           - root_product(s.p(0, 1, 0), s.p(1, 0, 1)) //
           - root_product(s.p(0, 1, 0), s.p(1, 1, 1)) //
           - root_product(s.p(0, 0, 1), s.p(1, 0, 0)) //
           - root_product(s.p(0, 0, 1), s.p(1, 1, 0)) //
           - root_product(s.p(0, 1, 1), s.p(1, 0, 0)) //
           - root_product(s.p(0, 1, 1), s.p(1, 1, 0));
}

double cap_overlap_bound(double overlap_bound) {
    return overlap_bound >= 0.0 ? overlap_bound * overlap_bound : 0.0;
}

LambdaTilde lambda_tilde(double p000, double p111, double capped_bound) {
    if (!(p000 > 0.0)) {
        throw AbortError("p000 is zero: too much noise, the protocol aborts");
    }
    const double delta = p000 - p111;
    const double value =
        0.5 + std::sqrt(delta * delta + 4.0 * std::max(capped_bound, 0.0)) / (2.0 * (p000 + p111));
    if (value > 1.0) {
        return {1.0, true};
    }
    return {value, false};
}

double s_bec(const ChannelStatistics &s) {
    std::array<double, 8> halves{};
    std::size_t n = 0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int k = 0; k < 2; ++k) {
                halves[n++] = 0.5 * s.p(i, j, k);
            }
        }
    }
    return shannon_entropy(halves);
}

double s_ec_upper(const ChannelStatistics &s, double lambda) {
    const double t1 = s.p(0, 0, 0) + s.p(1, 1, 1);
    const double t2 = s.p(1, 0, 0) + s.p(0, 1, 1);
    const double t3 = s.p(0, 0, 1) + s.p(1, 1, 0);
    const double t4 = s.p(1, 0, 1) + s.p(0, 1, 0);
    const std::array<double, 4> weights{0.5 * t1, 0.5 * t2, 0.5 * t3, 0.5 * t4};
    return shannon_entropy(weights) + 0.5 * (t2 + t3 + t4) + 0.5 * t1 * binary_entropy(lambda);
}

double p_alice_zero(const ChannelStatistics &s) {
    return 0.5 * (s.p(0, 0, 0) + s.p(0, 1, 0) + s.p(1, 1, 0) + s.p(1, 0, 0));
}

std::array<double, 4> joint_key_distribution(const ChannelStatistics &s) {
    return {0.5 * (s.p(0, 0, 0) + s.p(1, 0, 0)), 0.5 * (s.p(0, 0, 1) + s.p(1, 0, 1)),
            0.5 * (s.p(0, 1, 0) + s.p(1, 1, 0)), 0.5 * (s.p(0, 1, 1) + s.p(1, 1, 1))};
}

double h_b_given_a(const ChannelStatistics &s) {
    return shannon_entropy(joint_key_distribution(s)) - binary_entropy(p_alice_zero(s));
}

KeyRateReport key_rate_bound(const ChannelStatistics &stats, Normalization mode) {
    return evaluate(validate_statistics(stats, mode));
}

double key_rate_unchecked(const ChannelStatistics &stats) { return evaluate(stats).rate; }

ChannelStatistics symmetric_stats(const ScenarioParams &params) {
    for (double q : {params.forward_flip, params.reverse_flip, params.x_error}) {
        if (!(q >= 0.0 && q <= 0.5)) {
            throw InvalidArgument(fmt::format("scenario parameter {} outside [0, 1/2]", q));
        }
    }
    const double qf = params.forward_flip;
    const double qr = params.reverse_flip;
    ChannelStatistics s;
    s.p(0, 0, 0) = s.p(1, 1, 1) = (1.0 - qf) * (1.0 - qr);
    s.p(0, 0, 1) = s.p(1, 1, 0) = (1.0 - qf) * qr;
    s.p(0, 1, 0) = s.p(1, 0, 1) = qf * qr;
    s.p(0, 1, 1) = s.p(1, 0, 0) = qf * (1.0 - qr);
    s.p_pm = s.p_mp = params.x_error;
    return s;
}

Scenario parse_scenario(std::string_view tag) {
    if (tag == "equal") {
        return Scenario::Equal;
    }
    if (tag == "fwd-half") {
        return Scenario::ForwardHalf;
    }
    if (tag == "rev-half") {
        return Scenario::ReverseHalf;
    }
    throw InvalidArgument(fmt::format(
        "unknown scenario '{}' (expected equal, fwd-half or rev-half)", tag));
}

std::string_view scenario_tag(Scenario scenario) {
    switch (scenario) {
    case Scenario::Equal:
        return "equal";
    case Scenario::ForwardHalf:
        return "fwd-half";
    case Scenario::ReverseHalf:
        return "rev-half";
    }
    return "?";
}

ScenarioParams scenario_params(Scenario scenario, double x_ratio, double q) {
    switch (scenario) {
    case Scenario::Equal:
        return {q, q, x_ratio * q};
    case Scenario::ForwardHalf:
        return {0.5 * q, q, x_ratio * q};
    case Scenario::ReverseHalf:
        return {q, 0.5 * q, x_ratio * q};
    }
    throw InvalidArgument("unknown scenario");
}

double scenario_rate(Scenario scenario, double x_ratio, double q) {
    return key_rate_bound(symmetric_stats(scenario_params(scenario, x_ratio, q))).rate;
}

double noise_threshold(Scenario scenario, double x_ratio, const ThresholdSearch &search) {
    if (!(x_ratio > 0.0)) {
        throw InvalidArgument("x-basis ratio must be positive");
    }
    auto positive = [&](double q) {
        // Past Qx = 1/2 the scenario leaves the physical range; treat as no key.
        const ScenarioParams params = scenario_params(scenario, x_ratio, q);
        if (params.forward_flip > 0.5 || params.reverse_flip > 0.5 || params.x_error > 0.5) {
            return false;
        }
        try {
            return scenario_rate(scenario, x_ratio, q) > 0.0;
        } catch (const AbortError &) {
            return false;
        }
    };
    if (!positive(0.0)) {
        throw InvalidArgument("rate is not positive at Q = 0");
    }
    const auto steps = static_cast<long>(std::floor(search.scan_max / search.scan_step + 1e-9));
    long last_positive = 0;
    for (long n = 1; n <= steps; ++n) {
        if (positive(static_cast<double>(n) * search.scan_step)) {
            last_positive = n;
        }
    }
    double lo = static_cast<double>(last_positive) * search.scan_step;
    if (last_positive == steps) {
        return lo;
    }
    double hi = static_cast<double>(last_positive + 1) * search.scan_step;
    while (hi - lo > search.tolerance) {
        const double mid = 0.5 * (lo + hi);
        (positive(mid) ? lo : hi) = mid;
    }
    return lo;
}

std::vector<SweepPoint> sweep(Scenario scenario, double x_ratio, double q_max, int steps) {
    if (steps < 2) {
        throw InvalidArgument("sweep needs at least two steps");
    }
    if (!(q_max > 0.0)) {
        throw InvalidArgument("sweep upper limit must be positive");
    }
    std::vector<SweepPoint> points;
    points.reserve(static_cast<std::size_t>(steps));
    for (int n = 0; n < steps; ++n) {
        const double q = q_max * static_cast<double>(n) / static_cast<double>(steps - 1);
        points.push_back({q, scenario_rate(scenario, x_ratio, q)});
    }
    return points;
}

} // namespace sqkd
