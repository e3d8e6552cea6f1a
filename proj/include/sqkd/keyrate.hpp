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

/**
 * @file
 * Key-rate lower bound from observed channel statistics.
 *
 * The bound is S(BEC) - S(EC)_upper - H(B|A) under reverse reconciliation,
 * where S(EC) is bounded using the X-basis estimate of the overlap
 * <e_{0,0}^0|e_{1,3}^1>.
 */

#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "sqkd/statistics.hpp"

namespace sqkd {

struct KeyRateReport {
    double overlap_bound = 0.0;   ///< B: lower bound on Re<e000|e131>, may be negative
    double capped_bound = 0.0;    ///< max(B, 0)^2, lower bound on |<e000|e131>|^2
    double lambda_tilde = 0.5;    ///< dominant eigenvalue bound of the normalized sigma_1
    bool lambda_clamped = false;  ///< lambda_tilde exceeded one and was clamped
    double s_bec = 0.0;           ///< S(BEC), bits
    double s_ec_upper = 0.0;      ///< upper bound on S(EC), bits
    double p_alice_zero = 0.5;    ///< probability that Alice's raw key bit is 0
    std::array<double, 4> joint{}; ///< p(b,a) ordered (0,0), (0,1), (1,0), (1,1)
    double h_b_given_a = 0.0;     ///< H(B|A), bits
    double rate = 0.0;            ///< key-rate lower bound, bits per raw-key bit
};

/// B = 1 - p_pm - p_mp - (seven Cauchy-Schwarz cross terms).
[[nodiscard]] double cross_overlap_lower_bound(const ChannelStatistics &stats);

/// B^2 if B >= 0, else 0.
[[nodiscard]] double cap_overlap_bound(double overlap_bound);

struct LambdaTilde {
    double value;
    bool clamped;
};

/// 1/2 + sqrt((p000 - p111)^2 + 4 calB) / (2 (p000 + p111)), clamped to
/// [1/2, 1]. Throws AbortError if p000 <= 0.
[[nodiscard]] LambdaTilde lambda_tilde(double p000, double p111, double capped_bound);

/// H(p000/2, ..., p111/2) over all eight halved entries.
[[nodiscard]] double s_bec(const ChannelStatistics &stats);

/// Upper bound on S(EC) using h(lambda) for the correct/no-flip block and
/// the trivial one-bit bound for the other three.
[[nodiscard]] double s_ec_upper(const ChannelStatistics &stats, double lambda);

[[nodiscard]] double p_alice_zero(const ChannelStatistics &stats);

/// p(b,a) ordered (0,0), (0,1), (1,0), (1,1).
[[nodiscard]] std::array<double, 4> joint_key_distribution(const ChannelStatistics &stats);

/// H(B,A) - H(A)
[[nodiscard]] double h_b_given_a(const ChannelStatistics &stats);

/// Full bound with intermediates. Validates the statistics first (throws
/// InvalidArgument) and throws AbortError if p000 <= 0.
[[nodiscard]] KeyRateReport key_rate_bound(const ChannelStatistics &stats,
                                           Normalization mode = Normalization::Strict);

/// Same as key_rate_bound(stats).rate but skips validation, so it can be
/// evaluated at perturbed points (finite differences).
[[nodiscard]] double key_rate_unchecked(const ChannelStatistics &stats);

/// Symmetric attack parameters: forward flip, reverse flip, X disturbance.
struct ScenarioParams {
    double forward_flip = 0.0;
    double reverse_flip = 0.0;
    double x_error = 0.0;
};

[[nodiscard]] ChannelStatistics symmetric_stats(const ScenarioParams &params);

/// How the forward and reverse flip probabilities scale with Q.
enum class Scenario {
    Equal,       ///< Qf = Qr = Q
    ForwardHalf, ///< Qf = Q/2, Qr = Q
    ReverseHalf  ///< Qf = Q, Qr = Q/2
};

[[nodiscard]] Scenario parse_scenario(std::string_view tag);
[[nodiscard]] std::string_view scenario_tag(Scenario scenario);

/// Parameters at noise level Q with Qx = x_ratio * Q.
[[nodiscard]] ScenarioParams scenario_params(Scenario scenario, double x_ratio, double q);

/// Rate bound at noise level Q.
[[nodiscard]] double scenario_rate(Scenario scenario, double x_ratio, double q);

struct ThresholdSearch {
    double scan_max = 0.25;
    double scan_step = 1e-3;
    double tolerance = 1e-6;
};

/// Largest Q in [0, scan_max] with a positive rate: a full grid scan locates
/// the last positive grid point, then bisection refines the crossing that
/// follows it. Throws InvalidArgument if the rate at Q = 0 is not positive.
[[nodiscard]] double noise_threshold(Scenario scenario, double x_ratio,
                                     const ThresholdSearch &search = {});

struct SweepPoint {
    double q;
    double rate;
};

/// `steps` evenly spaced points on [0, q_max]. Rates may be negative.
[[nodiscard]] std::vector<SweepPoint> sweep(Scenario scenario, double x_ratio,
                                            double q_max, int steps);

} // namespace sqkd
