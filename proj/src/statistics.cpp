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

#include "sqkd/statistics.hpp"

#include <cmath>

#include <fmt/format.h>

#include "sqkd/errors.hpp"

namespace sqkd {

namespace {

constexpr double kRangeTolerance = 1e-9;

void check_range(double value, const std::string &name) {
    if (!std::isfinite(value) || value < -kRangeTolerance || value > 1.0 + kRangeTolerance) {
        throw InvalidArgument(fmt::format("statistic {} = {} is outside [0, 1]", name, value));
    }
}

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

} // namespace

std::string z_key(int i, int j, int k) { return fmt::format("p{}{}{}", i, j, k); }

double ChannelStatistics::z_block_sum(int i) const {
    return z[i][0][0] + z[i][0][1] + z[i][1][0] + z[i][1][1];
}

ChannelStatistics validate_statistics(const ChannelStatistics &stats, Normalization mode) {
    ChannelStatistics out = stats;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int k = 0; k < 2; ++k) {
                check_range(stats.p(i, j, k), z_key(i, j, k));
                out.p(i, j, k) = clamp01(stats.p(i, j, k));
            }
        }
    }
    check_range(stats.p_pm, "p_plus_minus");
    check_range(stats.p_mp, "p_minus_plus");
    out.p_pm = clamp01(stats.p_pm);
    out.p_mp = clamp01(stats.p_mp);

    for (int i = 0; i < 2; ++i) {
        const double sum = out.z_block_sum(i);
        if (mode == Normalization::Renormalize) {
            if (sum <= 0.0) {
                throw InvalidArgument(fmt::format(
                    "statistics for sent bit {} are all zero; cannot renormalize", i));
            }
            for (int j = 0; j < 2; ++j) {
                for (int k = 0; k < 2; ++k) {
                    out.p(i, j, k) /= sum;
                }
            }
        } else if (std::abs(sum - 1.0) > kStatisticsSumTolerance) {
            throw InvalidArgument(fmt::format(
                "statistics p{}jk sum to {:.12g}, expected 1 (use renormalization for "
                "sampled estimates)",
                i, sum));
        }
    }
    return out;
}

} // namespace sqkd
