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

#pragma once

#include <array>
#include <string>

namespace sqkd {

/**
 * The ten observables Alice and Bob can estimate.
 *
 * p(i, j, k) is the probability that Bob measures |j> and Alice measures
 * |k> given that Alice sent |i> and Bob chose measure-and-resend.
 * p_pm is the probability that Alice measures |-> after sending |+> when
 * Bob reflected; p_mp is the reverse.
 */
struct ChannelStatistics {
    std::array<std::array<std::array<double, 2>, 2>, 2> z{};
    double p_pm = 0.0;
    double p_mp = 0.0;

    [[nodiscard]] double p(int i, int j, int k) const { return z[i][j][k]; }
    double &p(int i, int j, int k) { return z[i][j][k]; }

    /// sum_{j,k} p(i, j, k)
    [[nodiscard]] double z_block_sum(int i) const;

    friend bool operator==(const ChannelStatistics &,
                           const ChannelStatistics &) = default;
};

/// Per-i block sums must be within this distance of one.
inline constexpr double kStatisticsSumTolerance = 1e-6;

enum class Normalization {
    Strict,     ///< reject blocks whose sum is off by more than the tolerance
    Renormalize ///< rescale each i-block to sum to one
};

/// Checks ranges and block sums; throws InvalidArgument with a message
/// naming the offending entry. In Renormalize mode each i-block is rescaled
/// (an all-zero block is still an error).
[[nodiscard]] ChannelStatistics validate_statistics(const ChannelStatistics &stats,
                                                    Normalization mode = Normalization::Strict);

/// Key names used by the stats file and by reports: "p000" ... "p111",
/// "p_plus_minus", "p_minus_plus".
[[nodiscard]] std::string z_key(int i, int j, int k);

} // namespace sqkd
