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
 * Monte Carlo simulation of the quantum communication stage.
 *
 * Each iteration evolves the pure joint state transit (x) ancilla:
 * Alice prepares |0>, |1>, |+> or |->; Eve applies U_E; Bob either measures
 * in Z (collapsing the joint state; the transit qubit he resends is the
 * measured |r>) or reflects; Eve applies U_F; Alice measures in her
 * preparation basis.
 *
 * Iterations are split into fixed chunks of kChunkIterations. Chunk c draws
 * from std::mt19937_64 seeded with derive_seed(seed, c), so the result
 * depends only on (attack, config) and not on the worker count.
 */

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "sqkd/attack.hpp"
#include "sqkd/statistics.hpp"

namespace sqkd {

inline constexpr std::uint64_t kChunkIterations = 1u << 16;

struct ProtocolConfig {
    std::uint64_t iterations = 0;
    double prob_z_basis = 0.5;        ///< Alice prepares in Z with this probability
    double prob_measure_resend = 0.5; ///< Bob measures and resends with this probability
    std::uint64_t seed = 0;
    unsigned workers = 1;
};

void validate_config(const ProtocolConfig &config);

struct TallyCounts {
    /// z[i][j][k]: Alice sent |i>, Bob measured j, Alice measured k.
    std::array<std::array<std::array<std::uint64_t, 2>, 2>, 2> z{};
    /// x_reflect[a][b]: Alice sent a (0 = +, 1 = -), Bob reflected, Alice got b.
    std::array<std::array<std::uint64_t, 2>, 2> x_reflect{};
    /// Z-prep with reflect, and X-prep with measure-resend.
    std::uint64_t other = 0;
    std::uint64_t total = 0;

    [[nodiscard]] std::uint64_t cell_sum() const;
    TallyCounts &operator+=(const TallyCounts &rhs);
    friend bool operator==(const TallyCounts &, const TallyCounts &) = default;
};

struct RawKeys {
    std::vector<std::uint8_t> alice;
    std::vector<std::uint8_t> bob;
    friend bool operator==(const RawKeys &, const RawKeys &) = default;
};

struct ProtocolRun {
    TallyCounts tally;
    RawKeys keys;
};

[[nodiscard]] ProtocolRun run_protocol(const CollectiveAttack &attack,
                                       const ProtocolConfig &config);

struct StatisticsEstimate {
    ChannelStatistics stats;
    ChannelStatistics standard_error; ///< sqrt(p (1 - p) / n) per entry
    std::array<std::uint64_t, 2> z_class_size{};
    std::array<std::uint64_t, 2> x_class_size{};
};

/// Conditional relative frequencies. Throws InsufficientData naming the
/// first empty conditioning class.
[[nodiscard]] StatisticsEstimate estimate_statistics(const TallyCounts &tally);

/// Delta-method standard error of the rate bound at `stats`, using the
/// multinomial covariance of each Z class and binomial X classes.
[[nodiscard]] double rate_standard_error(const ChannelStatistics &stats,
                                         const std::array<std::uint64_t, 2> &z_class_size,
                                         const std::array<std::uint64_t, 2> &x_class_size);

/// Fraction of positions where the two keys differ.
[[nodiscard]] double qber(const RawKeys &keys);

/// Applies one seeded random permutation to both strings.
[[nodiscard]] RawKeys permute_keys(const RawKeys &keys, std::uint64_t seed);

} // namespace sqkd
