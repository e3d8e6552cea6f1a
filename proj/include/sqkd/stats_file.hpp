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
 * Plain-text statistics file.
 *
 *     # comment
 *     p000 = 0.9025
 *     ...
 *     p_plus_minus = 0.05
 *     p_minus_plus = 0.05
 *
 * One `key = value` per line, `#` starts a comment, blank lines ignored.
 * All ten keys are required exactly once; unknown keys are rejected.
 * Values are decimals in [0, 1].
 */

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "sqkd/errors.hpp"
#include "sqkd/statistics.hpp"

namespace sqkd {

class StatsFileError : public InvalidArgument {
  public:
    StatsFileError(const std::string &message, int line = 0);
    [[nodiscard]] int line() const noexcept { return line_; }

  private:
    int line_;
};

/// `source` names the input in error messages.
[[nodiscard]] ChannelStatistics read_stats(std::istream &in,
                                           const std::string &source = "<stream>");
[[nodiscard]] ChannelStatistics read_stats_file(const std::filesystem::path &path);

/// Writes all ten keys in canonical order with 17 significant digits, so a
/// read-back reproduces the doubles exactly.
void write_stats(std::ostream &out, const ChannelStatistics &stats);
void write_stats_file(const std::filesystem::path &path, const ChannelStatistics &stats);

} // namespace sqkd
