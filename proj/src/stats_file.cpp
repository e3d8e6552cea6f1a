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

#include "sqkd/stats_file.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string_view>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace sqkd {

namespace {

constexpr std::array<std::string_view, 10> kKeys = {
    "p000", "p001", "p010", "p011", "p100", "p101", "p110", "p111",
    "p_plus_minus", "p_minus_plus"};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::optional<std::size_t> key_index(std::string_view key) {
    for (std::size_t n = 0; n < kKeys.size(); ++n) {
        if (kKeys[n] == key) {
            return n;
        }
    }
    return std::nullopt;
}

double &slot(ChannelStatistics &s, std::size_t index) {
    if (index < 8) {
        return s.z[index >> 2][(index >> 1) & 1][index & 1];
    }
    return index == 8 ? s.p_pm : s.p_mp;
}

} // namespace

StatsFileError::StatsFileError(const std::string &message, int line)
    : InvalidArgument(message), line_(line) {}

ChannelStatistics read_stats(std::istream &in, const std::string &source) {
    ChannelStatistics stats;
    std::array<int, kKeys.size()> seen_at{};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw StatsFileError(
                fmt::format("{}:{}: expected 'key = value'", source, line_no), line_no);
        }
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value_text = trim(line.substr(eq + 1));
        const auto index = key_index(key);
        if (!index) {
            throw StatsFileError(fmt::format("{}:{}: unknown key '{}'", source, line_no, key),
                                 line_no);
        }
        if (seen_at[*index] != 0) {
            throw StatsFileError(fmt::format("{}:{}: duplicate key '{}' (first on line {})",
                                             source, line_no, key, seen_at[*index]),
                                 line_no);
        }
        double value = 0.0;
        const auto *begin = value_text.data();
        const auto *end = begin + value_text.size();
        const auto [ptr, ec] = std::from_chars(begin, end, value);
        if (value_text.empty() || ec != std::errc{} || ptr != end) {
            throw StatsFileError(fmt::format("{}:{}: value of '{}' is not a decimal number: '{}'",
                                             source, line_no, key, value_text),
                                 line_no);
        }
        if (!(value >= 0.0 && value <= 1.0)) {
            throw StatsFileError(fmt::format("{}:{}: value of '{}' = {} is outside [0, 1]",
                                             source, line_no, key, value),
                                 line_no);
        }
        slot(stats, *index) = value;
        seen_at[*index] = line_no;
    }
    for (std::size_t n = 0; n < kKeys.size(); ++n) {
        if (seen_at[n] == 0) {
            throw StatsFileError(fmt::format("{}: missing key '{}'", source, kKeys[n]));
        }
    }
    return stats;
}

ChannelStatistics read_stats_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw StatsFileError(fmt::format("cannot open stats file '{}'", path.string()));
    }
    return read_stats(in, path.string());
}

void write_stats(std::ostream &out, const ChannelStatistics &stats) {
    ChannelStatistics copy = stats;
    for (std::size_t n = 0; n < kKeys.size(); ++n) {
        fmt::print(out, "{} = {:.17g}\n", kKeys[n], slot(copy, n));
    }
}

void write_stats_file(const std::filesystem::path &path, const ChannelStatistics &stats) {
    std::ofstream out(path);
    if (!out) {
        throw InvalidArgument(fmt::format("cannot write stats file '{}'", path.string()));
    }
    write_stats(out, stats);
    if (!out) {
        throw InvalidArgument(fmt::format("error while writing '{}'", path.string()));
    }
}

} // namespace sqkd
