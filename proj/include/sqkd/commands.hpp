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
 * Subcommands of the `sqkd` tool. Each returns the process exit code and
 * writes to the given streams, so tests can drive them without spawning a
 * process.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sqkd/keyrate.hpp"

namespace sqkd::cli {

enum ExitCode : int {
    kSuccess = 0,
    kInputError = 1,
    kNonPositiveRate = 2,
    kAbort = 3,
    kValidationFailure = 4,
};

struct RateOptions {
    std::optional<std::string> stats_path;
    std::optional<std::string> symmetric; ///< "Qf,Qr,Qx"
    bool normalize = false;
};

struct ThresholdOptions {
    std::string scenario = "equal";
    double x_ratio = 1.0;
};

struct SweepOptions {
    std::string scenario = "equal";
    double x_ratio = 1.0;
    double q_max = 0.12;
    int steps = 121;
    std::string out_path;
};

struct SimulateOptions {
    std::string attack = "identity"; ///< identity | zmeasure | symmetric:Qf,Qr | random:dE
    std::uint64_t iterations = 100000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    std::string out_path;
};

struct ValidateOptions {
    int attacks = 100;
    std::vector<int> ancilla_dims{1, 2, 4};
    std::uint64_t seed = 1;
    /// Test hook: corrupt U_F of this attack index so the checks must fail.
    std::optional<int> inject_fault;
};

int cmd_rate(const RateOptions &opts, std::ostream &out, std::ostream &err);
int cmd_threshold(const ThresholdOptions &opts, std::ostream &out, std::ostream &err);
int cmd_sweep(const SweepOptions &opts, std::ostream &out, std::ostream &err);
int cmd_simulate(const SimulateOptions &opts, std::ostream &out, std::ostream &err);
int cmd_validate(const ValidateOptions &opts, std::ostream &out, std::ostream &err);

/// `Q,rate` header, then one row per point with 9 significant digits.
void write_sweep_csv(std::ostream &out, std::span<const SweepPoint> points);

} // namespace sqkd::cli
