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

#include <iostream>

#include <CLI11.hpp>

#include "sqkd/commands.hpp"

int main(int argc, char **argv) {
    using namespace sqkd::cli;

    CLI::App app{"Key-rate bounds and protocol simulation for measure-resend SQKD"};
    app.require_subcommand(1);

    RateOptions rate;
    std::string stats_path;
    std::string symmetric;
    auto *rate_cmd = app.add_subcommand("rate", "Key-rate bound from observed statistics");
    auto *stats_opt = rate_cmd->add_option("--stats", stats_path, "Statistics file");
    auto *sym_opt = rate_cmd->add_option("--symmetric", symmetric,
                                         "Symmetric scenario Qf,Qr,Qx (decimals)");
    stats_opt->excludes(sym_opt);
    rate_cmd->add_flag("--normalize", rate.normalize,
                       "Rescale each sent-bit block to sum to one");

    ThresholdOptions threshold;
    auto *threshold_cmd =
        app.add_subcommand("threshold", "Largest noise level with a positive rate");
    threshold_cmd->add_option("--scenario", threshold.scenario, "equal | fwd-half | rev-half")
        ->capture_default_str();
    threshold_cmd->add_option("--qx-ratio", threshold.x_ratio, "Qx / Q")
        ->capture_default_str();

    SweepOptions sweep;
    auto *sweep_cmd = app.add_subcommand("sweep", "Rate bound over a grid of noise levels");
    sweep_cmd->add_option("--scenario", sweep.scenario, "equal | fwd-half | rev-half")
        ->capture_default_str();
    sweep_cmd->add_option("--qx-ratio", sweep.x_ratio, "Qx / Q")->capture_default_str();
    sweep_cmd->add_option("--qmax", sweep.q_max, "Largest Q on the grid")->capture_default_str();
    sweep_cmd->add_option("--steps", sweep.steps, "Number of grid points")
        ->capture_default_str();
    sweep_cmd->add_option("--out", sweep.out_path, "CSV output path ('-' for stdout)");

    SimulateOptions simulate;
    auto *simulate_cmd = app.add_subcommand("simulate", "Monte Carlo run of the protocol");
    simulate_cmd
        ->add_option("--attack", simulate.attack,
                     "identity | zmeasure | symmetric:Qf,Qr | random:dE")
        ->capture_default_str();
    simulate_cmd->add_option("--iterations", simulate.iterations)->capture_default_str();
    simulate_cmd->add_option("--seed", simulate.seed)->capture_default_str();
    simulate_cmd->add_option("--workers", simulate.workers)->capture_default_str();
    simulate_cmd->add_option("--out", simulate.out_path, "Write estimated statistics here");

    ValidateOptions validate;
    int inject_fault = -1;
    auto *validate_cmd =
        app.add_subcommand("validate", "Check the bound against exact rates for random attacks");
    validate_cmd->add_option("--attacks", validate.attacks)->capture_default_str();
    validate_cmd->add_option("--ancilla-dims", validate.ancilla_dims)
        ->delimiter(',')
        ->capture_default_str();
    validate_cmd->add_option("--seed", validate.seed)->capture_default_str();
    validate_cmd->add_option("--inject-fault", inject_fault)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kSuccess : kInputError;
    }

    if (rate_cmd->parsed()) {
        if (*stats_opt) {
            rate.stats_path = stats_path;
        }
        if (*sym_opt) {
            rate.symmetric = symmetric;
        }
        return cmd_rate(rate, std::cout, std::cerr);
    }
    if (threshold_cmd->parsed()) {
        return cmd_threshold(threshold, std::cout, std::cerr);
    }
    if (sweep_cmd->parsed()) {
        return cmd_sweep(sweep, std::cout, std::cerr);
    }
    if (simulate_cmd->parsed()) {
        return cmd_simulate(simulate, std::cout, std::cerr);
    }
    if (inject_fault >= 0) {
        validate.inject_fault = inject_fault;
    }
    return cmd_validate(validate, std::cout, std::cerr);
}
