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

#include "sqkd/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <string_view>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "sqkd/attack.hpp"
#include "sqkd/errors.hpp"
#include "sqkd/keyrate.hpp"
#include "sqkd/linalg.hpp"
#include "sqkd/random.hpp"
#include "sqkd/simulator.hpp"
#include "sqkd/stats_file.hpp"

namespace sqkd::cli {

namespace {

constexpr double kCheckTolerance = 1e-9;

std::vector<double> parse_doubles(std::string_view text, std::size_t expected,
                                  std::string_view what) {
    std::vector<double> values;
    while (true) {
        const auto comma = text.find(',');
        const std::string_view item = text.substr(0, comma);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
            throw InvalidArgument(fmt::format("{}: '{}' is not a number", what, item));
        }
        values.push_back(v);
        if (comma == std::string_view::npos) {
            break;
        }
        text.remove_prefix(comma + 1);
    }
    if (values.size() != expected) {
        throw InvalidArgument(
            fmt::format("{}: expected {} comma-separated values, got {}", what, expected,
                        values.size()));
    }
    return values;
}

void print_report(std::ostream &out, const KeyRateReport &r) {
    fmt::print(out, "overlap_bound = {:.12g}\n", r.overlap_bound);
    fmt::print(out, "capped_overlap_bound = {:.12g}\n", r.capped_bound);
    fmt::print(out, "lambda_tilde = {:.12g}\n", r.lambda_tilde);
    fmt::print(out, "lambda_clamped = {}\n", r.lambda_clamped);
    fmt::print(out, "s_bec = {:.12g}\n", r.s_bec);
    fmt::print(out, "s_ec_upper = {:.12g}\n", r.s_ec_upper);
    fmt::print(out, "p_alice_zero = {:.12g}\n", r.p_alice_zero);
    fmt::print(out, "p_joint_00 = {:.12g}\n", r.joint[0]);
    fmt::print(out, "p_joint_01 = {:.12g}\n", r.joint[1]);
    fmt::print(out, "p_joint_10 = {:.12g}\n", r.joint[2]);
    fmt::print(out, "p_joint_11 = {:.12g}\n", r.joint[3]);
    fmt::print(out, "h_b_given_a = {:.12g}\n", r.h_b_given_a);
    fmt::print(out, "rate = {:.12g}\n", r.rate);
}

CollectiveAttack parse_attack(std::string_view spec, std::uint64_t seed) {
    if (spec == "identity") {
        return identity_attack();
    }
    if (spec == "zmeasure") {
        return z_measure_attack();
    }
    const auto colon = spec.find(':');
    const std::string_view kind = spec.substr(0, colon);
    const std::string_view args =
        colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
    if (kind == "symmetric") {
        const auto q = parse_doubles(args, 2, "symmetric attack");
        return symmetric_realizing_attack(q[0], q[1]);
    }
    if (kind == "random") {
        const auto d = parse_doubles(args, 1, "random attack");
        if (d[0] < 1 || d[0] > static_cast<double>(kMaxAncillaDim) || d[0] != std::floor(d[0])) {
            throw InvalidArgument(
                fmt::format("random attack: ancilla dimension must be an integer in [1, {}]",
                            kMaxAncillaDim));
        }
        return random_attack(static_cast<std::size_t>(d[0]), derive_seed(seed, ~0ULL));
    }
    throw InvalidArgument(fmt::format(
        "unknown attack '{}' (expected identity, zmeasure, symmetric:Qf,Qr or random:dE)",
        spec));
}

} // namespace

int cmd_rate(const RateOptions &opts, std::ostream &out, std::ostream &err) {
    try {
        if (opts.stats_path.has_value() == opts.symmetric.has_value()) {
            throw InvalidArgument("give exactly one of --stats or --symmetric");
        }
        ChannelStatistics stats;
        if (opts.stats_path) {
            stats = read_stats_file(*opts.stats_path);
        } else {
            const auto q = parse_doubles(*opts.symmetric, 3, "--symmetric");
            stats = symmetric_stats({q[0], q[1], q[2]});
        }
        const KeyRateReport report = key_rate_bound(
            stats, opts.normalize ? Normalization::Renormalize : Normalization::Strict);
        if (report.lambda_clamped) {
            fmt::print(err, "warning: lambda_tilde exceeded 1 and was clamped; the "
                            "statistics are not realizable by any attack\n");
        }
        print_report(out, report);
        return report.rate > 0.0 ? kSuccess : kNonPositiveRate;
    } catch (const AbortError &e) {
        fmt::print(err, "abort: {}\n", e.what());
        return kAbort;
    } catch (const Error &e) {
        fmt::print(err, "error: {}\n", e.what());
        return kInputError;
    }
}

int cmd_threshold(const ThresholdOptions &opts, std::ostream &out, std::ostream &err) {
    try {
        const double q = noise_threshold(parse_scenario(opts.scenario), opts.x_ratio);
        fmt::print(out, "{:.6f}\n", q);
        return kSuccess;
    } catch (const Error &e) {
        fmt::print(err, "error: {}\n", e.what());
        return kInputError;
    }
}

void write_sweep_csv(std::ostream &out, std::span<const SweepPoint> points) {
    out << "Q,rate\n";
    for (const auto &p : points) {
        fmt::print(out, "{:.9g},{:.9g}\n", p.q, p.rate);
    }
}

int cmd_sweep(const SweepOptions &opts, std::ostream &out, std::ostream &err) {
    try {
        const auto points =
            sweep(parse_scenario(opts.scenario), opts.x_ratio, opts.q_max, opts.steps);
        if (opts.out_path.empty() || opts.out_path == "-") {
            write_sweep_csv(out, points);
            return kSuccess;
        }
        std::ofstream file(opts.out_path);
        if (!file) {
            throw InvalidArgument(fmt::format("cannot write '{}'", opts.out_path));
        }
        write_sweep_csv(file, points);
        file.close();
        if (!file) {
            throw InvalidArgument(fmt::format("error while writing '{}'", opts.out_path));
        }
        fmt::print(out, "wrote {} rows to {}\n", points.size(), opts.out_path);
        return kSuccess;
    } catch (const Error &e) {
        fmt::print(err, "error: {}\n", e.what());
        return kInputError;
    }
}

int cmd_simulate(const SimulateOptions &opts, std::ostream &out, std::ostream &err) {
    try {
        const CollectiveAttack attack = parse_attack(opts.attack, opts.seed);
        ProtocolConfig config;
        config.iterations = opts.iterations;
        config.seed = opts.seed;
        config.workers = opts.workers;
        const ProtocolRun run = run_protocol(attack, config);
        const StatisticsEstimate est = estimate_statistics(run.tally);
        const ChannelStatistics analytic = statistics(attack);

        if (!opts.out_path.empty()) {
            write_stats_file(opts.out_path, est.stats);
        }

        fmt::print(out, "attack {} (ancilla dim {}), {} iterations, seed {}\n", opts.attack,
                   attack.ancilla_dim(), opts.iterations, opts.seed);
        fmt::print(out, "class sizes: z0 {} z1 {} x+ {} x- {} other {}\n", est.z_class_size[0],
                   est.z_class_size[1], est.x_class_size[0], est.x_class_size[1],
                   run.tally.other);
        fmt::print(out, "{:<14} {:>14} {:>14} {:>12} {:>8}\n", "statistic", "empirical",
                   "analytic", "std.err", "z");
        auto row = [&](const std::string &name, double emp, double exact, double se) {
            const double z = se > 0.0 ? (emp - exact) / se : 0.0;
            fmt::print(out, "{:<14} {:>14.9f} {:>14.9f} {:>12.3e} {:>8.3f}\n", name, emp, exact,
                       se, z);
        };
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                for (int k = 0; k < 2; ++k) {
                    row(z_key(i, j, k), est.stats.p(i, j, k), analytic.p(i, j, k),
                        est.standard_error.p(i, j, k));
                }
            }
        }
        row("p_plus_minus", est.stats.p_pm, analytic.p_pm, est.standard_error.p_pm);
        row("p_minus_plus", est.stats.p_mp, analytic.p_mp, est.standard_error.p_mp);

        if (!run.keys.alice.empty()) {
            const auto joint = joint_key_distribution(analytic);
            fmt::print(out, "raw key length {}, qber {:.9f} (analytic {:.9f})\n",
                       run.keys.alice.size(), qber(run.keys), joint[1] + joint[2]);
        }

        try {
            const double bound = key_rate_bound(est.stats, Normalization::Renormalize).rate;
            const double se =
                rate_standard_error(est.stats, est.z_class_size, est.x_class_size);
            fmt::print(out, "rate bound (estimated) = {:.9f} +/- {:.3e}\n", bound, se);
        } catch (const AbortError &) {
            fmt::print(out, "rate bound (estimated) = abort (p000 = 0)\n");
        }
        try {
            fmt::print(out, "rate bound (analytic)  = {:.9f}\n", key_rate_bound(analytic).rate);
        } catch (const AbortError &) {
            fmt::print(out, "rate bound (analytic)  = abort (p000 = 0)\n");
        }
        fmt::print(out, "exact collective rate  = {:.9f}\n", exact_collective_rate(attack));
        return kSuccess;
    } catch (const InsufficientData &e) {
        fmt::print(err, "error: {}\n", e.what());
        return kInputError;
    } catch (const Error &e) {
        fmt::print(err, "error: {}\n", e.what());
        return kInputError;
    }
}

namespace {

// Fields stay NaN when the evaluation failed before reaching them.
struct AttackCheck {
    double identity_residual = std::numeric_limits<double>::quiet_NaN();
    double eq6_deviation = std::numeric_limits<double>::quiet_NaN();
    double x_bound_slack = std::numeric_limits<double>::quiet_NaN(); ///< Re<e000|e131> - B
    double rate_slack = std::numeric_limits<double>::quiet_NaN();    ///< exact rate - bound
    bool aborted = false;
    std::vector<std::string> violations;
};

AttackCheck check_attack(const CollectiveAttack &attack) {
    AttackCheck c;
    try {
        const AttackVectors v = extract_vectors(attack);
        c.identity_residual = vector_identity_residual(attack, v);
        if (c.identity_residual > kCheckTolerance) {
            c.violations.push_back(
                fmt::format("unitarity identities violated (residual {:.3e})", c.identity_residual));
        }
        const ChannelStatistics stats = statistics(v);
        c.eq6_deviation = std::abs(s_bec(stats) - von_neumann_entropy(rho_BEC(attack)));
        if (c.eq6_deviation > kCheckTolerance) {
            c.violations.push_back(
                fmt::format("S(BEC) closed form deviates by {:.3e}", c.eq6_deviation));
        }
        const double overlap = v.e_ret(0, 0, 0).dot(v.e_ret(1, 3, 1)).real();
        c.x_bound_slack = overlap - cross_overlap_lower_bound(stats);
        if (c.x_bound_slack < -kCheckTolerance) {
            c.violations.push_back(
                fmt::format("X-basis overlap bound violated by {:.3e}", -c.x_bound_slack));
        }
        try {
            const double bound = key_rate_bound(stats).rate;
            c.rate_slack = exact_collective_rate(attack) - bound;
            if (c.rate_slack < -kCheckTolerance) {
                c.violations.push_back(
                    fmt::format("rate bound exceeds exact rate by {:.3e}", -c.rate_slack));
            }
        } catch (const AbortError &) {
            c.aborted = true;
        }
    } catch (const Error &e) {
        c.violations.push_back(fmt::format("evaluation failed: {}", e.what()));
    }
    return c;
}

} // namespace

int cmd_validate(const ValidateOptions &opts, std::ostream &out, std::ostream &err) {
    if (opts.attacks < 1) {
        fmt::print(err, "error: --attacks must be at least 1\n");
        return kInputError;
    }
    if (opts.ancilla_dims.empty()) {
        fmt::print(err, "error: --ancilla-dims must not be empty\n");
        return kInputError;
    }
    for (int d : opts.ancilla_dims) {
        if (d < 1 || d > static_cast<int>(kMaxAncillaDim)) {
            fmt::print(err, "error: ancilla dimension {} outside [1, {}]\n", d, kMaxAncillaDim);
            return kInputError;
        }
    }

    const AttackCheck identity = check_attack(identity_attack());
    fmt::print(out, "identity attack: slack {:.3e}\n", identity.rate_slack);
    bool failed = !identity.violations.empty();
    for (const auto &v : identity.violations) {
        fmt::print(err, "violation: identity attack: {}\n", v);
    }

    double worst_rate_slack = std::numeric_limits<double>::infinity();
    double worst_x_slack = std::numeric_limits<double>::infinity();
    double worst_identity = identity.identity_residual;
    double worst_eq6 = identity.eq6_deviation;
    int aborted = 0;
    for (int n = 0; n < opts.attacks; ++n) {
        const auto d = static_cast<std::size_t>(
            opts.ancilla_dims[static_cast<std::size_t>(n) % opts.ancilla_dims.size()]);
        const std::uint64_t attack_seed = derive_seed(opts.seed, static_cast<std::uint64_t>(n));
        // Alternate generic attacks with weak ones, where the bound is positive
        // and the slack is informative.
        Rng rng(attack_seed);
        CollectiveAttack attack = n % 2 == 0
                                      ? random_attack(d, rng)
                                      : random_weak_attack(d, 0.02 + 0.1 * uniform01(rng), rng);
        if (opts.inject_fault && *opts.inject_fault == n) {
            attack = CollectiveAttack::make_unchecked(attack.forward(), 1.001 * attack.reverse(), d);
        }
        const AttackCheck c = check_attack(attack);
        aborted += c.aborted ? 1 : 0;
        worst_rate_slack = std::fmin(worst_rate_slack, c.rate_slack);
        worst_x_slack = std::fmin(worst_x_slack, c.x_bound_slack);
        worst_identity = std::fmax(worst_identity, c.identity_residual);
        worst_eq6 = std::fmax(worst_eq6, c.eq6_deviation);
        for (const auto &v : c.violations) {
            failed = true;
            fmt::print(err, "violation: attack {} (ancilla dim {}, seed {}): {}\n", n, d,
                       attack_seed, v);
        }
    }

    fmt::print(out, "attacks checked: {} (+ identity), aborted: {}\n", opts.attacks, aborted);
    fmt::print(out, "worst rate slack (exact - bound): {:.6e}\n", worst_rate_slack);
    fmt::print(out, "worst X-bound slack: {:.6e}\n", worst_x_slack);
    fmt::print(out, "worst unitarity identity residual: {:.3e}\n", worst_identity);
    fmt::print(out, "worst S(BEC) deviation: {:.3e}\n", worst_eq6);
    fmt::print(out, "{}\n", failed ? "FAIL" : "PASS");
    return failed ? kValidationFailure : kSuccess;
}

} // namespace sqkd::cli
