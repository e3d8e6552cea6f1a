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

#include "sqkd/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <numeric>
#include <string>
#include <thread>

#include <fmt/format.h>

#include "sqkd/errors.hpp"
#include "sqkd/keyrate.hpp"
#include "sqkd/random.hpp"

namespace sqkd {

namespace {

using Eigen::Index;

constexpr double kBornTolerance = 1e-12;

class ChunkRunner {
  public:
    ChunkRunner(const CollectiveAttack &attack, const ProtocolConfig &config)
        : d_(static_cast<Index>(attack.ancilla_dim())), reverse_(attack.reverse()),
          config_(config) {
        const ComplexOperator &ue = attack.forward();
        const double r = std::numbers::sqrt2 / 2.0;
        // U_E applied to |0,0>, |1,0>, |+,0>, |-,0>.
        sent_[0] = ue.col(0);
        sent_[1] = ue.col(d_);
        sent_[2] = r * (ue.col(0) + ue.col(d_));
        sent_[3] = r * (ue.col(0) - ue.col(d_));
        psi_.resize(2 * d_);
        ancilla_.resize(d_);
    }

    ProtocolRun run(std::uint64_t chunk, std::uint64_t count) {
        Rng rng(derive_seed(config_.seed, chunk));
        ProtocolRun out;
        for (std::uint64_t n = 0; n < count; ++n) {
            step(rng, out);
        }
        out.tally.total = count;
        return out;
    }

  private:
    static int sample(Rng &rng, double p0, double p1) {
        const double total = p0 + p1;
        if (std::abs(total - 1.0) > kBornTolerance) {
            throw Error(fmt::format("Born probabilities sum to {:.17g}", total));
        }
        return uniform01(rng) < p0 / total ? 0 : 1;
    }

    void step(Rng &rng, ProtocolRun &out) {
        const bool z_basis = uniform01(rng) < config_.prob_z_basis;
        const int sent = static_cast<int>(rng() >> 63);
        const bool measure = uniform01(rng) < config_.prob_measure_resend;

        const ComplexVector &forward = sent_[(z_basis ? 0 : 2) + sent];
        int bob = -1;
        if (measure) {
            const double p0 = forward.head(d_).squaredNorm();
            const double p1 = forward.tail(d_).squaredNorm();
            bob = sample(rng, p0, p1);
            // Collapse; the resent transit qubit is exactly |bob>.
            ancilla_ = forward.segment(bob * d_, d_) / std::sqrt(bob == 0 ? p0 : p1);
            psi_.noalias() = reverse_.middleCols(bob * d_, d_) * ancilla_;
        } else {
            psi_.noalias() = reverse_ * forward;
        }

        int alice = 0;
        if (z_basis) {
            alice = sample(rng, psi_.head(d_).squaredNorm(), psi_.tail(d_).squaredNorm());
        } else {
            const double r = std::numbers::sqrt2 / 2.0;
            const double plus = (r * (psi_.head(d_) + psi_.tail(d_))).squaredNorm();
            const double minus = (r * (psi_.head(d_) - psi_.tail(d_))).squaredNorm();
            alice = sample(rng, plus, minus);
        }

        if (z_basis && measure) {
            ++out.tally.z[sent][bob][alice];
            out.keys.alice.push_back(static_cast<std::uint8_t>(alice));
            out.keys.bob.push_back(static_cast<std::uint8_t>(bob));
        } else if (!z_basis && !measure) {
            ++out.tally.x_reflect[sent][alice];
        } else {
            ++out.tally.other;
        }
    }

    Index d_;
    const ComplexOperator &reverse_;
    const ProtocolConfig &config_;
    std::array<ComplexVector, 4> sent_;
    ComplexVector psi_;
    ComplexVector ancilla_;
};

double proportion(std::uint64_t count, std::uint64_t n) {
    return static_cast<double>(count) / static_cast<double>(n);
}

double binomial_se(double p, std::uint64_t n) {
    return std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(n));
}

} // namespace

void validate_config(const ProtocolConfig &config) {
    if (config.iterations == 0) {
        throw InvalidArgument("iterations must be positive");
    }
    for (double p : {config.prob_z_basis, config.prob_measure_resend}) {
        if (!(p > 0.0 && p < 1.0)) {
            throw InvalidArgument(fmt::format("basis/action probability {} not in (0, 1)", p));
        }
    }
    if (config.workers == 0) {
        throw InvalidArgument("workers must be positive");
    }
}

std::uint64_t TallyCounts::cell_sum() const {
    std::uint64_t sum = other;
    for (const auto &plane : z) {
        for (const auto &row : plane) {
            sum += row[0] + row[1];
        }
    }
    for (const auto &row : x_reflect) {
        sum += row[0] + row[1];
    }
    return sum;
}

TallyCounts &TallyCounts::operator+=(const TallyCounts &rhs) {
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            x_reflect[i][j] += rhs.x_reflect[i][j];
            for (int k = 0; k < 2; ++k) {
                z[i][j][k] += rhs.z[i][j][k];
            }
        }
    }
    other += rhs.other;
    total += rhs.total;
    return *this;
}

ProtocolRun run_protocol(const CollectiveAttack &attack, const ProtocolConfig &config) {
    validate_config(config);
    const std::uint64_t n_chunks = (config.iterations + kChunkIterations - 1) / kChunkIterations;
    std::vector<ProtocolRun> chunks(n_chunks);

    std::atomic<std::uint64_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    auto worker = [&]() {
        try {
            ChunkRunner runner(attack, config);
            for (std::uint64_t c = next++; c < n_chunks; c = next++) {
                const std::uint64_t begin = c * kChunkIterations;
                const std::uint64_t count = std::min(kChunkIterations, config.iterations - begin);
                chunks[c] = runner.run(c, count);
            }
        } catch (...) {
            next = n_chunks;
            const std::lock_guard lock(error_mutex);
            if (!first_error) {
                first_error = std::current_exception();
            }
        }
    };

    const auto n_threads =
        static_cast<unsigned>(std::min<std::uint64_t>(config.workers, n_chunks));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }

    ProtocolRun merged;
    std::size_t key_length = 0;
    for (const auto &c : chunks) {
        key_length += c.keys.alice.size();
    }
    merged.keys.alice.reserve(key_length);
    merged.keys.bob.reserve(key_length);
    for (const auto &c : chunks) {
        merged.tally += c.tally;
        merged.keys.alice.insert(merged.keys.alice.end(), c.keys.alice.begin(),
                                 c.keys.alice.end());
        merged.keys.bob.insert(merged.keys.bob.end(), c.keys.bob.begin(), c.keys.bob.end());
    }
    return merged;
}

StatisticsEstimate estimate_statistics(const TallyCounts &tally) {
    StatisticsEstimate est;
    for (int i = 0; i < 2; ++i) {
        std::uint64_t n = 0;
        for (int j = 0; j < 2; ++j) {
            n += tally.z[i][j][0] + tally.z[i][j][1];
        }
        if (n == 0) {
            throw InsufficientData(fmt::format("Z-prep |{}> with measure-resend", i));
        }
        est.z_class_size[i] = n;
        for (int j = 0; j < 2; ++j) {
            for (int k = 0; k < 2; ++k) {
                const double p = proportion(tally.z[i][j][k], n);
                est.stats.p(i, j, k) = p;
                est.standard_error.p(i, j, k) = binomial_se(p, n);
            }
        }
    }
    for (int a = 0; a < 2; ++a) {
        const std::uint64_t n = tally.x_reflect[a][0] + tally.x_reflect[a][1];
        if (n == 0) {
            throw InsufficientData(a == 0 ? "X-prep |+> with reflect" : "X-prep |-> with reflect");
        }
        est.x_class_size[a] = n;
    }
    est.stats.p_pm = proportion(tally.x_reflect[0][1], est.x_class_size[0]);
    est.stats.p_mp = proportion(tally.x_reflect[1][0], est.x_class_size[1]);
    est.standard_error.p_pm = binomial_se(est.stats.p_pm, est.x_class_size[0]);
    est.standard_error.p_mp = binomial_se(est.stats.p_mp, est.x_class_size[1]);
    return est;
}

double rate_standard_error(const ChannelStatistics &stats,
                           const std::array<std::uint64_t, 2> &z_class_size,
                           const std::array<std::uint64_t, 2> &x_class_size) {
    constexpr double h = 1e-7;
    const double base = key_rate_unchecked(stats);
    double variance = 0.0;

    // Multinomial Z classes: derivatives are only needed up to a constant per
    // class (the covariance annihilates constants), so each entry is moved
    // against the largest entry of its class, keeping the class on the simplex.
    for (int i = 0; i < 2; ++i) {
        std::array<double, 4> p{};
        std::array<double, 4> grad{};
        int ref = 0;
        for (int c = 0; c < 4; ++c) {
            p[c] = stats.z[i][c >> 1][c & 1];
            if (p[c] > p[ref]) {
                ref = c;
            }
        }
        for (int c = 0; c < 4; ++c) {
            if (c == ref) {
                continue;
            }
            auto shifted = [&](double delta) {
                ChannelStatistics s = stats;
                s.z[i][c >> 1][c & 1] += delta;
                s.z[i][ref >> 1][ref & 1] -= delta;
                return key_rate_unchecked(s);
            };
            grad[c] = p[c] >= h ? (shifted(h) - shifted(-h)) / (2.0 * h)
                                : (shifted(h) - base) / h;
        }
        double mean = 0.0;
        double second = 0.0;
        for (int c = 0; c < 4; ++c) {
            mean += p[c] * grad[c];
            second += p[c] * grad[c] * grad[c];
        }
        variance += (second - mean * mean) / static_cast<double>(z_class_size[i]);
    }

    for (int a = 0; a < 2; ++a) {
        const double p = a == 0 ? stats.p_pm : stats.p_mp;
        auto shifted = [&](double delta) {
            ChannelStatistics s = stats;
            (a == 0 ? s.p_pm : s.p_mp) += delta;
            return key_rate_unchecked(s);
        };
        const double grad = p >= h ? (shifted(h) - shifted(-h)) / (2.0 * h)
                                   : (shifted(h) - base) / h;
        variance += grad * grad * p * (1.0 - p) / static_cast<double>(x_class_size[a]);
    }
    return std::sqrt(std::max(variance, 0.0));
}

double qber(const RawKeys &keys) {
    if (keys.alice.size() != keys.bob.size()) {
        throw InvalidArgument("raw keys differ in length");
    }
    if (keys.alice.empty()) {
        throw InvalidArgument("qber of an empty key");
    }
    std::size_t errors = 0;
    for (std::size_t n = 0; n < keys.alice.size(); ++n) {
        errors += keys.alice[n] != keys.bob[n] ? 1 : 0;
    }
    return static_cast<double>(errors) / static_cast<double>(keys.alice.size());
}

RawKeys permute_keys(const RawKeys &keys, std::uint64_t seed) {
    if (keys.alice.size() != keys.bob.size()) {
        throw InvalidArgument("raw keys differ in length");
    }
    if (keys.alice.empty()) {
        throw InvalidArgument("cannot permute an empty key");
    }
    std::vector<std::size_t> order(keys.alice.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    RawKeys out;
    out.alice.reserve(order.size());
    out.bob.reserve(order.size());
    for (std::size_t idx : order) {
        out.alice.push_back(keys.alice[idx]);
        out.bob.push_back(keys.bob[idx]);
    }
    return out;
}

} // namespace sqkd
