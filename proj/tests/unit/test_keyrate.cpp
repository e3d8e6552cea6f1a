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

#include <array>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "oracle/oracles.hpp"
#include "sqkd/attack.hpp"
#include "sqkd/errors.hpp"
#include "sqkd/keyrate.hpp"
#include "sqkd/linalg.hpp"

using namespace sqkd;

namespace {

ChannelStatistics noiseless() { return symmetric_stats({0.0, 0.0, 0.0}); }

ChannelStatistics asymmetric() {
    ChannelStatistics s;
    s.p(0, 0, 0) = 0.7;
    s.p(0, 0, 1) = 0.1;
    s.p(0, 1, 0) = 0.15;
    s.p(0, 1, 1) = 0.05;
    s.p(1, 0, 0) = 0.2;
    s.p(1, 0, 1) = 0.1;
    s.p(1, 1, 0) = 0.3;
    s.p(1, 1, 1) = 0.4;
    s.p_pm = 0.1;
    s.p_mp = 0.12;
    return s;
}

std::vector<CollectiveAttack> attack_suite(std::uint64_t seed, int count) {
    constexpr std::size_t dims[] = {1, 2, 4};
    std::vector<CollectiveAttack> out;
    for (int n = 0; n < count; ++n) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(n)));
        const std::size_t d = dims[n % 3];
        if (n % 2 == 0) {
            out.push_back(random_attack(d, rng));
        } else {
            out.push_back(random_weak_attack(d, 0.02 + 0.1 * uniform01(rng), rng));
        }
    }
    return out;
}

} // namespace

TEST(CrossOverlapBound, Values) {
    EXPECT_DOUBLE_EQ(cross_overlap_lower_bound(noiseless()), 1.0);
    ChannelStatistics s = noiseless();
    s.p_pm = s.p_mp = 0.5;
    EXPECT_DOUBLE_EQ(cross_overlap_lower_bound(s), 0.0);
    EXPECT_NEAR(cross_overlap_lower_bound(symmetric_stats({0.05, 0.05, 0.05})), 0.6125, 1e-12);
    EXPECT_NEAR(cross_overlap_lower_bound(asymmetric()), -0.3890995166572919, 1e-12);
}

TEST(CapOverlapBound, Values) {
    EXPECT_EQ(cap_overlap_bound(1.0), 1.0);
    EXPECT_EQ(cap_overlap_bound(-0.3), 0.0);
    EXPECT_EQ(cap_overlap_bound(0.5), 0.25);
    EXPECT_EQ(cap_overlap_bound(0.0), 0.0);
}

TEST(LambdaTilde, Values) {
    const auto one = lambda_tilde(1.0, 1.0, 1.0);
    EXPECT_DOUBLE_EQ(one.value, 1.0);
    EXPECT_FALSE(one.clamped);
    for (double p : {0.1, 0.5, 0.9}) {
        EXPECT_DOUBLE_EQ(lambda_tilde(p, p, 0.0).value, 0.5);
    }
    EXPECT_NEAR(lambda_tilde(0.7, 0.4, 0.0).value, 0.6363636363636364, 1e-15);
}

TEST(LambdaTilde, ClampsUnrealizableInput) {
    const auto r = lambda_tilde(0.5, 0.5, 1.0);
    EXPECT_EQ(r.value, 1.0);
    EXPECT_TRUE(r.clamped);
}

TEST(LambdaTilde, AbortsWithoutCorrectCounts) {
    EXPECT_THROW((void)lambda_tilde(0.0, 0.5, 0.0), AbortError);
    ChannelStatistics s = noiseless();
    s.p(0, 0, 0) = 0.0;
    s.p(0, 1, 1) = 1.0;
    EXPECT_THROW((void)key_rate_bound(s), AbortError);
}

TEST(LambdaTilde, MatchesSigmaEigenvalues) {
    const auto suite = attack_suite(31, 200);
    for (std::size_t n = 0; n < suite.size(); ++n) {
        const auto v = extract_vectors(suite[n]);
        const ComplexVector &a = v.e_ret(0, 0, 0);
        const ComplexVector &b = v.e_ret(1, 3, 1);
        const double p000 = a.squaredNorm();
        const double p111 = b.squaredNorm();
        const double overlap_sq = std::norm(a.dot(b));
        const ComplexOperator sigma = (outer(a) + outer(b)) / (p000 + p111);
        const auto eig = oracle::jacobi_eigenvalues(sigma);
        const auto lam = lambda_tilde(p000, p111, overlap_sq);
        EXPECT_FALSE(lam.clamped);
        EXPECT_NEAR(eig[0], lam.value, 1e-9) << "attack " << n;
        const double second = eig.size() > 1 ? eig[1] : 0.0;
        EXPECT_NEAR(second, 1.0 - lam.value, 1e-9) << "attack " << n;
        EXPECT_NEAR(binary_entropy(lam.value), oracle::entropy_from_eigenvalues(eig), 1e-9);
    }
}

TEST(SBec, Values) {
    EXPECT_DOUBLE_EQ(s_bec(noiseless()), 1.0);
    ChannelStatistics uniform;
    for (auto &block : uniform.z) {
        for (auto &row : block) {
            row = {0.25, 0.25};
        }
    }
    EXPECT_DOUBLE_EQ(s_bec(uniform), 3.0);
    EXPECT_NEAR(s_bec(asymmetric()), 2.582737309504941, 1e-12);
}

TEST(SEcUpper, Values) {
    EXPECT_DOUBLE_EQ(s_ec_upper(noiseless(), 1.0), 0.0);
    EXPECT_DOUBLE_EQ(s_ec_upper(noiseless(), 0.5), 1.0);
    EXPECT_NEAR(s_ec_upper(asymmetric(), 0.6363636363636364), 2.658871848445360, 1e-12);
}

TEST(SEcUpper, MonotoneInCappedBound) {
    const auto s = symmetric_stats({0.04, 0.06, 0.05});
    double previous = -1.0;
    for (double cal_b = 1.0; cal_b >= 0.0; cal_b -= 0.01) {
        const double lam = lambda_tilde(s.p(0, 0, 0), s.p(1, 1, 1), std::max(cal_b, 0.0)).value;
        const double value = s_ec_upper(s, lam);
        EXPECT_GE(value, previous - 1e-15);
        previous = value;
    }
}

TEST(SEcUpper, BoundsExactConditionalEntropy) {
    const auto suite = attack_suite(32, 150);
    for (std::size_t n = 0; n < suite.size(); ++n) {
        const auto s = statistics(suite[n]);
        const auto lam = lambda_tilde(s.p(0, 0, 0), s.p(1, 1, 1),
                                      cap_overlap_bound(cross_overlap_lower_bound(s)));
        const std::size_t d = suite[n].ancilla_dim();
        const double exact =
            von_neumann_entropy(partial_trace(rho_BEC(suite[n]), 2, 4 * d, Subsystem::Second));
        EXPECT_GE(s_ec_upper(s, lam.value), exact - 1e-9) << "attack " << n;
    }
}

TEST(AliceMarginal, Values) {
    EXPECT_DOUBLE_EQ(p_alice_zero(noiseless()), 0.5);
    EXPECT_DOUBLE_EQ(p_alice_zero(symmetric_stats({0.07, 0.02, 0.3})), 0.5);
    EXPECT_NEAR(p_alice_zero(asymmetric()), 0.675, 1e-15);
}

TEST(ConditionalEntropy, Values) {
    EXPECT_NEAR(h_b_given_a(noiseless()), 0.0, 1e-15);
    ChannelStatistics uniform;
    for (auto &block : uniform.z) {
        for (auto &row : block) {
            row = {0.25, 0.25};
        }
    }
    EXPECT_NEAR(h_b_given_a(uniform), 1.0, 1e-15);
    EXPECT_NEAR(h_b_given_a(asymmetric()), 0.9092594710581151, 1e-12);
}

TEST(ConditionalEntropy, SymmetricIsBinaryEntropyOfQber) {
    for (double q : {0.01, 0.03, 0.1, 0.25}) {
        const auto s = symmetric_stats({q, q, q});
        // Brute-force joint distribution: weight 1/2 per sent bit, sum over Bob's
        // path, key bits b = Bob's measurement j, a = Alice's outcome k.
        std::array<std::array<double, 2>, 2> joint{};
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                for (int k = 0; k < 2; ++k) {
                    joint[j][k] += 0.5 * s.p(i, j, k);
                }
            }
        }
        const double error = joint[0][1] + joint[1][0];
        EXPECT_NEAR(error, q, 1e-15);
        EXPECT_NEAR(h_b_given_a(s), binary_entropy(error), 1e-12);
    }
    EXPECT_NEAR(h_b_given_a(symmetric_stats({0.03, 0.03, 0.03})), 0.19439185783157616, 1e-12);
}

TEST(KeyRateBound, Noiseless) {
    const auto r = key_rate_bound(noiseless());
    EXPECT_NEAR(r.rate, 1.0, 1e-12);
    EXPECT_DOUBLE_EQ(r.overlap_bound, 1.0);
    EXPECT_DOUBLE_EQ(r.capped_bound, 1.0);
    EXPECT_DOUBLE_EQ(r.lambda_tilde, 1.0);
    EXPECT_NEAR(r.joint[0] + r.joint[1] + r.joint[2] + r.joint[3], 1.0, 1e-15);
}

TEST(KeyRateBound, ThreePercentSymmetric) {
    const auto r = key_rate_bound(symmetric_stats({0.03, 0.03, 0.03}));
    EXPECT_NEAR(r.overlap_bound, 0.7645, 1e-12);
    EXPECT_NEAR(r.capped_bound, 0.7645 * 0.7645, 1e-12);
    EXPECT_NEAR(r.lambda_tilde, 0.9062599638643852, 1e-12);
    EXPECT_NEAR(r.s_bec, 1.3887837156631523, 1e-12);
    EXPECT_NEAR(r.s_ec_upper, 0.870189627761147, 1e-12);
    EXPECT_NEAR(r.h_b_given_a, 0.19439185783157616, 1e-12);
    EXPECT_NEAR(r.rate, 0.32420223007042915, 1e-12);
}

TEST(KeyRateBound, AboveThresholdIsNegative) {
    EXPECT_NEAR(key_rate_bound(symmetric_stats({0.06, 0.06, 0.06})).rate, -0.07382173921216515,
                1e-12);
}

TEST(KeyRateBound, AsymmetricHandBuilt) {
    const auto r = key_rate_bound(asymmetric());
    EXPECT_EQ(r.capped_bound, 0.0);
    EXPECT_NEAR(r.rate, -0.9853940099985346, 1e-12);
}

TEST(KeyRateBound, MatchesIndependentReimplementation) {
    Rng rng(derive_seed(33, 0));
    for (int trial = 0; trial < 500; ++trial) {
        ChannelStatistics s;
        for (int i = 0; i < 2; ++i) {
            std::array<double, 4> w{};
            double total = 0.0;
            for (auto &x : w) {
                // Skew toward the diagonal so the bound is often positive.
                x = uniform01(rng);
                total += x;
            }
            w[3 * i] += 4.0 * total;
            total *= 5.0;
            s.p(i, 0, 0) = w[0] / total;
            s.p(i, 0, 1) = w[1] / total;
            s.p(i, 1, 0) = w[2] / total;
            s.p(i, 1, 1) = w[3] / total;
        }
        s.p_pm = 0.2 * uniform01(rng);
        s.p_mp = 0.2 * uniform01(rng);
        const auto r = key_rate_bound(s, Normalization::Renormalize);
        const auto want = oracle::reference_rate(oracle::flatten(validate_statistics(
            s, Normalization::Renormalize)));
        EXPECT_NEAR(r.rate, static_cast<double>(want), 1e-12) << "trial " << trial;
    }
    EXPECT_NEAR(key_rate_bound(symmetric_stats({0.03, 0.03, 0.03})).rate,
                static_cast<double>(oracle::reference_rate(
                    oracle::flatten(symmetric_stats({0.03, 0.03, 0.03})))),
                1e-12);
}

TEST(KeyRateBound, ValidationErrors) {
    ChannelStatistics s = noiseless();
    s.p(0, 0, 0) = 0.9;
    EXPECT_THROW((void)key_rate_bound(s), InvalidArgument);
    EXPECT_NEAR(key_rate_bound(s, Normalization::Renormalize).rate, 1.0, 1e-12);
    s = noiseless();
    s.p_pm = 1.5;
    EXPECT_THROW((void)key_rate_bound(s), InvalidArgument);
}

TEST(KeyRateBound, IsSoundAgainstExactRate) {
    const auto suite = attack_suite(34, 300);
    for (std::size_t n = 0; n < suite.size(); ++n) {
        const double bound = key_rate_bound(statistics(suite[n]), Normalization::Renormalize).rate;
        EXPECT_LE(bound, exact_collective_rate(suite[n]) + 1e-9) << "attack " << n;
    }
}

TEST(SymmetricStats, Values) {
    EXPECT_EQ(symmetric_stats({0.0, 0.0, 0.0}), noiseless());
    const auto s = symmetric_stats({0.1, 0.2, 0.1});
    EXPECT_NEAR(s.p(0, 0, 0), 0.72, 1e-15);
    EXPECT_NEAR(s.p(0, 0, 1), 0.18, 1e-15);
    EXPECT_NEAR(s.p(0, 1, 0), 0.02, 1e-15);
    EXPECT_NEAR(s.p(0, 1, 1), 0.08, 1e-15);
    EXPECT_EQ(s.p(1, 1, 1), s.p(0, 0, 0));
    EXPECT_EQ(s.p_pm, 0.1);
    EXPECT_EQ(s.p_mp, 0.1);
    Rng rng(derive_seed(35, 0));
    for (int trial = 0; trial < 100; ++trial) {
        const auto r = symmetric_stats({0.5 * uniform01(rng), 0.5 * uniform01(rng), 0.0});
        EXPECT_NEAR(r.z_block_sum(0), 1.0, 1e-15);
        EXPECT_NEAR(r.z_block_sum(1), 1.0, 1e-15);
    }
    EXPECT_THROW((void)symmetric_stats({0.6, 0.0, 0.0}), InvalidArgument);
    EXPECT_THROW((void)symmetric_stats({0.0, 0.0, -0.1}), InvalidArgument);
}

TEST(Scenario, TagsRoundTrip) {
    for (auto s : {Scenario::Equal, Scenario::ForwardHalf, Scenario::ReverseHalf}) {
        EXPECT_EQ(parse_scenario(scenario_tag(s)), s);
    }
    EXPECT_THROW((void)parse_scenario("both"), InvalidArgument);
    const auto p = scenario_params(Scenario::ForwardHalf, 2.0, 0.04);
    EXPECT_DOUBLE_EQ(p.forward_flip, 0.02);
    EXPECT_DOUBLE_EQ(p.reverse_flip, 0.04);
    EXPECT_DOUBLE_EQ(p.x_error, 0.08);
}

struct TableCell {
    Scenario scenario;
    double ratio;
    double percent;
};

class NoiseThreshold : public ::testing::TestWithParam<TableCell> {};

TEST_P(NoiseThreshold, ReproducesPublishedValue) {
    const auto cell = GetParam();
    EXPECT_NEAR(noise_threshold(cell.scenario, cell.ratio), cell.percent / 100.0, 0.0005);
}

INSTANTIATE_TEST_SUITE_P(
    Table, NoiseThreshold,
    ::testing::Values(TableCell{Scenario::Equal, 0.5, 5.92}, TableCell{Scenario::ForwardHalf, 0.5, 6.98},
                      TableCell{Scenario::ReverseHalf, 0.5, 8.96}, TableCell{Scenario::Equal, 1.0, 5.34},
                      TableCell{Scenario::ForwardHalf, 1.0, 6.16},
                      TableCell{Scenario::ReverseHalf, 1.0, 7.79}, TableCell{Scenario::Equal, 2.0, 4.51},
                      TableCell{Scenario::ForwardHalf, 2.0, 5.05},
                      TableCell{Scenario::ReverseHalf, 2.0, 6.25}));

TEST(NoiseThresholdSearch, IsAtTheSignChange) {
    const double q = noise_threshold(Scenario::Equal, 1.0);
    EXPECT_GT(scenario_rate(Scenario::Equal, 1.0, q), 0.0);
    EXPECT_LE(scenario_rate(Scenario::Equal, 1.0, q + 1e-6), 0.0);
    EXPECT_NEAR(q, 0.053494, 2e-6);
}

TEST(NoiseThresholdSearch, LargeRatioStaysInRange) {
    const double q = noise_threshold(Scenario::Equal, 5.0);
    EXPECT_GT(q, 0.0);
    EXPECT_LT(q, 0.1);
}

TEST(NoiseThresholdSearch, RejectsBadRatio) {
    EXPECT_THROW((void)noise_threshold(Scenario::Equal, 0.0), InvalidArgument);
    EXPECT_THROW((void)noise_threshold(Scenario::Equal, -1.0), InvalidArgument);
}

TEST(Sweep, Shape) {
    const auto pts = sweep(Scenario::Equal, 1.0, 0.1, 11);
    ASSERT_EQ(pts.size(), 11u);
    EXPECT_EQ(pts.front().q, 0.0);
    EXPECT_NEAR(pts.front().rate, 1.0, 1e-12);
    EXPECT_DOUBLE_EQ(pts.back().q, 0.1);
    EXPECT_THROW((void)sweep(Scenario::Equal, 1.0, 0.1, 1), InvalidArgument);
    EXPECT_THROW((void)sweep(Scenario::Equal, 1.0, 0.0, 5), InvalidArgument);
}

TEST(Sweep, NonIncreasingUpToThreshold) {
    for (auto scenario : {Scenario::Equal, Scenario::ForwardHalf, Scenario::ReverseHalf}) {
        for (double ratio : {0.5, 1.0, 2.0}) {
            const double threshold = noise_threshold(scenario, ratio);
            const auto pts = sweep(scenario, ratio, threshold, 400);
            for (std::size_t n = 1; n < pts.size(); ++n) {
                EXPECT_LE(pts[n].rate, pts[n - 1].rate + 1e-12);
            }
        }
    }
}

TEST(Sweep, CurvesOrderedByXRatio) {
    const auto half = sweep(Scenario::Equal, 0.5, 0.12, 121);
    const auto one = sweep(Scenario::Equal, 1.0, 0.12, 121);
    const auto two = sweep(Scenario::Equal, 2.0, 0.12, 121);
    for (std::size_t n = 1; n < half.size(); ++n) {
        EXPECT_GE(half[n].rate, one[n].rate);
        EXPECT_GE(one[n].rate, two[n].rate);
    }
}
