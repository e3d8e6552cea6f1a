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

#include "sqkd/attack.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <fmt/format.h>

#include "sqkd/errors.hpp"
#include "sqkd/keyrate.hpp"

namespace sqkd {

namespace {

using Eigen::Index;

ComplexVector segment(const ComplexVector &v, Index offset, Index length) {
    return v.segment(offset, length);
}

double sq_norm(const ComplexVector &v) { return v.squaredNorm(); }

// Maps basis index (t, a) -> (t xor bit(a, control_mask), a) on a
// 2 x ancilla_dim space; a CNOT from an ancilla qubit onto the transit bit.
ComplexOperator ancilla_controlled_flip(Index ancilla_dim, Index control_mask) {
    ComplexOperator p = ComplexOperator::Zero(2 * ancilla_dim, 2 * ancilla_dim);
    for (Index t = 0; t < 2; ++t) {
        for (Index a = 0; a < ancilla_dim; ++a) {
            const Index target_t = (a & control_mask) != 0 ? 1 - t : t;
            p(target_t * ancilla_dim + a, t * ancilla_dim + a) = 1.0;
        }
    }
    return p;
}

ComplexOperator ry(double flip_probability) {
    const double c = std::sqrt(1.0 - flip_probability);
    const double s = std::sqrt(flip_probability);
    ComplexOperator r(2, 2);
    r << c, -s, s, c;
    return r;
}

} // namespace

CollectiveAttack CollectiveAttack::make_unchecked(ComplexOperator forward,
                                                  ComplexOperator reverse,
                                                  std::size_t ancilla_dim) {
    return CollectiveAttack(std::move(forward), std::move(reverse), ancilla_dim);
}

CollectiveAttack validate_attack(ComplexOperator forward, ComplexOperator reverse,
                                 std::size_t ancilla_dim) {
    if (ancilla_dim == 0 || ancilla_dim > kMaxAncillaDim) {
        throw InvalidArgument(
            fmt::format("ancilla dimension {} outside [1, {}]", ancilla_dim, kMaxAncillaDim));
    }
    const auto n = static_cast<Index>(2 * ancilla_dim);
    for (const auto *u : {&forward, &reverse}) {
        if (u->rows() != n || u->cols() != n) {
            throw InvalidArgument(fmt::format(
                "attack operator is {}x{}, expected {}x{} for ancilla dimension {}", u->rows(),
                u->cols(), n, n, ancilla_dim));
        }
    }
    const double fwd = unitarity_residual(forward);
    if (fwd > kUnitarityTolerance) {
        throw InvalidArgument(fmt::format("U_E is not unitary (residual {:.3e})", fwd));
    }
    const double rev = unitarity_residual(reverse);
    if (rev > kUnitarityTolerance) {
        throw InvalidArgument(fmt::format("U_F is not unitary (residual {:.3e})", rev));
    }
    return CollectiveAttack(std::move(forward), std::move(reverse), ancilla_dim);
}

AttackVectors extract_vectors(const CollectiveAttack &attack) {
    const auto d = static_cast<Index>(attack.ancilla_dim());
    const ComplexOperator &ue = attack.forward();
    const ComplexOperator &uf = attack.reverse();

    AttackVectors v;
    const ComplexVector from0 = ue.col(0);
    const ComplexVector from1 = ue.col(d);
    v.e[0] = segment(from0, 0, d);
    v.e[1] = segment(from0, d, d);
    v.e[2] = segment(from1, 0, d);
    v.e[3] = segment(from1, d, d);

    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 4; ++j) {
            const ComplexVector returned = uf * tensor(basis_vector(2, i), v.e[j]);
            v.after_return[i][j][0] = segment(returned, 0, d);
            v.after_return[i][j][1] = segment(returned, d, d);
        }
    }

    v.f[0] = v.e_ret(0, 0, 0) + v.e_ret(1, 1, 0);
    v.f[1] = v.e_ret(0, 0, 1) + v.e_ret(1, 1, 1);
    v.f[2] = v.e_ret(0, 2, 0) + v.e_ret(1, 3, 0);
    v.f[3] = v.e_ret(0, 2, 1) + v.e_ret(1, 3, 1);

    const auto &f = v.f;
    v.g[0] = 0.5 * (f[0] + f[1] + f[2] + f[3]);
    v.g[1] = 0.5 * (f[0] - f[1] + f[2] - f[3]);
    v.g[2] = 0.5 * (f[0] + f[1] - f[2] - f[3]);
    v.g[3] = 0.5 * (f[0] - f[1] - f[2] + f[3]);
    return v;
}

double vector_identity_residual(const CollectiveAttack &attack, const AttackVectors &v) {
    double worst = 0.0;
    auto track = [&worst](Complex deviation) { worst = std::max(worst, std::abs(deviation)); };

    // Unitarity of U_E on the |0>_E column.
    track(sq_norm(v.e[0]) + sq_norm(v.e[1]) - 1.0);
    track(sq_norm(v.e[2]) + sq_norm(v.e[3]) - 1.0);
    track(v.e[0].dot(v.e[2]) + v.e[1].dot(v.e[3]));

    // U_F preserves the norm of |i, e_j>.
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 4; ++j) {
            track(sq_norm(v.e[j]) - sq_norm(v.e_ret(i, j, 0)) - sq_norm(v.e_ret(i, j, 1)));
        }
    }

    // Unitarity of V = U_F U_E.
    track(sq_norm(v.f[0]) + sq_norm(v.f[1]) - 1.0);
    track(sq_norm(v.f[2]) + sq_norm(v.f[3]) - 1.0);
    track(v.f[0].dot(v.f[2]) + v.f[1].dot(v.f[3]));

    // g from f against the X-basis components of V|+,0>, V|-,0>.
    const auto d = static_cast<Index>(attack.ancilla_dim());
    const ComplexOperator vop = attack.reverse() * attack.forward();
    const double r = std::numbers::sqrt2 / 2.0;
    for (int sign = 0; sign < 2; ++sign) {
        const double s = sign == 0 ? 1.0 : -1.0;
        const ComplexVector out = r * (vop.col(0) + s * vop.col(d));
        const ComplexVector plus = r * (out.segment(0, d) + out.segment(d, d));
        const ComplexVector minus = r * (out.segment(0, d) - out.segment(d, d));
        worst = std::max(worst, (plus - v.g[2 * sign]).cwiseAbs().maxCoeff());
        worst = std::max(worst, (minus - v.g[2 * sign + 1]).cwiseAbs().maxCoeff());
    }
    return worst;
}

ChannelStatistics statistics(const AttackVectors &v) {
    ChannelStatistics s;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int k = 0; k < 2; ++k) {
                s.p(i, j, k) = sq_norm(v.e_ret(j, 2 * i + j, k));
            }
        }
    }
    s.p_pm = sq_norm(v.g[1]);
    s.p_mp = sq_norm(v.g[2]);
    return s;
}

ChannelStatistics statistics(const CollectiveAttack &attack) {
    return statistics(extract_vectors(attack));
}

Complex overlap_e000_e131(const CollectiveAttack &attack) {
    const AttackVectors v = extract_vectors(attack);
    return v.e_ret(0, 0, 0).dot(v.e_ret(1, 3, 1));
}

ComplexOperator rho_BE(const CollectiveAttack &attack) {
    const AttackVectors v = extract_vectors(attack);
    const auto d = static_cast<Index>(attack.ancilla_dim());
    ComplexOperator rho = ComplexOperator::Zero(2 * d, 2 * d);
    for (int b = 0; b < 2; ++b) {
        // Alice sent 0 -> e_b, Alice sent 1 -> e_{2+b}; Alice's outcome k traced out.
        for (int je : {b, 2 + b}) {
            for (int k = 0; k < 2; ++k) {
                rho.block(b * d, b * d, d, d) += 0.5 * outer(v.e_ret(b, je, k));
            }
        }
    }
    return rho;
}

ComplexOperator rho_BEC(const CollectiveAttack &attack) {
    const AttackVectors v = extract_vectors(attack);
    const auto d = static_cast<Index>(attack.ancilla_dim());
    ComplexOperator rho = ComplexOperator::Zero(8 * d, 8 * d);
    for (int b = 0; b < 2; ++b) {
        for (int sent = 0; sent < 2; ++sent) {
            const int je = 2 * sent + b;
            for (int k = 0; k < 2; ++k) {
                const int forward_flip = sent != b ? 1 : 0;
                const ConditionLabel label =
                    b == k ? (forward_flip == 0 ? ConditionLabel::Correct0
                                                : ConditionLabel::Correct1)
                           : (forward_flip == 0 ? ConditionLabel::Wrong1
                                                : ConditionLabel::Wrong2);
                const Index offset = (b * 4 + static_cast<Index>(label)) * d;
                rho.block(offset, offset, d, d) += 0.5 * outer(v.e_ret(b, je, k));
            }
        }
    }
    return rho;
}

double exact_collective_rate(const CollectiveAttack &attack) {
    const ComplexOperator be = rho_BE(attack);
    const std::size_t d = attack.ancilla_dim();
    const double s_be = von_neumann_entropy(be);
    const double s_e = von_neumann_entropy(partial_trace(be, 2, d, Subsystem::Second));
    return s_be - s_e - h_b_given_a(statistics(attack));
}

CollectiveAttack identity_attack(std::size_t ancilla_dim) {
    const auto n = static_cast<Index>(2 * ancilla_dim);
    return validate_attack(ComplexOperator::Identity(n, n), ComplexOperator::Identity(n, n),
                           ancilla_dim);
}

CollectiveAttack z_measure_attack() {
    // CNOT transit -> ancilla: |t, a> -> |t, a xor t>.
    ComplexOperator cnot = ComplexOperator::Zero(4, 4);
    cnot(0, 0) = 1.0;
    cnot(1, 1) = 1.0;
    cnot(3, 2) = 1.0;
    cnot(2, 3) = 1.0;
    return validate_attack(cnot, ComplexOperator::Identity(4, 4), 2);
}

CollectiveAttack symmetric_realizing_attack(double forward_flip, double reverse_flip) {
    for (double q : {forward_flip, reverse_flip}) {
        if (!(q >= 0.0 && q <= 0.5)) {
            throw InvalidArgument(fmt::format("flip probability {} outside [0, 1/2]", q));
        }
    }
    const ComplexOperator id2 = ComplexOperator::Identity(2, 2);
    // Ancilla qubits: forward record (more significant), reverse record.
    const ComplexOperator rot_forward = tensor(id2, tensor(ry(forward_flip), id2));
    const ComplexOperator rot_reverse = tensor(id2, tensor(id2, ry(reverse_flip)));
    ComplexOperator ue = ancilla_controlled_flip(4, 0b10) * rot_forward;
    ComplexOperator uf = ancilla_controlled_flip(4, 0b01) * rot_reverse;
    return validate_attack(std::move(ue), std::move(uf), 4);
}

ComplexOperator random_unitary(std::size_t dim, Rng &rng) {
    const auto n = static_cast<Index>(dim);
    ComplexOperator g(n, n);
    // Box-Muller on uniform01 keeps the stream identical across standard libraries.
    for (Index c = 0; c < n; ++c) {
        for (Index r = 0; r < n; ++r) {
            const double u1 = 1.0 - uniform01(rng);
            const double u2 = uniform01(rng);
            const double radius = std::sqrt(-2.0 * std::log(u1));
            const double angle = 2.0 * std::numbers::pi * u2;
            g(r, c) = Complex(radius * std::cos(angle), radius * std::sin(angle));
        }
    }
    Eigen::HouseholderQR<ComplexOperator> qr(g);
    ComplexOperator q = qr.householderQ() * ComplexOperator::Identity(n, n);
    const ComplexOperator &packed = qr.matrixQR();
    for (Index j = 0; j < n; ++j) {
        const Complex diag = packed(j, j);
        const double mag = std::abs(diag);
        if (mag > 0.0) {
            q.col(j) *= diag / mag;
        }
    }
    return q;
}

ComplexOperator random_near_identity_unitary(std::size_t dim, double strength, Rng &rng) {
    const ComplexOperator basis = random_unitary(dim, rng);
    Eigen::VectorXcd phases(static_cast<Index>(dim));
    for (Index k = 0; k < phases.size(); ++k) {
        const double u1 = 1.0 - uniform01(rng);
        const double u2 = uniform01(rng);
        const double theta = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
        phases(k) = std::polar(1.0, strength * theta);
    }
    return basis * phases.asDiagonal() * basis.adjoint();
}

CollectiveAttack random_weak_attack(std::size_t ancilla_dim, double strength, Rng &rng) {
    ComplexOperator ue = random_near_identity_unitary(2 * ancilla_dim, strength, rng);
    ComplexOperator uf = random_near_identity_unitary(2 * ancilla_dim, strength, rng);
    return validate_attack(std::move(ue), std::move(uf), ancilla_dim);
}

CollectiveAttack random_attack(std::size_t ancilla_dim, Rng &rng) {
    ComplexOperator ue = random_unitary(2 * ancilla_dim, rng);
    ComplexOperator uf = random_unitary(2 * ancilla_dim, rng);
    return validate_attack(std::move(ue), std::move(uf), ancilla_dim);
}

CollectiveAttack random_attack(std::size_t ancilla_dim, std::uint64_t seed) {
    Rng rng(seed);
    return random_attack(ancilla_dim, rng);
}

} // namespace sqkd
