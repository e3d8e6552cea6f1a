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
 * Collective attacks on the two-way channel.
 *
 * Eve attacks the forward leg with U_E and the return leg with U_F, both
 * acting on transit (x) ancilla (transit most significant, ancilla starting
 * in |0>_E). From the pair we derive her conditional ancilla vectors, the
 * observable statistics, and the exact post-protocol states rho_BE and
 * rho_BEC used to cross-check the analytic bound.
 *
 * No vector derived here is ever normalized; zero vectors are legal.
 */

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <utility>

#include "sqkd/linalg.hpp"
#include "sqkd/random.hpp"
#include "sqkd/statistics.hpp"

namespace sqkd {

inline constexpr std::size_t kMaxAncillaDim = 32;
inline constexpr double kUnitarityTolerance = 1e-10;

class CollectiveAttack {
  public:
    [[nodiscard]] std::size_t ancilla_dim() const noexcept { return ancilla_dim_; }
    [[nodiscard]] std::size_t joint_dim() const noexcept { return 2 * ancilla_dim_; }
    [[nodiscard]] const ComplexOperator &forward() const noexcept { return forward_; }
    [[nodiscard]] const ComplexOperator &reverse() const noexcept { return reverse_; }

    /// Builds an attack without checking unitarity. Only the validation
    /// harness uses this, to prove that a corrupted attack is caught.
    [[nodiscard]] static CollectiveAttack make_unchecked(ComplexOperator forward,
                                                         ComplexOperator reverse,
                                                         std::size_t ancilla_dim);

  private:
    CollectiveAttack(ComplexOperator forward, ComplexOperator reverse,
                     std::size_t ancilla_dim)
        : forward_(std::move(forward)), reverse_(std::move(reverse)),
          ancilla_dim_(ancilla_dim) {}

    friend CollectiveAttack validate_attack(ComplexOperator, ComplexOperator,
                                            std::size_t);

    ComplexOperator forward_;
    ComplexOperator reverse_;
    std::size_t ancilla_dim_;
};

/// Checks dimensions (both 2 d_E square, 1 <= d_E <= 32) and unitarity
/// (entrywise |U^dagger U - I| <= 1e-10).
[[nodiscard]] CollectiveAttack validate_attack(ComplexOperator forward,
                                               ComplexOperator reverse,
                                               std::size_t ancilla_dim);

/**
 * Eve's conditional ancilla vectors.
 *
 * U_E|0,0> = |0,e0> + |1,e1>,  U_E|1,0> = |0,e2> + |1,e3>.
 * U_F|i,e_j> = |0,e_{i,j}^0> + |1,e_{i,j}^1>, stored as after_return[i][j][k].
 * f and g describe V = U_F U_E on Z and X inputs respectively:
 * V|0,0> = |0,f0> + |1,f1>, V|1,0> = |0,f2> + |1,f3>,
 * V|+,0> = |+,g0> + |-,g1>, V|-,0> = |+,g2> + |-,g3>.
 */
struct AttackVectors {
    std::array<ComplexVector, 4> e;
    std::array<std::array<std::array<ComplexVector, 2>, 4>, 2> after_return;
    std::array<ComplexVector, 4> f;
    std::array<ComplexVector, 4> g;

    [[nodiscard]] const ComplexVector &e_ret(int i, int j, int k) const {
        return after_return[i][j][k];
    }
};

[[nodiscard]] AttackVectors extract_vectors(const CollectiveAttack &attack);

/// Largest deviation among the unitarity-forced identities on e, e_{i,j}^k
/// and f, and between the g vectors assembled from f and the X-basis
/// components of V|+,0>, V|-,0> computed directly from V = U_F U_E.
[[nodiscard]] double vector_identity_residual(const CollectiveAttack &attack,
                                              const AttackVectors &v);

[[nodiscard]] ChannelStatistics statistics(const CollectiveAttack &attack);
[[nodiscard]] ChannelStatistics statistics(const AttackVectors &v);

/// <e_{0,0}^0 | e_{1,3}^1>
[[nodiscard]] Complex overlap_e000_e131(const CollectiveAttack &attack);

/// Bob's key register (x) Eve's ancilla after a raw-key iteration,
/// with Alice's system traced out. Dimension 2 d_E.
[[nodiscard]] ComplexOperator rho_BE(const CollectiveAttack &attack);

/// Register ordering of the agreement/flip-count register C.
enum class ConditionLabel : std::size_t {
    Correct0 = 0, ///< keys agree, no flips
    Correct1 = 1, ///< keys agree, one flip in each direction
    Wrong1 = 2,   ///< keys differ, one flip
    Wrong2 = 3    ///< keys differ, two flips
};

/// rho_BE extended by the C register: B (x) C (x) E, dimension 8 d_E.
[[nodiscard]] ComplexOperator rho_BEC(const CollectiveAttack &attack);

/// S(B|E) - H(B|A) evaluated exactly for this attack (reverse reconciliation).
[[nodiscard]] double exact_collective_rate(const CollectiveAttack &attack);

// Attack constructors.

/// U_E = U_F = I on a d_E-dimensional ancilla.
[[nodiscard]] CollectiveAttack identity_attack(std::size_t ancilla_dim = 1);

/// U_E copies the transit bit into a qubit ancilla (CNOT), U_F = I.
[[nodiscard]] CollectiveAttack z_measure_attack();

/// Forward and reverse legs each flip the transit bit with probability
/// Qf (resp. Qr), recording the flip in a dedicated ancilla qubit.
/// d_E = 4 (forward record is the more significant ancilla qubit).
[[nodiscard]] CollectiveAttack symmetric_realizing_attack(double forward_flip,
                                                          double reverse_flip);

/// Unitary from the QR factorization of a complex Gaussian matrix, with the
/// phases of R's diagonal absorbed so the result is Haar distributed.
[[nodiscard]] ComplexOperator random_unitary(std::size_t dim, Rng &rng);

/// V diag(exp(i strength theta_k)) V^dagger with Haar V and theta_k standard
/// normal: a random unitary within roughly `strength` of the identity.
[[nodiscard]] ComplexOperator random_near_identity_unitary(std::size_t dim, double strength,
                                                           Rng &rng);

/// Random attack whose legs are near-identity unitaries, so the induced noise
/// is small and the rate bound is positive for small strengths.
[[nodiscard]] CollectiveAttack random_weak_attack(std::size_t ancilla_dim, double strength,
                                                  Rng &rng);

/// Independent random U_E, U_F on a d_E ancilla.
[[nodiscard]] CollectiveAttack random_attack(std::size_t ancilla_dim, Rng &rng);
[[nodiscard]] CollectiveAttack random_attack(std::size_t ancilla_dim,
                                             std::uint64_t seed);

} // namespace sqkd
