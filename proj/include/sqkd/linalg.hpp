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
 * Dense complex linear algebra and entropy kernel.
 *
 * Subsystem ordering: in a tensor product A (x) B the first factor is the
 * most significant index, so basis state |a>|b> sits at row a * dim(B) + b.
 * Every module in this library follows that convention.
 *
 * All logarithms are base two; entropies are in bits.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace sqkd {

using Complex = std::complex<double>;
using ComplexOperator = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Eigenvalues in [-kEigenClampTolerance, 0) are treated as zero.
inline constexpr double kEigenClampTolerance = 1e-10;

/// Tolerance on input probability vectors (negative entries, sum overflow).
inline constexpr double kProbabilityTolerance = 1e-9;

/// H(p_1, ..., p_n) = -sum p_i log2 p_i with 0 log 0 = 0.
///
/// Entries down to -1e-12 are clamped to zero. The entries may sum to less
/// than one (sub-normalized weights are allowed, e.g. a partial
/// distribution), but not to more than 1 + 1e-9.
[[nodiscard]] double shannon_entropy(std::span<const double> probabilities);

/// h(p) = H(p, 1 - p). Accepts p in [-1e-12, 1 + 1e-12].
[[nodiscard]] double binary_entropy(double p);

/// Largest entrywise deviation |M - M^dagger|.
[[nodiscard]] double hermiticity_residual(const ComplexOperator &m);

/// Largest entrywise deviation |U^dagger U - I|.
[[nodiscard]] double unitarity_residual(const ComplexOperator &u);

/// Real eigenvalues of a Hermitian operator in descending order.
/// Throws InvalidArgument if the input is not square or not Hermitian.
[[nodiscard]] std::vector<double> hermitian_eigenvalues(const ComplexOperator &m);

/// S(rho) in bits. rho must be Hermitian, PSD up to kEigenClampTolerance,
/// and of unit trace within 1e-9.
[[nodiscard]] double von_neumann_entropy(const ComplexOperator &rho);

enum class Subsystem { First, Second };

/// Reduced operator on the kept factor of a (dim_first x dim_second)
/// bipartite operator.
[[nodiscard]] ComplexOperator partial_trace(const ComplexOperator &rho,
                                            std::size_t dim_first,
                                            std::size_t dim_second,
                                            Subsystem keep);

/// Entropy of sum_j p_j |j><j| (x) sigma_j computed blockwise:
/// H(p) + sum_j p_j S(sigma_j). Zero-weight blocks are skipped.
[[nodiscard]] double block_diag_entropy(std::span<const double> weights,
                                        std::span<const ComplexOperator> blocks);

/// Kronecker products, first factor most significant.
[[nodiscard]] ComplexOperator tensor(const ComplexOperator &a,
                                     const ComplexOperator &b);
[[nodiscard]] ComplexVector tensor(const ComplexVector &a,
                                   const ComplexVector &b);

/// Computational basis vector |index> of the given dimension.
[[nodiscard]] ComplexVector basis_vector(std::size_t dim, std::size_t index);

/// |v><v|
[[nodiscard]] ComplexOperator outer(const ComplexVector &v);

} // namespace sqkd
