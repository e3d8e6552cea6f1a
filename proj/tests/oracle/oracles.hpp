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

// Reference computations used only by the test suites. Nothing here calls the
// library routine it is meant to check.

#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "sqkd/attack.hpp"
#include "sqkd/linalg.hpp"
#include "sqkd/random.hpp"
#include "sqkd/statistics.hpp"

namespace sqkd::oracle {

/// Eigenvalues (descending) of a Hermitian matrix by cyclic Jacobi rotations
/// on its real symmetric embedding [[Re, -Im], [Im, Re]].
std::vector<double> jacobi_eigenvalues(const ComplexOperator &h);

/// Entropy in bits from an eigenvalue list, computed in long double.
double entropy_from_eigenvalues(const std::vector<double> &values);

/// tr_B or tr_A by explicit sandwiching with basis vectors.
ComplexOperator brute_partial_trace(const ComplexOperator &rho, std::size_t dim_a,
                                    std::size_t dim_b, bool keep_first);

/// Block-diagonal matrix diag(w_1 B_1, ..., w_n B_n).
ComplexOperator assemble_block_diagonal(const std::vector<double> &weights,
                                        const std::vector<ComplexOperator> &blocks);

/// Random density matrix of the given dimension and rank (Wishart style).
ComplexOperator random_density(std::size_t dim, std::size_t rank, Rng &rng);

/// Random Hermitian matrix with standard normal entries.
ComplexOperator random_hermitian(std::size_t dim, Rng &rng);

/// Key-rate bound re-derived from a flat list
/// (p000, p001, p010, p011, p100, p101, p110, p111, p_pm, p_mp) in long
/// double with natural logarithms.
long double reference_rate(const std::array<long double, 10> &p);

std::array<long double, 10> flatten(const ChannelStatistics &s);

/// |(<a'| (x) I) U_F U_E |a, 0>|^2 summed over the ancilla, with a, a' in
/// {+, -} given as signs.
double direct_x_probability(const CollectiveAttack &attack, int sent_sign, int measured_sign);

/// Standard normal deviate from two uniforms.
double normal(Rng &rng);

} // namespace sqkd::oracle
