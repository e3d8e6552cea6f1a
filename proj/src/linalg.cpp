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

#include "sqkd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "sqkd/errors.hpp"

namespace sqkd {

namespace {

constexpr double kEntryClamp = 1e-12;

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

void require_square(const ComplexOperator &m, const char *what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw InvalidArgument(std::string(what) + ": operator must be square and non-empty");
    }
}

double hermitian_tolerance(const ComplexOperator &m) {
    return 1e-9 * std::max(1.0, m.cwiseAbs().maxCoeff());
}

} // namespace

double shannon_entropy(std::span<const double> probabilities) {
    double sum = 0.0;
    double entropy = 0.0;
    for (double p : probabilities) {
        if (!std::isfinite(p) || p < -kEntryClamp) {
            throw InvalidArgument("shannon_entropy: negative or non-finite entry " +
                                  std::to_string(p));
        }
        p = std::max(p, 0.0);
        sum += p;
        entropy -= xlog2x(p);
    }
    if (sum > 1.0 + kProbabilityTolerance) {
        throw InvalidArgument("shannon_entropy: entries sum to " + std::to_string(sum));
    }
    return std::max(entropy, 0.0);
}

double binary_entropy(double p) {
    if (!(p >= -kEntryClamp && p <= 1.0 + kEntryClamp)) {
        throw InvalidArgument("binary_entropy: argument out of [0, 1]: " + std::to_string(p));
    }
    p = std::clamp(p, 0.0, 1.0);
    return -xlog2x(p) - xlog2x(1.0 - p);
}

double hermiticity_residual(const ComplexOperator &m) {
    if (m.rows() != m.cols()) {
        throw InvalidArgument("hermiticity_residual: operator must be square");
    }
    if (m.size() == 0) {
        return 0.0;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_residual(const ComplexOperator &u) {
    if (u.rows() != u.cols()) {
        throw InvalidArgument("unitarity_residual: operator must be square");
    }
    if (u.size() == 0) {
        return 0.0;
    }
    const ComplexOperator gram = u.adjoint() * u;
    return (gram - ComplexOperator::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

std::vector<double> hermitian_eigenvalues(const ComplexOperator &m) {
    require_square(m, "hermitian_eigenvalues");
    if (hermiticity_residual(m) > hermitian_tolerance(m)) {
        throw InvalidArgument("hermitian_eigenvalues: operator is not Hermitian");
    }
    // Symmetrize so rounding noise in the input cannot leak into the solver.
    const ComplexOperator h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexOperator> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw Error("hermitian_eigenvalues: eigensolver did not converge");
    }
    const Eigen::VectorXd &values = solver.eigenvalues();
    std::vector<double> out(values.data(), values.data() + values.size());
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

double von_neumann_entropy(const ComplexOperator &rho) {
    require_square(rho, "von_neumann_entropy");
    const double trace = rho.trace().real();
    if (std::abs(trace - 1.0) > 1e-9) {
        throw InvalidArgument("von_neumann_entropy: trace is " + std::to_string(trace));
    }
    double entropy = 0.0;
    for (double lambda : hermitian_eigenvalues(rho)) {
        if (lambda < -kEigenClampTolerance) {
            throw InvalidArgument("von_neumann_entropy: negative eigenvalue " +
                                  std::to_string(lambda));
        }
        entropy -= xlog2x(std::max(lambda, 0.0));
    }
    return std::max(entropy, 0.0);
}

ComplexOperator partial_trace(const ComplexOperator &rho, std::size_t dim_first,
                              std::size_t dim_second, Subsystem keep) {
    const auto n = static_cast<Eigen::Index>(dim_first * dim_second);
    if (dim_first == 0 || dim_second == 0 || rho.rows() != n || rho.cols() != n) {
        throw InvalidArgument("partial_trace: operator dimension does not match " +
                              std::to_string(dim_first) + " x " + std::to_string(dim_second));
    }
    const auto da = static_cast<Eigen::Index>(dim_first);
    const auto db = static_cast<Eigen::Index>(dim_second);
    if (keep == Subsystem::First) {
        ComplexOperator out = ComplexOperator::Zero(da, da);
        for (Eigen::Index b = 0; b < db; ++b) {
            for (Eigen::Index a = 0; a < da; ++a) {
                for (Eigen::Index a2 = 0; a2 < da; ++a2) {
                    out(a, a2) += rho(a * db + b, a2 * db + b);
                }
            }
        }
        return out;
    }
    ComplexOperator out = ComplexOperator::Zero(db, db);
    for (Eigen::Index a = 0; a < da; ++a) {
        out += rho.block(a * db, a * db, db, db);
    }
    return out;
}

double block_diag_entropy(std::span<const double> weights,
                          std::span<const ComplexOperator> blocks) {
    if (weights.size() != blocks.size()) {
        throw InvalidArgument("block_diag_entropy: weight and block counts differ");
    }
    double total = 0.0;
    for (double w : weights) {
        total += w;
    }
    if (std::abs(total - 1.0) > kProbabilityTolerance) {
        throw InvalidArgument("block_diag_entropy: weights sum to " + std::to_string(total));
    }
    double entropy = shannon_entropy(weights);
    for (std::size_t j = 0; j < blocks.size(); ++j) {
        if (weights[j] <= 0.0) {
            continue;
        }
        entropy += weights[j] * von_neumann_entropy(blocks[j]);
    }
    return entropy;
}

ComplexOperator tensor(const ComplexOperator &a, const ComplexOperator &b) {
    ComplexOperator out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexVector tensor(const ComplexVector &a, const ComplexVector &b) {
    ComplexVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

ComplexVector basis_vector(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw InvalidArgument("basis_vector: index out of range");
    }
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return v;
}

ComplexOperator outer(const ComplexVector &v) { return v * v.adjoint(); }

} // namespace sqkd
