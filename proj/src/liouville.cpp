// Copyright 2026 The fcs-witness Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fcs/liouville.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "fcs/errors.hpp"

namespace fcs {

namespace {

std::size_t integer_sqrt(std::size_t n) {
    auto r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

void add_dissipator(ComplexMatrix& out, const ComplexMatrix& jump, double jump_weight) {
    const ComplexMatrix jdag = jump.adjoint();
    const ComplexMatrix jdj = jdag * jump;
    out += jump_weight * sandwich(jump, jdag);
    out -= 0.5 * (left_multiplication(jdj) + right_multiplication(jdj));
}

ComplexMatrix hamiltonian_part(const Lindbladian& model) {
    return Complex(0.0, -1.0)
           * (left_multiplication(model.hamiltonian) - right_multiplication(model.hamiltonian));
}

struct Eigensystem {
    ComplexVector values;
    ComplexMatrix vectors;
};

Eigensystem eigensystem(const ComplexMatrix& m) {
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, true);
    if (solver.info() != Eigen::Success) {
        throw SolverError("complex Schur iteration did not converge",
                          std::numeric_limits<double>::infinity());
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

// Index of the eigenvalue with largest real part; ties within kDegeneracyTol go
// to the largest |Im|.
Eigen::Index select_leading(const ComplexVector& values, bool& tie) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < values.size(); ++i) {
        if (values[i].real() > values[best].real()) best = i;
    }
    tie = false;
    Eigen::Index chosen = best;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        if (i == best) continue;
        if (values[best].real() - values[i].real() <= kDegeneracyTol) {
            tie = true;
            if (std::abs(values[i].imag()) > std::abs(values[chosen].imag())) chosen = i;
        }
    }
    return chosen;
}

}  // namespace

void Lindbladian::validate() const {
    if (!is_square(hamiltonian)) throw DimensionError("Hamiltonian must be square and non-empty");
    if (dim() > kMaxHilbertDim) throw InvalidArgument("Hilbert dimension exceeds dense limit");
    if (!is_finite(hamiltonian)) throw InvalidArgument("Hamiltonian has non-finite entries");
    const double herm = (hamiltonian - hamiltonian.adjoint()).norm();
    if (herm > kHermiticityTol) {
        throw InvalidArgument("Hamiltonian is not Hermitian: ||H - H^dag||_F = " + std::to_string(herm));
    }
    std::set<std::string> seen;
    for (const auto& j : jumps) {
        if (j.op.rows() != hamiltonian.rows() || j.op.cols() != hamiltonian.cols()) {
            throw DimensionError("jump operator '" + j.label + "' does not match Hamiltonian dimension");
        }
        if (!is_finite(j.op)) throw InvalidArgument("jump operator '" + j.label + "' has non-finite entries");
        if (!seen.insert(j.label).second) throw InvalidArgument("duplicate jump label '" + j.label + "'");
    }
}

const JumpOperator& Lindbladian::jump(const std::string& label) const {
    for (const auto& j : jumps) {
        if (j.label == label) return j;
    }
    throw InvalidArgument("unknown jump label '" + label + "'");
}

int CountingScheme::subset_of(const std::string& label) const {
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        if (std::find(subsets[i].begin(), subsets[i].end(), label) != subsets[i].end()) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

void CountingScheme::validate(const Lindbladian& model) const {
    if (subsets.empty()) throw InvalidArgument("counting scheme needs at least one subset");
    std::set<std::string> seen;
    for (const auto& subset : subsets) {
        if (subset.empty()) throw InvalidArgument("counting subsets must be non-empty");
        for (const auto& label : subset) {
            model.jump(label);
            if (!seen.insert(label).second) {
                throw InvalidArgument("label '" + label + "' appears in more than one counting subset");
            }
        }
    }
}

std::size_t Superoperator::hilbert_dim() const {
    return integer_sqrt(static_cast<std::size_t>(matrix.rows()));
}

ComplexMatrix Superoperator::apply(const ComplexMatrix& rho) const {
    return devectorize(matrix * vectorize(rho));
}

ComplexVector vectorize(const ComplexMatrix& rho) {
    // Eigen's default storage is column-major, so this is column stacking.
    return Eigen::Map<const ComplexVector>(rho.data(), rho.size());
}

ComplexMatrix devectorize(const ComplexVector& v) {
    const auto n = static_cast<std::size_t>(v.size());
    const std::size_t d = integer_sqrt(n);
    if (d == 0 || d * d != n) {
        throw DimensionError("devectorize: length " + std::to_string(n) + " is not a perfect square");
    }
    const auto di = static_cast<Eigen::Index>(d);
    return Eigen::Map<const ComplexMatrix>(v.data(), di, di);
}

ComplexMatrix left_multiplication(const ComplexMatrix& a) {
    return Eigen::kroneckerProduct(ComplexMatrix::Identity(a.rows(), a.rows()), a).eval();
}

ComplexMatrix right_multiplication(const ComplexMatrix& b) {
    return Eigen::kroneckerProduct(b.transpose(), ComplexMatrix::Identity(b.rows(), b.rows())).eval();
}

ComplexMatrix sandwich(const ComplexMatrix& a, const ComplexMatrix& b) {
    return Eigen::kroneckerProduct(b.transpose(), a).eval();
}

Superoperator build_liouvillian(const Lindbladian& model) {
    model.validate();
    ComplexMatrix out = hamiltonian_part(model);
    for (const auto& j : model.jumps) add_dissipator(out, j.op, 1.0);
    return {std::move(out)};
}

Superoperator build_tilted(const Lindbladian& model, const CountingScheme& scheme,
                           std::span<const double> s) {
    model.validate();
    scheme.validate(model);
    if (s.size() != scheme.size()) {
        throw DimensionError("build_tilted: " + std::to_string(s.size()) + " counting fields for "
                             + std::to_string(scheme.size()) + " subsets");
    }
    for (double si : s) {
        if (!std::isfinite(si) || std::abs(si) > kMaxCountingField) {
            throw InvalidArgument("counting field " + std::to_string(si) + " outside [-20, 20]");
        }
    }
    ComplexMatrix out = hamiltonian_part(model);
    for (const auto& j : model.jumps) {
        const int subset = scheme.subset_of(j.label);
        const double weight = subset < 0 ? 1.0 : std::exp(-s[static_cast<std::size_t>(subset)]);
        add_dissipator(out, j.op, weight);
    }
    return {std::move(out)};
}

Superoperator build_no_click(const Lindbladian& model, const CountingScheme& scheme) {
    model.validate();
    scheme.validate(model);
    ComplexMatrix out = hamiltonian_part(model);
    for (const auto& j : model.jumps) {
        add_dissipator(out, j.op, scheme.subset_of(j.label) < 0 ? 1.0 : 0.0);
    }
    return {std::move(out)};
}

ComplexVector spectrum(const Superoperator& gen) {
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(gen.matrix, false);
    if (solver.info() != Eigen::Success) {
        throw SolverError("complex Schur iteration did not converge",
                          std::numeric_limits<double>::infinity());
    }
    ComplexVector values = solver.eigenvalues();
    std::sort(values.begin(), values.end(),
              [](const Complex& a, const Complex& b) { return a.real() > b.real(); });
    return values;
}

ComplexMatrix steady_state(const Superoperator& gen) {
    const auto n = gen.matrix.rows();
    const std::size_t d = gen.hilbert_dim();
    if (n == 0 || gen.matrix.cols() != n || d * d != static_cast<std::size_t>(n)) {
        throw DimensionError("steady_state: generator is not a d^2 x d^2 matrix");
    }
    const ComplexVector values = spectrum(gen);
    const auto zeros = static_cast<std::size_t>(
        std::count_if(values.begin(), values.end(),
                      [](const Complex& z) { return std::abs(z) <= kDegeneracyTol; }));
    if (zeros > 1) throw DegenerateSteadyState(zeros);

    // Row 0 is a linear combination of the other diagonal rows (trace
    // preservation), so it can be traded for the normalisation Tr(rho) = 1.
    ComplexMatrix system = gen.matrix;
    system.row(0).setZero();
    const auto di = static_cast<Eigen::Index>(d);
    for (Eigen::Index k = 0; k < di; ++k) system(0, k * (di + 1)) = 1.0;
    ComplexVector rhs = ComplexVector::Zero(n);
    rhs(0) = 1.0;
    const Eigen::FullPivLU<ComplexMatrix> lu(system);
    if (!lu.isInvertible()) throw DegenerateSteadyState(lu.dimensionOfKernel() + 1);
    ComplexMatrix rho = devectorize(lu.solve(rhs));
    rho = 0.5 * (rho + rho.adjoint()).eval();
    rho /= rho.trace().real();

    const double scale = std::max(1.0, gen.matrix.norm());
    const double residual = (gen.matrix * vectorize(rho)).norm();
    if (residual > 1e-8 * scale) throw SolverError("steady state residual too large", residual);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> herm(rho, Eigen::EigenvaluesOnly);
    if (herm.eigenvalues().minCoeff() < -1e-9) {
        throw SolverError("steady state is not positive semidefinite", herm.eigenvalues().minCoeff());
    }
    return rho;
}

SpectralResult leading_eigenpair(const Superoperator& gen) {
    const auto n = gen.matrix.rows();
    if (n == 0 || gen.matrix.cols() != n) throw DimensionError("leading_eigenpair: generator must be square");

    const Eigensystem right_sys = eigensystem(gen.matrix);
    SpectralResult out;
    const Eigen::Index lead = select_leading(right_sys.values, out.tie_broken);
    out.eigenvalue = right_sys.values[lead];
    out.right = right_sys.vectors.col(lead);

    out.gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (i == lead) continue;
        out.gap = std::min(out.gap, out.eigenvalue.real() - right_sys.values[i].real());
    }
    out.gap = std::max(out.gap, 0.0);

    // Left eigenvector: rows y^T of gen^T's eigenvectors satisfy y^T gen = lambda y^T.
    const Eigensystem left_sys = eigensystem(gen.matrix.transpose());
    Eigen::Index match = 0;
    for (Eigen::Index i = 1; i < n; ++i) {
        if (std::abs(left_sys.values[i] - out.eigenvalue) < std::abs(left_sys.values[match] - out.eigenvalue)) {
            match = i;
        }
    }
    out.left = left_sys.vectors.col(match).conjugate();

    // Phase: first non-negligible component of `right` real positive.
    const double rmax = out.right.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(out.right[i]) > 1e-12 * rmax) {
            out.right *= std::conj(out.right[i]) / std::abs(out.right[i]);
            break;
        }
    }
    out.right.normalize();
    const Complex overlap = out.left.dot(out.right);  // left^dag right
    if (std::abs(overlap) < 1e-14) {
        throw SolverError("left and right leading eigenvectors are orthogonal", std::abs(overlap));
    }
    out.left /= std::conj(overlap);

    const double residual = (gen.matrix * out.right - out.eigenvalue * out.right).norm();
    if (residual > 1e-8 * std::max(gen.matrix.norm(), 1e-300)) {
        throw SolverError("leading eigenpair residual above tolerance", residual);
    }
    return out;
}

double adjoint_identity_residual(const Superoperator& gen) {
    const std::size_t d = gen.hilbert_dim();
    const ComplexVector id = vectorize(identity(d));
    return devectorize(gen.matrix.adjoint() * id).norm();
}

ComplexMatrix evolve(const Superoperator& gen, const ComplexMatrix& rho, double t) {
    const ComplexMatrix propagator = (gen.matrix * t).exp();
    return devectorize(propagator * vectorize(rho));
}

}  // namespace fcs
