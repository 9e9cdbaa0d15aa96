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

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fcs/algebra.hpp"

namespace fcs {

/// Tolerance on ||H - H^dag||_F accepted for a Hamiltonian.
inline constexpr double kHermiticityTol = 1e-10;
/// Counting fields are restricted to |s_i| <= kMaxCountingField.
inline constexpr double kMaxCountingField = 20.0;
/// Two eigenvalues whose real parts differ by less than this are treated as tied.
inline constexpr double kDegeneracyTol = 1e-9;

struct JumpOperator {
    std::string label;
    ComplexMatrix op;
};

/// Generator data of a Lindblad master equation (hbar = 1, rates in units of gamma).
struct Lindbladian {
    ComplexMatrix hamiltonian;
    std::vector<JumpOperator> jumps;

    std::size_t dim() const { return static_cast<std::size_t>(hamiltonian.rows()); }

    /// Throws if H is not Hermitian, operators disagree in dimension, labels
    /// repeat, or anything is non-finite.
    void validate() const;

    /// Throws InvalidArgument if no jump carries `label`.
    const JumpOperator& jump(const std::string& label) const;
};

/// Monitored subsets J_1..J_M of jump labels; subset i is conjugate to s_i.
/// Jumps not listed in any subset are unmonitored.
struct CountingScheme {
    std::vector<std::vector<std::string>> subsets;

    std::size_t size() const { return subsets.size(); }

    /// Subset index of `label`, or -1 if unmonitored.
    int subset_of(const std::string& label) const;

    /// Throws unless M >= 1, the subsets are pairwise disjoint and every
    /// label exists in `model`.
    void validate(const Lindbladian& model) const;
};

/// Matrix of a linear map on column-stacked d x d operators.
struct Superoperator {
    ComplexMatrix matrix;

    std::size_t hilbert_dim() const;
    ComplexVector apply(const ComplexVector& v) const { return matrix * v; }
    ComplexMatrix apply(const ComplexMatrix& rho) const;
};

struct SpectralResult {
    Complex eigenvalue;
    ComplexVector right;
    ComplexVector left;  ///< normalised so that left^dag * right == 1
    double gap = 0.0;    ///< Re(lambda_0) - Re(lambda_1); +inf for 1x1 generators
    bool tie_broken = false;  ///< another eigenvalue shared the largest real part
};

ComplexVector vectorize(const ComplexMatrix& rho);
ComplexMatrix devectorize(const ComplexVector& v);

// Column-stacking superoperators: vec(A rho B) = (B^T (x) A) vec(rho).
ComplexMatrix left_multiplication(const ComplexMatrix& a);
ComplexMatrix right_multiplication(const ComplexMatrix& b);
ComplexMatrix sandwich(const ComplexMatrix& a, const ComplexMatrix& b);

Superoperator build_liouvillian(const Lindbladian& model);

/// Tilted generator: every jump term L rho L^dag of subset i is weighted by exp(-s_i).
/// `s` must have one entry per subset, each within [-kMaxCountingField, kMaxCountingField].
Superoperator build_tilted(const Lindbladian& model, const CountingScheme& scheme,
                           std::span<const double> s);

/// Generator with the monitored jump terms removed entirely (the s -> +inf limit).
Superoperator build_no_click(const Lindbladian& model, const CountingScheme& scheme);

/// Unique unit-trace positive null vector of an untilted generator.
/// Throws DegenerateSteadyState if zero has multiplicity > 1.
ComplexMatrix steady_state(const Superoperator& gen);

/// Eigenpair with the largest real part, with biorthonormal left vector.
SpectralResult leading_eigenpair(const Superoperator& gen);

/// All eigenvalues, sorted by decreasing real part.
ComplexVector spectrum(const Superoperator& gen);

/// ||devec(gen^dag vec(I))||_F; zero for trace-preserving generators.
double adjoint_identity_residual(const Superoperator& gen);

/// Propagates rho by exp(t * gen) (dense matrix exponential).
ComplexMatrix evolve(const Superoperator& gen, const ComplexMatrix& rho, double t);

}  // namespace fcs
