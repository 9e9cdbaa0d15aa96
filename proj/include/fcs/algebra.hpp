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

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace fcs {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Largest Hilbert-space dimension handled by the dense code paths.
inline constexpr std::size_t kMaxHilbertDim = 64;

/// Composite space of `n_sites` identical subsystems of dimension `local_dim`.
/// Composite indices are big-endian over sites: site 1 is the most
/// significant digit.
struct SiteSpec {
    std::size_t n_sites = 1;
    std::size_t local_dim = 2;

    std::size_t total_dim() const;
};

// Single-qubit operators in the (|g>, |e>) basis, |g> = index 0.
ComplexMatrix identity(std::size_t dim);
ComplexMatrix sigma_minus();  ///< |g><e|
ComplexMatrix sigma_plus();   ///< |e><g|
ComplexMatrix sigma_x();
ComplexMatrix sigma_z();      ///< diag(-1, +1)

/// Returns I (x) ... (x) op (x) ... (x) I with `op` at the 1-based position `site`.
/// Throws DimensionError if op is not local_dim square, InvalidArgument if
/// `site` is outside [1, n_sites] or the composite dimension exceeds kMaxHilbertDim.
ComplexMatrix kron_embed(const ComplexMatrix& op, std::size_t site, const SiteSpec& spec);

/// Tr(op * rho).
Complex expectation(const ComplexMatrix& op, const ComplexMatrix& rho);

/// Conjugate transpose.
ComplexMatrix adjoint(const ComplexMatrix& op);

/// Frobenius norm of a - b; throws DimensionError on shape mismatch.
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_square(const ComplexMatrix& m);
bool is_finite(const ComplexMatrix& m);

}  // namespace fcs
