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

#include "fcs/algebra.hpp"

#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "fcs/errors.hpp"

namespace fcs {

std::size_t SiteSpec::total_dim() const {
    std::size_t dim = 1;
    for (std::size_t i = 0; i < n_sites; ++i) {
        dim *= local_dim;
        if (dim > kMaxHilbertDim) {
            throw InvalidArgument("composite dimension exceeds " + std::to_string(kMaxHilbertDim));
        }
    }
    return dim;
}

ComplexMatrix identity(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return ComplexMatrix::Identity(n, n);
}

ComplexMatrix sigma_minus() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return m;
}

ComplexMatrix sigma_plus() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(1, 0) = 1.0;
    return m;
}

ComplexMatrix sigma_x() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

ComplexMatrix sigma_z() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = -1.0;
    m(1, 1) = 1.0;
    return m;
}

ComplexMatrix kron_embed(const ComplexMatrix& op, std::size_t site, const SiteSpec& spec) {
    if (spec.n_sites == 0 || spec.local_dim == 0) {
        throw InvalidArgument("SiteSpec needs at least one site of positive dimension");
    }
    if (!is_square(op) || static_cast<std::size_t>(op.rows()) != spec.local_dim) {
        throw DimensionError("kron_embed: operator is " + std::to_string(op.rows()) + "x"
                             + std::to_string(op.cols()) + ", expected local dimension "
                             + std::to_string(spec.local_dim));
    }
    if (site < 1 || site > spec.n_sites) {
        throw InvalidArgument("kron_embed: site " + std::to_string(site) + " outside [1, "
                              + std::to_string(spec.n_sites) + "]");
    }
    spec.total_dim();  // range check

    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    const ComplexMatrix eye = identity(spec.local_dim);
    for (std::size_t k = 1; k <= spec.n_sites; ++k) {
        const ComplexMatrix& factor = (k == site) ? op : eye;
        out = Eigen::kroneckerProduct(out, factor).eval();
    }
    return out;
}

Complex expectation(const ComplexMatrix& op, const ComplexMatrix& rho) {
    if (!is_square(op) || op.rows() != rho.rows() || op.cols() != rho.cols()) {
        throw DimensionError("expectation: operator and state dimensions differ");
    }
    // Tr(A B) = sum_ij A_ij B_ji, without forming the product.
    return (op.array() * rho.transpose().array()).sum();
}

ComplexMatrix adjoint(const ComplexMatrix& op) { return op.adjoint(); }

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("frobenius_distance: shape mismatch");
    }
    return (a - b).norm();
}

bool is_square(const ComplexMatrix& m) { return m.rows() == m.cols() && m.rows() > 0; }

bool is_finite(const ComplexMatrix& m) { return m.allFinite(); }

}  // namespace fcs
