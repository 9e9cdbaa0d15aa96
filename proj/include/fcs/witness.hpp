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

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fcs/ldt.hpp"

namespace fcs {

/// Moment matrix M_{nm,kl} = <h1^(n+k) h2^(m+l)> of the two counting
/// operators. Rows/columns follow `index`: ascending total degree n+m, and
/// within a degree (n, m) precedes (n-1, m+1).
struct MomentMatrix {
    int order = 0;
    Eigen::MatrixXd entries;
    std::vector<std::pair<int, int>> index;
};

/// Raw derivatives of theta at s = 0, in the notation of the published minor.
struct ThetaDerivatives {
    double d1 = 0.0;   ///< d theta / d s1
    double d2 = 0.0;   ///< d theta / d s2
    double d11 = 0.0;  ///< d^2 theta / d s1^2
    double d12 = 0.0;  ///< d^2 theta / d s1 d s2
    double d22 = 0.0;  ///< d^2 theta / d s2^2

    /// Undoes the physical sign convention of CumulantTable.
    static ThetaDerivatives from_cumulants(const CumulantTable& c);
};

enum class WitnessVariant { Appendix, Direct };

struct WitnessReport {
    double m2 = 0.0;
    double m3_direct = 0.0;
    double m3_appendix = 0.0;
    CumulantTable cumulants;
    /// Power of t multiplying the third-order determinant under time scaling.
    int scaling_exponent = 4;
};

struct ScalingCheck {
    int sign = 0;         ///< sign of the t-scaled determinant: -1, 0 or +1
    double factor = 1.0;  ///< scaled / unscaled determinant
};

/// First `order` (row, column) labels of the moment matrix.
std::vector<std::pair<int, int>> moment_index(int order);

/// Throws InvalidArgument for order < 1 or order > 3 (higher orders need
/// cumulants beyond second order).
MomentMatrix moment_matrix(const CumulantTable& c, int order = 3);

/// Determinant of the leading k x k block by cofactor expansion.
double principal_minor(const MomentMatrix& m, int k);

/// Third-order minor exactly as the five-term expression in theta-derivatives.
double m3_appendix(const ThetaDerivatives& d);
double m3_appendix(const CumulantTable& c);

/// Determinant of the 3 x 3 moment matrix, expanded in scaled moments.
double m3_direct(const CumulantTable& c);

WitnessReport evaluate_witness(const CumulantTable& c);

/// Rescales every moment m_nm by t^(n+m) and re-evaluates the selected
/// third-order witness. Throws InvalidArgument unless t > 0.
ScalingCheck scaling_check(const CumulantTable& c, double t,
                           WitnessVariant variant = WitnessVariant::Direct);

const char* to_string(WitnessVariant v);

}  // namespace fcs
