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

#include "fcs/witness.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fcs/errors.hpp"

namespace fcs {

namespace {

// Scaled moment <h1^n h2^m> for n + m <= 2.
double moment(const ScaledMoments& m, int n, int k) {
    switch (n * 10 + k) {
        case 0: return 1.0;
        case 10: return m.m10;
        case 1: return m.m01;
        case 20: return m.m20;
        case 11: return m.m11;
        case 2: return m.m02;
        default: throw InvalidArgument("moment of total degree > 2 requested");
    }
}

double det3(const Eigen::MatrixXd& a) {
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1))
           - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
           + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

ThetaDerivatives ThetaDerivatives::from_cumulants(const CumulantTable& c) {
    return {-c.kappa10, -c.kappa01, c.kappa20, c.kappa11, c.kappa02};
}

std::vector<std::pair<int, int>> moment_index(int order) {
    std::vector<std::pair<int, int>> out;
    for (int degree = 0; static_cast<int>(out.size()) < order; ++degree) {
        for (int n = degree; n >= 0 && static_cast<int>(out.size()) < order; --n) {
            out.emplace_back(n, degree - n);
        }
    }
    return out;
}

MomentMatrix moment_matrix(const CumulantTable& c, int order) {
    if (order < 1 || order > 3) {
        throw InvalidArgument("unsupported order " + std::to_string(order)
                              + ": moment matrices beyond 3x3 need higher cumulants");
    }
    const ScaledMoments m = cumulants_to_moments(c);
    MomentMatrix out;
    out.order = order;
    out.index = moment_index(order);
    out.entries.resize(order, order);
    for (int i = 0; i < order; ++i) {
        for (int j = 0; j < order; ++j) {
            const auto [ni, mi] = out.index[static_cast<std::size_t>(i)];
            const auto [nj, mj] = out.index[static_cast<std::size_t>(j)];
            out.entries(i, j) = moment(m, ni + nj, mi + mj);
        }
    }
    return out;
}

double principal_minor(const MomentMatrix& m, int k) {
    if (k < 1 || k > m.order || k > 3) {
        throw InvalidArgument("principal_minor: k = " + std::to_string(k) + " outside [1, "
                              + std::to_string(m.order) + "]");
    }
    const auto& a = m.entries;
    switch (k) {
        case 1: return a(0, 0);
        case 2: return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
        default: return det3(a);
    }
}

double m3_appendix(const ThetaDerivatives& d) {
    const double t1 = d.d1;
    const double t2 = d.d2;
    const double t12 = d.d12;
    const double t11 = d.d11;
    const double p = t1 * t2;
    return 2.0 * p * (t12 + p)
           - (t12 + p) * (t12 + p)
           - t1 * t1 * (t12 + t2 * t2)
           - t2 * t2 * (t11 + t1 * t1)
           + (t12 + t2 * t2) * (t11 + t1 * t1);
}

double m3_appendix(const CumulantTable& c) { return m3_appendix(ThetaDerivatives::from_cumulants(c)); }

double m3_direct(const CumulantTable& c) {
    const ScaledMoments m = cumulants_to_moments(c);
    return m.m20 * m.m02 - m.m11 * m.m11 - m.m10 * m.m10 * m.m02
           + 2.0 * m.m10 * m.m01 * m.m11 - m.m01 * m.m01 * m.m20;
}

WitnessReport evaluate_witness(const CumulantTable& c) {
    WitnessReport r;
    r.cumulants = c;
    r.m2 = principal_minor(moment_matrix(c, 2), 2);
    r.m3_direct = m3_direct(c);
    r.m3_appendix = m3_appendix(c);
    r.scaling_exponent = 4;
    return r;
}

ScalingCheck scaling_check(const CumulantTable& c, double t, WitnessVariant variant) {
    if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("scaling_check: t must be positive");

    double base = 0.0;
    double scaled = 0.0;
    if (variant == WitnessVariant::Direct) {
        const MomentMatrix m = moment_matrix(c, 3);
        Eigen::MatrixXd s = m.entries;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                const auto [ni, mi] = m.index[static_cast<std::size_t>(i)];
                const auto [nj, mj] = m.index[static_cast<std::size_t>(j)];
                s(i, j) *= std::pow(t, ni + mi + nj + mj);
            }
        }
        base = det3(m.entries);
        scaled = det3(s);
    } else {
        ThetaDerivatives d = ThetaDerivatives::from_cumulants(c);
        base = m3_appendix(d);
        d.d1 *= t;
        d.d2 *= t;
        d.d11 *= t * t;
        d.d12 *= t * t;
        d.d22 *= t * t;
        scaled = m3_appendix(d);
    }
    ScalingCheck out;
    out.sign = sign_of(scaled);
    out.factor = base != 0.0 ? scaled / base : std::numeric_limits<double>::quiet_NaN();
    return out;
}

const char* to_string(WitnessVariant v) {
    return v == WitnessVariant::Appendix ? "appendix" : "direct";
}

}  // namespace fcs
