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

#include "fcs/ldt.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/tools/minima.hpp>

#include "fcs/errors.hpp"

namespace fcs {

namespace {

void check_step(double step) {
    if (!(step >= 1e-5 && step <= 1e-1)) {
        throw InvalidArgument("finite-difference step " + std::to_string(step) + " outside [1e-5, 1e-1]");
    }
}

double binomial(int n, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

// Tensor-product central difference of `orders` at s = 0 with spacing h.
double central_difference(const Lindbladian& model, const CountingScheme& scheme,
                          std::span<const int> orders, double h) {
    const std::size_t m = orders.size();
    std::vector<int> k(m, 0);
    std::vector<double> s(m, 0.0);
    double acc = 0.0;
    while (true) {
        double weight = 1.0;
        for (std::size_t i = 0; i < m; ++i) {
            const int n = orders[i];
            weight *= ((k[i] % 2) ? -1.0 : 1.0) * binomial(n, k[i]);
            s[i] = (0.5 * n - k[i]) * h;
        }
        acc += weight * scgf(model, scheme, s);
        std::size_t i = 0;
        for (; i < m; ++i) {
            if (++k[i] <= orders[i]) break;
            k[i] = 0;
        }
        if (i == m) break;
    }
    int total = 0;
    for (int n : orders) total += n;
    return acc / std::pow(h, total);
}

struct Stencil {
    const Lindbladian& model;
    const CountingScheme& scheme;

    double theta(double s1, double s2) const {
        if (scheme.size() == 1) {
            const std::array<double, 1> s{s1};
            return scgf(model, scheme, s);
        }
        const std::array<double, 2> s{s1, s2};
        return scgf(model, scheme, s);
    }

    // First and second derivatives of theta at 0 with spacing h.
    std::array<double, 5> derivatives(double h) const {
        const double f0 = theta(0.0, 0.0);
        const double fp = theta(h, 0.0);
        const double fm = theta(-h, 0.0);
        std::array<double, 5> d{};
        d[0] = (fp - fm) / (2.0 * h);
        d[2] = (fp - 2.0 * f0 + fm) / (h * h);
        if (scheme.size() == 2) {
            const double gp = theta(0.0, h);
            const double gm = theta(0.0, -h);
            d[1] = (gp - gm) / (2.0 * h);
            d[4] = (gp - 2.0 * f0 + gm) / (h * h);
            d[3] = (theta(h, h) - theta(h, -h) - theta(-h, h) + theta(-h, -h)) / (4.0 * h * h);
        }
        return d;
    }
};

}  // namespace

double scgf(const Lindbladian& model, const CountingScheme& scheme, std::span<const double> s) {
    return leading_eigenpair(build_tilted(model, scheme, s)).eigenvalue.real();
}

CumulantTable cumulants_fd(const Lindbladian& model, const CountingScheme& scheme, double step) {
    check_step(step);
    if (scheme.size() > 2) throw InvalidArgument("cumulants_fd supports at most two counting subsets");
    scheme.validate(model);

    const Stencil stencil{model, scheme};
    const auto coarse = stencil.derivatives(step);
    const auto fine = stencil.derivatives(0.5 * step);
    std::array<double, 5> d{};
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = (4.0 * fine[i] - coarse[i]) / 3.0;

    CumulantTable out;
    out.kappa10 = -d[0];
    out.kappa01 = -d[1];
    out.kappa20 = d[2];
    out.kappa11 = d[3];
    out.kappa02 = d[4];
    return out;
}

double scaled_cumulant_fd(const Lindbladian& model, const CountingScheme& scheme,
                          std::span<const int> orders, double step) {
    check_step(step);
    scheme.validate(model);
    if (orders.size() != scheme.size()) {
        throw DimensionError("scaled_cumulant_fd: one derivative order per counting subset required");
    }
    int total = 0;
    for (int n : orders) {
        if (n < 0) throw InvalidArgument("derivative orders must be non-negative");
        total += n;
    }
    if (total == 0) return 0.0;  // theta(0) = 0
    const double coarse = central_difference(model, scheme, orders, step);
    const double fine = central_difference(model, scheme, orders, 0.5 * step);
    const double derivative = (4.0 * fine - coarse) / 3.0;
    return (total % 2 ? -1.0 : 1.0) * derivative;
}

std::vector<double> first_cumulants_analytic(const Lindbladian& model, const CountingScheme& scheme) {
    scheme.validate(model);
    const ComplexMatrix rho = steady_state(build_liouvillian(model));
    std::vector<double> rates(scheme.size(), 0.0);
    for (std::size_t i = 0; i < scheme.size(); ++i) {
        for (const auto& label : scheme.subsets[i]) {
            const ComplexMatrix& l = model.jump(label).op;
            rates[i] += expectation(l.adjoint() * l, rho).real();
        }
    }
    return rates;
}

std::vector<double> hellmann_feynman_rates(const Lindbladian& model, const CountingScheme& scheme,
                                           std::span<const double> s) {
    const SpectralResult lead = leading_eigenpair(build_tilted(model, scheme, s));
    std::vector<double> rates(scheme.size(), 0.0);
    for (std::size_t i = 0; i < scheme.size(); ++i) {
        ComplexMatrix jump_part = ComplexMatrix::Zero(lead.right.size(), lead.right.size());
        for (const auto& label : scheme.subsets[i]) {
            const ComplexMatrix& l = model.jump(label).op;
            jump_part += sandwich(l, l.adjoint());
        }
        rates[i] = std::exp(-s[i]) * lead.left.dot(jump_part * lead.right).real();
    }
    return rates;
}

double no_click_rate(const Lindbladian& model, const CountingScheme& scheme) {
    return leading_eigenpair(build_no_click(model, scheme)).eigenvalue.real();
}

RateFunctionSample rate_function(const Lindbladian& model, const CountingScheme& scheme, double x,
                                 Bracket bracket) {
    if (scheme.size() != 1) throw InvalidArgument("rate_function needs exactly one counting subset");
    if (!(x >= 0.0) || !std::isfinite(x)) throw InvalidArgument("rate_function: x must be finite and >= 0");
    if (!(bracket.lo < bracket.hi) || bracket.lo < -kMaxCountingField || bracket.hi > kMaxCountingField) {
        throw InvalidArgument("rate_function: bracket must be an interval inside [-20, 20]");
    }
    auto objective = [&](double s) {
        const std::array<double, 1> field{s};
        return x * s + scgf(model, scheme, field);
    };

    RateFunctionSample out;
    out.x = x;
    if (x == 0.0) {
        // theta is nonincreasing, so the infimum is the s -> +inf limit.
        out.argmin_s = bracket.hi;
        out.phi = objective(bracket.hi);
        out.at_boundary = true;
        return out;
    }

    const int bits = std::numeric_limits<double>::digits / 2;
    const auto [s_min, g_min] = boost::math::tools::brent_find_minima(objective, bracket.lo, bracket.hi, bits);
    const double edge_tol = 1e-6 * (bracket.hi - bracket.lo);
    if (s_min - bracket.lo < edge_tol || bracket.hi - s_min < edge_tol) {
        throw BracketTooSmall("rate_function: minimiser for x = " + std::to_string(x)
                              + " lies on the bracket edge s = " + std::to_string(s_min));
    }
    out.argmin_s = s_min;
    out.phi = g_min;
    return out;
}

ScaledMoments cumulants_to_moments(const CumulantTable& c) {
    ScaledMoments m;
    m.m10 = c.kappa10;
    m.m01 = c.kappa01;
    m.m20 = c.kappa20 + c.kappa10 * c.kappa10;
    m.m11 = c.kappa11 + c.kappa10 * c.kappa01;
    m.m02 = c.kappa02 + c.kappa01 * c.kappa01;
    return m;
}

}  // namespace fcs
