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

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fcs/liouville.hpp"

namespace fcs {

inline constexpr double kDefaultFdStep = 1e-3;

/// Sign convention stored with every CumulantTable.
inline constexpr const char* kCumulantConvention =
    "kappa_nm = (-1)^(n+m) d^(n+m) theta / ds1^n ds2^m at s=0; Z_t(s) = sum_K P_t(K) exp(-s.K)";

/// Scaled (per unit time) joint cumulants of the two monitored counts.
/// Signs are physical: kappa10, kappa01 are mean photocurrents.
/// With a single monitored subset the *01 and *02/*11 entries are zero.
struct CumulantTable {
    double kappa10 = 0.0;
    double kappa01 = 0.0;
    double kappa20 = 0.0;
    double kappa11 = 0.0;
    double kappa02 = 0.0;
    std::string convention = kCumulantConvention;
};

/// Scaled moments at the t = 1 convention.
struct ScaledMoments {
    double m10 = 0.0;
    double m01 = 0.0;
    double m20 = 0.0;
    double m11 = 0.0;
    double m02 = 0.0;
};

struct RateFunctionSample {
    double x = 0.0;
    double phi = 0.0;
    double argmin_s = 0.0;
    /// True only for x == 0 where the infimum is the s -> +inf limit,
    /// evaluated at the upper edge of the bracket.
    bool at_boundary = false;
};

struct Bracket {
    double lo = -kMaxCountingField;
    double hi = kMaxCountingField;
};

/// theta(s): real part of the leading eigenvalue of the tilted generator.
double scgf(const Lindbladian& model, const CountingScheme& scheme, std::span<const double> s);

/// Central finite differences of theta at s = 0 (steps h and h/2, one
/// Richardson level). Requires 1e-5 <= step <= 1e-1 and M <= 2.
CumulantTable cumulants_fd(const Lindbladian& model, const CountingScheme& scheme,
                           double step = kDefaultFdStep);

/// Arbitrary mixed scaled cumulant kappa_{orders} by a tensor-product central
/// stencil with one Richardson level; `orders` has one entry per subset.
double scaled_cumulant_fd(const Lindbladian& model, const CountingScheme& scheme,
                          std::span<const int> orders, double step = kDefaultFdStep);

/// Stationary mean photocurrents sum_{mu in J_i} Tr(L_mu^dag L_mu rho_ss).
std::vector<double> first_cumulants_analytic(const Lindbladian& model, const CountingScheme& scheme);

/// -d theta / d s_i at `s` from the leading left/right eigenvectors of L_s.
std::vector<double> hellmann_feynman_rates(const Lindbladian& model, const CountingScheme& scheme,
                                           std::span<const double> s);

/// Leading real eigenvalue of the generator with the monitored jumps removed:
/// the decay rate of the probability of seeing no click at all.
double no_click_rate(const Lindbladian& model, const CountingScheme& scheme);

/// phi(x) = min_s { x s + theta(s) } over `bracket` for a single monitored subset.
/// Throws BracketTooSmall if the minimiser sits on the bracket edge (except x == 0,
/// see RateFunctionSample::at_boundary).
RateFunctionSample rate_function(const Lindbladian& model, const CountingScheme& scheme, double x,
                                 Bracket bracket = {});

ScaledMoments cumulants_to_moments(const CumulantTable& c);

}  // namespace fcs
