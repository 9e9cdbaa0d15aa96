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

#include <doctest.h>

#include <numbers>

#include "fcs/errors.hpp"
#include "fcs/ldt.hpp"
#include "fcs/models.hpp"
#include "fcs/witness.hpp"
#include "fcs_test_support.hpp"

using namespace fcs;

namespace {

constexpr double kPi = std::numbers::pi;

ComplexMatrix total_jump_operator(const ModelInstance& m) {
    ComplexMatrix out = ComplexMatrix::Zero(4, 4);
    for (const auto& subset : m.scheme.subsets) {
        for (const auto& label : subset) {
            const ComplexMatrix& l = m.model.jump(label).op;
            out += l.adjoint() * l;
        }
    }
    return out;
}

ComplexMatrix rho_ss(const ModelInstance& m) { return steady_state(build_liouvillian(m.model)); }

double circuit_witness(double r, double delta) {
    const ModelInstance m = build_circuit_atoms({0.5, 1.0, 1.0, 0.1, std::asin(std::sqrt(r)), delta});
    return m3_appendix(cumulants_fd(m.model, m.scheme));
}

}  // namespace

TEST_CASE("coupled atom operators") {
    const ModelInstance m = build_coupled_atoms({0.4, 0.3, 2.0, 0.5});
    // Basis |gg>, |ge>, |eg>, |ee>: drive couples states differing on one site,
    // exchange couples |ge> and |eg>.
    CHECK(std::abs(m.model.hamiltonian(0, 1) - 0.2) <= 1e-15);
    CHECK(std::abs(m.model.hamiltonian(0, 2) - 0.2) <= 1e-15);
    CHECK(std::abs(m.model.hamiltonian(1, 2) - 0.3) <= 1e-15);
    CHECK(std::abs(m.model.hamiltonian(2, 1) - 0.3) <= 1e-15);
    CHECK(std::abs(m.model.hamiltonian(0, 3)) == 0.0);
    CHECK(std::abs(m.model.jump("D1").op(0, 2) - std::sqrt(2.0)) <= 1e-15);
    CHECK(std::abs(m.model.jump("D2").op(0, 1) - std::sqrt(2.0)) <= 1e-15);
    CHECK(std::abs(m.model.jump("phi1").op(3, 3) - std::sqrt(0.5)) <= 1e-15);
    CHECK(std::abs(m.model.jump("phi2").op(2, 2) + std::sqrt(0.5)) <= 1e-15);
    CHECK(m.scheme.subsets == std::vector<std::vector<std::string>>{{"D1"}, {"D2"}});
}

TEST_CASE("coupled atom examples") {
    const ModelInstance dark = build_coupled_atoms({0.0, 0.0, 1.0, 0.0});
    const ComplexMatrix rho = rho_ss(dark);
    CHECK(std::abs(rho(0, 0) - 1.0) <= 1e-12);
    const CumulantTable c = cumulants_fd(dark.model, dark.scheme);
    CHECK(std::abs(c.kappa10) <= 1e-12);
    CHECK(std::abs(c.kappa01) <= 1e-12);
    CHECK(total_emission_rate(dark, rho) <= 1e-12);

    const ModelInstance free = build_coupled_atoms({0.5, 0.0, 1.0, 0.0});
    const CumulantTable f = cumulants_fd(free.model, free.scheme);
    CHECK(std::abs(f.kappa10 - 1.0 / 6.0) <= 1e-6);
    CHECK(std::abs(f.kappa01 - 1.0 / 6.0) <= 1e-6);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(build_driven_qubit({0.5, 0.0, 0.0}), InvalidArgument);
    CHECK_THROWS_AS(build_driven_qubit({0.5, 1.0, -0.1}), InvalidArgument);
    CHECK_THROWS_AS(build_coupled_atoms({0.5, -0.1, 1.0, 0.0}), InvalidArgument);
    CHECK_THROWS_AS(build_coupled_atoms({-0.5, 0.1, 1.0, 0.0}), InvalidArgument);
    CHECK_THROWS_AS(build_coupled_atoms({0.5, 0.1, 1.0, std::nan("")}), InvalidArgument);
    CHECK_THROWS_AS(build_circuit_atoms({0.5, 1.0, 1.0, 0.1, 2.0, 0.0}), InvalidArgument);
    CHECK_THROWS_AS(build_circuit_atoms({0.5, 1.0, 1.0, 0.1, -0.1, 0.0}), InvalidArgument);
    CHECK_THROWS_AS(build_circuit_atoms({0.5, 1.0, 0.0, 0.1, 0.3, 0.0}), InvalidArgument);
    CHECK_NOTHROW(build_circuit_atoms({0.5, 1.0, 1.0, 0.1, kPi / 2, 0.0}));
}

TEST_CASE("identity circuit") {
    const ModelInstance m = build_circuit_atoms({0.5, 1.3, 0.7, 0.1, 0.0, 0.0});
    const SiteSpec two{2, 2};
    CHECK(frobenius_distance(m.model.jump("J1").op, std::sqrt(1.3) * kron_embed(sigma_minus(), 1, two)) <= 1e-15);
    CHECK(frobenius_distance(m.model.jump("J2").op, std::sqrt(0.7) * kron_embed(sigma_minus(), 2, two)) <= 1e-15);
    CHECK(build_circuit_atoms({0.5, 1.0, 1.0, 0.1, kPi / 6, 0.0}).model.jumps.size() == 4);
}

TEST_CASE("beam splitter conserves the total jump operator") {
    const SiteSpec two{2, 2};
    const double g1 = 1.3, g2 = 0.7;
    const ComplexMatrix expected = g1 * kron_embed(sigma_plus() * sigma_minus(), 1, two)
                                   + g2 * kron_embed(sigma_plus() * sigma_minus(), 2, two);
    for (double zeta : {0.0, 0.3, kPi / 4, 1.2, kPi / 2}) {
        for (double delta : {0.0, 1.0, kPi, 4.0}) {
            const ModelInstance m = build_circuit_atoms({0.5, g1, g2, 0.1, zeta, delta});
            CHECK(frobenius_distance(total_jump_operator(m), expected) <= 1e-12);
        }
    }
}

TEST_CASE("circuit sum rule on the steady state") {
    const ModelInstance reference = build_circuit_atoms({0.5, 1.0, 1.0, 0.1, 0.0, 0.0});
    const double total = total_emission_rate(reference, rho_ss(reference));
    for (int a = 0; a <= 6; ++a) {
        for (int b = 0; b <= 6; ++b) {
            const double zeta = 0.5 * kPi * a / 6.0;
            const double delta = kPi * b / 6.0;
            const ModelInstance m = build_circuit_atoms({0.5, 1.0, 1.0, 0.1, zeta, delta});
            CHECK(std::abs(total_emission_rate(m, rho_ss(m)) - total) <= 1e-8);
        }
    }
    const std::vector<double> split = first_cumulants_analytic(reference.model, reference.scheme);
    const ModelInstance mixed = build_circuit_atoms({0.5, 1.0, 1.0, 0.1, 0.8, 2.0});
    const std::vector<double> split2 = first_cumulants_analytic(mixed.model, mixed.scheme);
    CHECK(std::abs(split[0] + split[1] - split2[0] - split2[1]) <= 1e-8);
}

TEST_CASE("balanced circuit splits light evenly") {
    // The channel rates differ by -2 Im<a1^dag a2>, which vanishes for real
    // coherences, i.e. with no phase shift or a shift of pi.
    for (double delta : {0.0, kPi}) {
        const ModelInstance m = build_circuit_atoms({0.5, 1.0, 1.0, 0.1, kPi / 4, delta});
        const std::vector<double> rates = subset_emission_rates(m, rho_ss(m));
        CHECK(std::abs(rates[0] - rates[1]) <= 1e-9);
    }
    for (double delta : {0.0, 0.7, 2.0}) {
        const ModelInstance m = build_circuit_atoms({0.5, 1.0, 1.0, 0.1, kPi / 4, delta});
        CHECK(m3_direct(cumulants_fd(m.model, m.scheme)) >= -1e-9);
    }
    CHECK(CircuitParams{0.5, 1.0, 1.0, 0.1, kPi / 4, 0.0}.reflectivity() == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("circuit witness landscape") {
    // Zero at total transmission and total reflection (independent channels),
    // most negative at the balanced splitter with no phase shift.
    for (double delta : {0.0, 1.0, 2.5}) {
        CHECK(circuit_witness(0.0, delta) >= -1e-9);
        CHECK(circuit_witness(1.0, delta) >= -1e-9);
    }
    double best = 1e300;
    std::pair<double, double> where;
    for (double r : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        for (double delta : {0.0, kPi / 4, kPi / 2}) {
            const double w = circuit_witness(r, delta);
            if (w < best) {
                best = w;
                where = {r, delta};
            }
        }
    }
    CHECK(best < 0.0);
    CHECK(where.first == 0.5);
    CHECK(where.second == 0.0);
}

TEST_CASE("exchange symmetry of identical coupled atoms") {
    const ModelInstance m = build_coupled_atoms({0.7, 0.2, 1.0, 0.05});
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 10; ++k) {
        const std::vector<double> a{u(rng), u(rng)};
        const std::vector<double> b{a[1], a[0]};
        CHECK(std::abs(scgf(m.model, m.scheme, a) - scgf(m.model, m.scheme, b)) <= 1e-10);
    }
}

TEST_CASE("uncoupled atoms have no cross-correlation") {
    for (double gamma_phi : {0.0, 0.2, 1.5}) {
        const ModelInstance m = build_coupled_atoms({0.8, 0.0, 1.0, gamma_phi});
        CHECK(std::abs(cumulants_fd(m.model, m.scheme).kappa11) <= 1e-8);
    }
}

TEST_CASE("witness is continuous under grid refinement") {
    const auto w = [](double gamma_phi) {
        const ModelInstance m = build_coupled_atoms({1.0, 0.1, 1.0, gamma_phi});
        return m3_appendix(cumulants_fd(m.model, m.scheme));
    };
    const int n = 10;
    std::vector<double> coarse(n + 1);
    for (int k = 0; k <= n; ++k) coarse[static_cast<std::size_t>(k)] = w(1.0 * k / n);
    for (int k = 0; k < n; ++k) {
        const double a = coarse[static_cast<std::size_t>(k)];
        const double b = coarse[static_cast<std::size_t>(k + 1)];
        const double mid = w((k + 0.5) / n);
        CHECK(std::abs(mid - 0.5 * (a + b)) <= 10.0 * std::abs(b - a) + 1e-10);
    }
}

TEST_CASE("appendix witness along the dephasing line changes sign once") {
    // Omega = 0.5, J = 0.1: negative at weak dephasing, nonnegative once the
    // dephasing rate passes a threshold, on gamma_phi in [0, 2].
    const int n = 41;
    std::vector<double> w(n);
    for (int k = 0; k < n; ++k) {
        const ModelInstance m = build_coupled_atoms({0.5, 0.1, 1.0, 2.0 * k / (n - 1)});
        w[static_cast<std::size_t>(k)] = m3_appendix(cumulants_fd(m.model, m.scheme));
    }
    CAPTURE(w.front());
    CAPTURE(w.back());
    CHECK(w.front() < -1e-9);
    CHECK(w.back() >= -1e-9);
    int sign_changes = 0;
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
        if ((w[k] < -1e-9) != (w[k + 1] < -1e-9)) ++sign_changes;
    }
    CHECK(sign_changes == 1);
}
