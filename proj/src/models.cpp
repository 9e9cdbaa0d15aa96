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

#include "fcs/models.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fcs/errors.hpp"

namespace fcs {

namespace {

constexpr SiteSpec kTwoQubits{2, 2};

void require(bool ok, const std::string& what) {
    if (!ok) throw InvalidArgument(what);
}

bool finite_all(std::initializer_list<double> xs) {
    for (double x : xs) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

ComplexMatrix drive(double omega) {
    ComplexMatrix h = ComplexMatrix::Zero(4, 4);
    for (std::size_t site = 1; site <= 2; ++site) {
        h += 0.5 * omega * kron_embed(sigma_x(), site, kTwoQubits);
    }
    return h;
}

void add_dephasing(Lindbladian& model, double gamma_phi) {
    for (std::size_t site = 1; site <= 2; ++site) {
        model.jumps.push_back({"phi" + std::to_string(site),
                               std::sqrt(gamma_phi) * kron_embed(sigma_z(), site, kTwoQubits)});
    }
}

}  // namespace

double CircuitParams::reflectivity() const {
    const double s = std::sin(zeta);
    return s * s;
}

ModelInstance build_driven_qubit(const DrivenQubitParams& p) {
    require(finite_all({p.omega, p.gamma, p.gamma_phi}), "driven qubit: parameters must be finite");
    require(p.gamma > 0.0, "driven qubit: gamma must be > 0");
    require(p.gamma_phi >= 0.0, "driven qubit: gamma_phi must be >= 0");
    require(p.omega >= 0.0, "driven qubit: omega must be >= 0");

    ModelInstance out;
    out.model.hamiltonian = 0.5 * p.omega * sigma_x();
    out.model.jumps.push_back({"D1", std::sqrt(p.gamma) * sigma_minus()});
    if (p.gamma_phi > 0.0) out.model.jumps.push_back({"phi1", std::sqrt(p.gamma_phi) * sigma_z()});
    out.scheme.subsets = {{"D1"}};
    return out;
}

ModelInstance build_coupled_atoms(const CoupledAtomsParams& p) {
    require(finite_all({p.omega, p.j, p.gamma, p.gamma_phi}), "coupled atoms: parameters must be finite");
    require(p.gamma > 0.0, "coupled atoms: gamma must be > 0");
    require(p.gamma_phi >= 0.0, "coupled atoms: gamma_phi must be >= 0");
    require(p.omega >= 0.0, "coupled atoms: omega must be >= 0");
    require(p.j >= 0.0, "coupled atoms: j must be >= 0");

    const ComplexMatrix sm1 = kron_embed(sigma_minus(), 1, kTwoQubits);
    const ComplexMatrix sm2 = kron_embed(sigma_minus(), 2, kTwoQubits);
    const ComplexMatrix hop = sm1.adjoint() * sm2;

    ModelInstance out;
    out.model.hamiltonian = drive(p.omega) + p.j * (hop + hop.adjoint());
    out.model.jumps.push_back({"D1", std::sqrt(p.gamma) * sm1});
    out.model.jumps.push_back({"D2", std::sqrt(p.gamma) * sm2});
    add_dephasing(out.model, p.gamma_phi);
    out.scheme.subsets = {{"D1"}, {"D2"}};
    return out;
}

ModelInstance build_circuit_atoms(const CircuitParams& p) {
    require(finite_all({p.omega, p.gamma1, p.gamma2, p.gamma_phi, p.zeta, p.delta}),
            "circuit: parameters must be finite");
    require(p.gamma1 > 0.0 && p.gamma2 > 0.0, "circuit: gamma1 and gamma2 must be > 0");
    require(p.gamma_phi >= 0.0, "circuit: gamma_phi must be >= 0");
    require(p.omega >= 0.0, "circuit: omega must be >= 0");
    require(p.zeta >= 0.0 && p.zeta <= std::numbers::pi / 2 + 1e-12, "circuit: zeta must lie in [0, pi/2]");

    const ComplexMatrix a1 = std::sqrt(p.gamma1) * kron_embed(sigma_minus(), 1, kTwoQubits);
    const ComplexMatrix a2 = std::polar(std::sqrt(p.gamma2), p.delta)
                             * kron_embed(sigma_minus(), 2, kTwoQubits);
    const double c = std::cos(p.zeta);
    const double s = std::sin(p.zeta);
    const Complex i(0.0, 1.0);

    ModelInstance out;
    out.model.hamiltonian = drive(p.omega);
    out.model.jumps.push_back({"J1", c * a1 + i * s * a2});
    out.model.jumps.push_back({"J2", i * s * a1 + c * a2});
    add_dephasing(out.model, p.gamma_phi);
    out.scheme.subsets = {{"J1"}, {"J2"}};
    return out;
}

std::vector<double> subset_emission_rates(const ModelInstance& m, const ComplexMatrix& rho) {
    std::vector<double> rates(m.scheme.size(), 0.0);
    for (std::size_t i = 0; i < m.scheme.size(); ++i) {
        for (const auto& label : m.scheme.subsets[i]) {
            const ComplexMatrix& l = m.model.jump(label).op;
            rates[i] += expectation(l.adjoint() * l, rho).real();
        }
    }
    return rates;
}

double total_emission_rate(const ModelInstance& m, const ComplexMatrix& rho) {
    double total = 0.0;
    for (double r : subset_emission_rates(m, rho)) total += r;
    return total;
}

}  // namespace fcs
