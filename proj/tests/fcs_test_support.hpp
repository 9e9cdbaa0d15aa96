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

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "fcs/algebra.hpp"
#include "fcs/ldt.hpp"
#include "fcs/models.hpp"

namespace fcs::test {

struct FleetEntry {
    std::string name;
    ModelInstance instance;
};

/// Models every property test runs over: one qubit with and without
/// dephasing, interacting and free atom pairs, and an asymmetric circuit.
inline std::vector<FleetEntry> fleet() {
    return {
        {"driven_qubit", build_driven_qubit({0.5, 1.0, 0.0})},
        {"dephased_qubit", build_driven_qubit({0.8, 1.0, 0.2})},
        {"coupled_atoms", build_coupled_atoms({0.5, 0.1, 1.0, 0.1})},
        {"free_atoms", build_coupled_atoms({1.2, 0.0, 1.0, 0.3})},
        {"strong_coupling", build_coupled_atoms({1.5, 0.5, 1.0, 0.0})},
        {"circuit", build_circuit_atoms({0.5, 1.0, 1.0, 0.1, 0.6, 1.1})},
        {"circuit_asym", build_circuit_atoms({0.7, 1.0, 0.6, 0.05, 1.2, 2.5})},
    };
}

inline ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t d) {
    std::normal_distribution<double> n;
    ComplexMatrix m(d, d);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = Complex(n(rng), n(rng));
    }
    return m;
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, std::size_t d) {
    const ComplexMatrix a = random_matrix(rng, d);
    return (a + a.adjoint()) / 2.0;
}

/// Random full-rank density matrix A A^dag / Tr.
inline ComplexMatrix random_density(std::mt19937_64& rng, std::size_t d) {
    const ComplexMatrix a = random_matrix(rng, d);
    const ComplexMatrix rho = a * a.adjoint();
    return rho / rho.trace();
}

inline CumulantTable random_cumulants(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CumulantTable c;
    c.kappa10 = std::abs(u(rng));
    c.kappa01 = std::abs(u(rng));
    c.kappa20 = u(rng);
    c.kappa11 = u(rng);
    c.kappa02 = u(rng);
    return c;
}

}  // namespace fcs::test
