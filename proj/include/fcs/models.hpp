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

#include <vector>

#include "fcs/liouville.hpp"

namespace fcs {

/// A Lindbladian together with the counting scheme its detectors realise.
struct ModelInstance {
    Lindbladian model;
    CountingScheme scheme;
};

/// Single resonantly driven two-level emitter, H = (omega/2) sigma_x.
/// Jumps: "D1" = sqrt(gamma) sigma-, plus "phi1" = sqrt(gamma_phi) sigma_z when gamma_phi > 0.
/// Scheme: {D1}.
struct DrivenQubitParams {
    double omega = 0.5;
    double gamma = 1.0;
    double gamma_phi = 0.0;
};

/// Two driven emitters with exchange coupling J (sigma+_1 sigma-_2 + h.c.).
struct CoupledAtomsParams {
    double omega = 0.5;
    double j = 0.1;
    double gamma = 1.0;
    double gamma_phi = 0.1;
};

/// Two independent driven emitters whose outputs pass a phase shifter on
/// arm 2 (exp(i delta)) and then the beam splitter cos(zeta) 1 + i sin(zeta) sigma_x.
struct CircuitParams {
    double omega = 0.5;
    double gamma1 = 1.0;
    double gamma2 = 1.0;
    double gamma_phi = 0.1;
    double zeta = 0.0;   ///< radians, in [0, pi/2]
    double delta = 0.0;  ///< radians

    double reflectivity() const;
};

ModelInstance build_driven_qubit(const DrivenQubitParams& p);

/// Jumps "D1", "D2" (monitored, one subset each) and "phi1", "phi2"
/// (dephasing sqrt(gamma_phi) sigma_z, unmonitored).
ModelInstance build_coupled_atoms(const CoupledAtomsParams& p);

/// Jumps "J1", "J2" (beam-splitter outputs, monitored) and "phi1", "phi2".
ModelInstance build_circuit_atoms(const CircuitParams& p);

/// Sum over monitored jumps of Tr(L^dag L rho).
double total_emission_rate(const ModelInstance& m, const ComplexMatrix& rho);

/// Tr(L^dag L rho) summed within each monitored subset.
std::vector<double> subset_emission_rates(const ModelInstance& m, const ComplexMatrix& rho);

}  // namespace fcs
