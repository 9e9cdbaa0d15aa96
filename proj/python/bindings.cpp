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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fcs/errors.hpp"
#include "fcs/ldt.hpp"
#include "fcs/models.hpp"
#include "fcs/trajectories.hpp"
#include "fcs/witness.hpp"

namespace py = pybind11;
using namespace fcs;

namespace {

Eigen::MatrixXd counts_matrix(const std::vector<CountSample>& samples) {
    const auto m = samples.empty() ? 0 : static_cast<Eigen::Index>(samples.front().counts.size());
    Eigen::MatrixXd out(static_cast<Eigen::Index>(samples.size()), m);
    for (std::size_t r = 0; r < samples.size(); ++r) {
        for (Eigen::Index i = 0; i < m; ++i) {
            out(static_cast<Eigen::Index>(r), i) = static_cast<double>(samples[r].counts[static_cast<std::size_t>(i)]);
        }
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Tilted-Liouvillian counting statistics and moment-matrix witnesses";

    py::register_exception<fcs::Error>(m, "FcsError", PyExc_RuntimeError);

    py::class_<DrivenQubitParams>(m, "DrivenQubitParams")
        .def(py::init<>())
        .def(py::init([](double omega, double gamma, double gamma_phi) {
                 return DrivenQubitParams{omega, gamma, gamma_phi};
             }),
             py::arg("omega") = 0.5, py::arg("gamma") = 1.0, py::arg("gamma_phi") = 0.0)
        .def_readwrite("omega", &DrivenQubitParams::omega)
        .def_readwrite("gamma", &DrivenQubitParams::gamma)
        .def_readwrite("gamma_phi", &DrivenQubitParams::gamma_phi);

    py::class_<CoupledAtomsParams>(m, "CoupledAtomsParams")
        .def(py::init<>())
        .def(py::init([](double omega, double j, double gamma, double gamma_phi) {
                 return CoupledAtomsParams{omega, j, gamma, gamma_phi};
             }),
             py::arg("omega") = 0.5, py::arg("j") = 0.1, py::arg("gamma") = 1.0, py::arg("gamma_phi") = 0.1)
        .def_readwrite("omega", &CoupledAtomsParams::omega)
        .def_readwrite("j", &CoupledAtomsParams::j)
        .def_readwrite("gamma", &CoupledAtomsParams::gamma)
        .def_readwrite("gamma_phi", &CoupledAtomsParams::gamma_phi);

    py::class_<CircuitParams>(m, "CircuitParams")
        .def(py::init<>())
        .def(py::init([](double omega, double gamma1, double gamma2, double gamma_phi, double zeta, double delta) {
                 return CircuitParams{omega, gamma1, gamma2, gamma_phi, zeta, delta};
             }),
             py::arg("omega") = 0.5, py::arg("gamma1") = 1.0, py::arg("gamma2") = 1.0, py::arg("gamma_phi") = 0.1,
             py::arg("zeta") = 0.0, py::arg("delta") = 0.0)
        .def_readwrite("omega", &CircuitParams::omega)
        .def_readwrite("gamma1", &CircuitParams::gamma1)
        .def_readwrite("gamma2", &CircuitParams::gamma2)
        .def_readwrite("gamma_phi", &CircuitParams::gamma_phi)
        .def_readwrite("zeta", &CircuitParams::zeta)
        .def_readwrite("delta", &CircuitParams::delta)
        .def_property_readonly("reflectivity", &CircuitParams::reflectivity);

    py::class_<ModelInstance>(m, "ModelInstance")
        .def_property_readonly("hamiltonian", [](const ModelInstance& mi) { return mi.model.hamiltonian; })
        .def_property_readonly("jumps",
                               [](const ModelInstance& mi) {
                                   std::vector<std::pair<std::string, ComplexMatrix>> out;
                                   for (const auto& j : mi.model.jumps) out.emplace_back(j.label, j.op);
                                   return out;
                               })
        .def_property_readonly("subsets", [](const ModelInstance& mi) { return mi.scheme.subsets; });

    m.def("build_driven_qubit", &build_driven_qubit, py::arg("params"));
    m.def("build_coupled_atoms", &build_coupled_atoms, py::arg("params"));
    m.def("build_circuit_atoms", &build_circuit_atoms, py::arg("params"));

    py::class_<CumulantTable>(m, "CumulantTable")
        .def(py::init<>())
        .def(py::init([](double k10, double k01, double k20, double k11, double k02) {
                 CumulantTable c;
                 c.kappa10 = k10;
                 c.kappa01 = k01;
                 c.kappa20 = k20;
                 c.kappa11 = k11;
                 c.kappa02 = k02;
                 return c;
             }),
             py::arg("kappa10") = 0.0, py::arg("kappa01") = 0.0, py::arg("kappa20") = 0.0,
             py::arg("kappa11") = 0.0, py::arg("kappa02") = 0.0)
        .def_readwrite("kappa10", &CumulantTable::kappa10)
        .def_readwrite("kappa01", &CumulantTable::kappa01)
        .def_readwrite("kappa20", &CumulantTable::kappa20)
        .def_readwrite("kappa11", &CumulantTable::kappa11)
        .def_readwrite("kappa02", &CumulantTable::kappa02)
        .def_readonly("convention", &CumulantTable::convention)
        .def("__repr__", [](const CumulantTable& c) {
            return "CumulantTable(kappa10=" + std::to_string(c.kappa10) + ", kappa01=" + std::to_string(c.kappa01)
                   + ", kappa20=" + std::to_string(c.kappa20) + ", kappa11=" + std::to_string(c.kappa11)
                   + ", kappa02=" + std::to_string(c.kappa02) + ")";
        });

    py::class_<WitnessReport>(m, "WitnessReport")
        .def_readonly("m2", &WitnessReport::m2)
        .def_readonly("m3_direct", &WitnessReport::m3_direct)
        .def_readonly("m3_appendix", &WitnessReport::m3_appendix)
        .def_readonly("cumulants", &WitnessReport::cumulants)
        .def_readonly("scaling_exponent", &WitnessReport::scaling_exponent);

    py::class_<RateFunctionSample>(m, "RateFunctionSample")
        .def_readonly("x", &RateFunctionSample::x)
        .def_readonly("phi", &RateFunctionSample::phi)
        .def_readonly("argmin_s", &RateFunctionSample::argmin_s)
        .def_readonly("at_boundary", &RateFunctionSample::at_boundary);

    m.def(
        "scgf",
        [](const ModelInstance& mi, const std::vector<double>& s) { return scgf(mi.model, mi.scheme, s); },
        py::arg("model"), py::arg("s"), "Leading real eigenvalue of the tilted generator.");
    m.def(
        "cumulants_fd",
        [](const ModelInstance& mi, double step) { return cumulants_fd(mi.model, mi.scheme, step); },
        py::arg("model"), py::arg("step") = kDefaultFdStep);
    m.def(
        "first_cumulants_analytic",
        [](const ModelInstance& mi) { return first_cumulants_analytic(mi.model, mi.scheme); }, py::arg("model"));
    m.def(
        "steady_state", [](const ModelInstance& mi) { return steady_state(build_liouvillian(mi.model)); },
        py::arg("model"));
    m.def("total_emission_rate", &total_emission_rate, py::arg("model"), py::arg("rho"));
    m.def(
        "rate_function",
        [](const ModelInstance& mi, double x, double s_lo, double s_hi) {
            return rate_function(mi.model, mi.scheme, x, Bracket{s_lo, s_hi});
        },
        py::arg("model"), py::arg("x"), py::arg("s_lo") = -kMaxCountingField, py::arg("s_hi") = kMaxCountingField);

    m.def("cumulants_to_moments", [](const CumulantTable& c) {
        const ScaledMoments s = cumulants_to_moments(c);
        return py::dict(py::arg("m10") = s.m10, py::arg("m01") = s.m01, py::arg("m20") = s.m20,
                        py::arg("m11") = s.m11, py::arg("m02") = s.m02);
    });
    m.def(
        "moment_matrix", [](const CumulantTable& c, int order) { return moment_matrix(c, order).entries; },
        py::arg("cumulants"), py::arg("order") = 3);
    m.def("evaluate_witness", &evaluate_witness, py::arg("cumulants"));
    m.def("m3_direct", &m3_direct, py::arg("cumulants"));
    m.def("m3_appendix", py::overload_cast<const CumulantTable&>(&m3_appendix), py::arg("cumulants"));

    m.def(
        "simulate_counts",
        [](const ModelInstance& mi, double t_final, std::size_t n_traj, std::uint64_t seed, double t_warmup,
           std::size_t threads) {
            TrajectoryConfig cfg;
            cfg.t_final = t_final;
            cfg.n_traj = n_traj;
            cfg.seed = seed;
            cfg.t_warmup = t_warmup;
            cfg.threads = threads;
            TrajectoryRun run;
            {
                py::gil_scoped_release release;
                run = simulate_counts(mi.model, mi.scheme, cfg);
            }
            return counts_matrix(run.samples);
        },
        py::arg("model"), py::arg("t_final"), py::arg("n_traj"), py::arg("seed") = 1, py::arg("t_warmup") = 20.0,
        py::arg("threads") = 1, "Monitored click counts, one row per trajectory.");
    m.def(
        "empirical_stats",
        [](const Eigen::MatrixXd& counts, double t_final) {
            std::vector<CountSample> samples(static_cast<std::size_t>(counts.rows()));
            for (Eigen::Index r = 0; r < counts.rows(); ++r) {
                for (Eigen::Index i = 0; i < counts.cols(); ++i) {
                    samples[static_cast<std::size_t>(r)].counts.push_back(
                        static_cast<std::uint64_t>(counts(r, i)));
                }
            }
            const EmpiricalStats s = empirical_stats(samples, t_final);
            return py::dict(py::arg("means") = s.means, py::arg("covariance") = s.covariance,
                            py::arg("se_means") = s.se_means, py::arg("se_covariance") = s.se_covariance);
        },
        py::arg("counts"), py::arg("t_final"));

    m.attr("__version__") = FCS_VERSION;
}
