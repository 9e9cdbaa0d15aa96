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

#include <sstream>

#include "fcs/cli/experiment.hpp"
#include "fcs/errors.hpp"

using namespace fcs;
using namespace fcs::cli;

namespace {

SweepSpec small_sweep() {
    SweepSpec s;
    s.model = {ModelKind::CoupledAtoms, {{"j", 0.1}}};
    s.axis1 = {"omega", 0.2, 1.0, 3, false};
    s.axis2 = {"gamma_phi", 0.0, 0.5, 2, false};
    s.variant = VariantSelection::parse("both");
    return s;
}

std::string csv_of(const SweepResult& r) {
    std::ostringstream os;
    write_sweep_csv(os, r);
    return os.str();
}

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

ValidateSpec qubit_validation() {
    ValidateSpec v;
    v.model = {ModelKind::DrivenQubit, {}};
    v.trajectory_model = v.model;
    return v;
}

}  // namespace

TEST_CASE("one-point axes give a single row") {
    SweepSpec s;
    s.model = {ModelKind::CoupledAtoms, {{"gamma_phi", 0.2}}};
    s.axis1 = {"omega", 0.7, 0.7, 1, false};
    s.axis2 = {"j", 0.0, 0.0, 1, false};
    const SweepResult r = run_sweep(s);
    REQUIRE(r.points.size() == 1);
    CHECK(r.points[0].status == "ok");
    CHECK(std::abs(r.points[0].report.cumulants.kappa11) <= 1e-8);
    CHECK(count(csv_of(r), "\n") == 3);
}

TEST_CASE("sweep grid and CSV layout") {
    const SweepResult r = run_sweep(small_sweep());
    REQUIRE(r.points.size() == 6);
    CHECK(r.failures == 0);
    CHECK(r.points[3].i == 1);
    CHECK(r.points[3].j == 1);
    CHECK(r.points[3].axis1 == doctest::Approx(0.6));
    CHECK(r.points[3].axis2 == 0.5);
    for (const auto& p : r.points) {
        CHECK(p.report.m3_direct >= -1e-9);
        CHECK(p.total_emission > 0.0);
        CHECK(r.value(p, WitnessVariant::Direct) == p.report.m3_direct);
    }

    const std::string csv = csv_of(r);
    CHECK(csv.rfind("# fcs-witness sweep csv v1; model=coupled_atoms; axis1=omega; axis2=gamma_phi; variant=both\n"
                    "i,j,axis1,axis2,kappa10,kappa01,kappa20,kappa11,kappa02,m2,m3_direct,m3_appendix,"
                    "total_emission,status\n",
                    0)
          == 0);
    CHECK(count(csv, "\n") == 8);
    CHECK(count(csv, ",ok\n") == 6);
}

TEST_CASE("sweep output does not depend on the thread count") {
    SweepSpec s = small_sweep();
    const std::string one = csv_of(run_sweep(s));
    s.threads = 3;
    CHECK(csv_of(run_sweep(s)) == one);
}

TEST_CASE("failed grid points are flagged and the run continues") {
    SweepSpec s = small_sweep();
    s.axis1 = {"omega", -1.0, 1.0, 3, false};
    const SweepResult r = run_sweep(s);
    CHECK(r.failures == 2);
    CHECK(r.failure_fraction() == doctest::Approx(1.0 / 3.0));
    CHECK(r.points[0].status == "config_error");
    CHECK(std::isnan(r.value(r.points[0], WitnessVariant::Appendix)));
    CHECK(r.points[5].status == "ok");
    const std::string csv = csv_of(r);
    CHECK(count(csv, ",config_error\n") == 2);
    CHECK(csv.find("nan,nan") != std::string::npos);
}

TEST_CASE("heatmap") {
    const SweepResult r = run_sweep(small_sweep());
    std::ostringstream os;
    write_heatmap_svg(os, r, WitnessVariant::Appendix);
    const std::string svg = os.str();
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(count(svg, "<rect") == 6 + 1 + 50);
}

TEST_CASE("validation passes for a consistent qubit") {
    const ValidationReport r = run_validate(qubit_validation());
    CHECK(r.pass);
    REQUIRE(r.entries.size() == 2);
    CHECK(r.entries[0].quantity == "kappa1[1]");
    CHECK(std::abs(r.entries[0].spectral - r.entries[0].empirical) <= 3.0 * r.entries[0].standard_error);
    CHECK(r.to_json()["result"] == "PASS");
}

TEST_CASE("validation catches a mismatched model") {
    ValidateSpec v = qubit_validation();
    v.trajectory_model.params["gamma"] = 1.5;
    const ValidationReport r = run_validate(v);
    CHECK_FALSE(r.pass);
    CHECK_FALSE(r.entries[0].pass);
    CHECK(r.to_json()["result"] == "FAIL");
}

TEST_CASE("validation of a dark model") {
    ValidateSpec v;
    v.model = {ModelKind::CoupledAtoms, {{"omega", 0.0}, {"j", 0.0}, {"gamma_phi", 0.0}}};
    v.trajectory_model = v.model;
    v.trajectories.n_traj = 200;
    v.trajectories.t_final = 50.0;
    const ValidationReport r = run_validate(v);
    CHECK(r.pass);
    CHECK(r.entries.size() == 5);
    for (const auto& e : r.entries) {
        CHECK(e.empirical == 0.0);
        CHECK(std::abs(e.spectral) <= 1e-9);
    }
}

TEST_CASE("validation requires matching counting schemes") {
    ValidateSpec v = qubit_validation();
    v.trajectory_model = {ModelKind::CoupledAtoms, {}};
    CHECK_THROWS_AS(run_validate(v), ConfigError);
}

TEST_CASE("formatting helpers") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(std::nan("")) == "nan");
    CHECK(format_number(1.0 / 3.0) == "0.3333333333333333");
    CHECK(error_code(DegenerateSteadyState(2)) == "degenerate_steady_state");
    CHECK(error_code(BracketTooSmall("x")) == "bracket_too_small");
    CHECK(error_code(SolverError("x", 1.0)) == "solver_error");
    CHECK(error_code(std::runtime_error("x")) == "error");

    CumulantTable c;
    c.kappa10 = 0.2;
    const nlohmann::json w = witness_json(evaluate_witness(c));
    CHECK(w["moment_index"].dump() == "[[0,0],[1,0],[0,1]]");
    CHECK(w["scaling_exponent"] == 4);
}
