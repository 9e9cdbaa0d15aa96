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

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fcs/cli/config.hpp"

namespace fcs::cli {

/// CLI exit statuses.
enum ExitCode : int {
    kExitOk = 0,
    kExitUnexpected = 1,
    kExitConfig = 2,
    kExitSolverBudget = 3,
    kExitValidation = 4,
};

/// Fraction of failed grid points above which a sweep exits with kExitSolverBudget.
inline constexpr double kMaxFailureFraction = 0.10;

inline constexpr const char* kSweepCsvSchema = "fcs-witness sweep csv v1";

struct SweepPoint {
    std::size_t i = 0;
    std::size_t j = 0;
    double axis1 = 0.0;
    double axis2 = 0.0;
    WitnessReport report;
    double total_emission = 0.0;
    std::string status = "ok";  ///< "ok" or an error code
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepPoint> points;  ///< axis1-major grid order
    std::size_t failures = 0;

    double failure_fraction() const;
    /// Witness value of the selected variant (NaN for failed points).
    double value(const SweepPoint& p, WitnessVariant v) const;
};

/// Model at one grid point: `base` with the two axis parameters replaced.
ModelSpec grid_model(const SweepSpec& spec, double v1, double v2);

/// Evaluates cumulants and witnesses over the grid. Failed points are kept
/// with a status code; the caller decides about the failure budget.
SweepResult run_sweep(const SweepSpec& spec);

void write_sweep_csv(std::ostream& os, const SweepResult& result);
void write_heatmap_svg(std::ostream& os, const SweepResult& result, WitnessVariant variant);

struct ValidationEntry {
    std::string quantity;
    double spectral = 0.0;
    double empirical = 0.0;
    double standard_error = 0.0;
    bool pass = false;
};

struct ValidationReport {
    std::vector<ValidationEntry> entries;
    TrajectoryRun run;
    bool pass = false;

    nlohmann::json to_json() const;
};

/// Absolute slack added to the 3 SE rule so that exactly-zero statistics
/// (dark models) compare equal to finite-difference noise.
inline constexpr double kValidationAbsSlack = 1e-9;

/// Spectral (analytic means, finite-difference second cumulants) against
/// Monte Carlo counts; each quantity must agree within 3 standard errors.
ValidationReport run_validate(const ValidateSpec& spec);

nlohmann::json witness_json(const WitnessReport& report);
nlohmann::json cumulants_json(const CumulantTable& c);

/// Stable text for a double in CSV/JSON-adjacent outputs ("nan" for NaN).
std::string format_number(double v);

/// Short machine-readable code for an exception raised while evaluating a point.
std::string error_code(const std::exception& e);

}  // namespace fcs::cli
