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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fcs/errors.hpp"
#include "fcs/models.hpp"
#include "fcs/trajectories.hpp"
#include "fcs/witness.hpp"

namespace fcs::cli {

/// Malformed or inconsistent run configuration (CLI exit status 2).
class ConfigError : public Error {
public:
    using Error::Error;
};

enum class ModelKind { DrivenQubit, CoupledAtoms, Circuit };

/// Model kind plus named parameters; unspecified parameters take the
/// defaults of the corresponding *Params struct.
struct ModelSpec {
    ModelKind kind = ModelKind::CoupledAtoms;
    std::map<std::string, double> params;

    /// Throws ConfigError for unknown parameter names and propagates model
    /// invariant violations as ConfigError. Circuit accepts `reflectivity`
    /// in place of `zeta` (zeta = asin(sqrt(R))).
    ModelInstance build() const;

    static std::vector<std::string> parameter_names(ModelKind kind);
};

ModelKind parse_model_kind(const std::string& name);
std::string to_string(ModelKind kind);

struct AxisSpec {
    std::string param;
    double min = 0.0;
    double max = 0.0;
    std::size_t points = 2;
    bool log_scale = false;

    std::vector<double> values() const;
};

struct VariantSelection {
    bool appendix = true;
    bool direct = false;

    static VariantSelection parse(const std::string& name);
    std::string name() const;
    /// Witness drawn in the heatmap when both are selected: the appendix form.
    WitnessVariant primary() const { return appendix ? WitnessVariant::Appendix : WitnessVariant::Direct; }
};

struct SweepSpec {
    ModelSpec model;
    AxisSpec axis1;
    AxisSpec axis2;
    VariantSelection variant;
    double fd_step = kDefaultFdStep;
    std::size_t threads = 1;

    /// Axis names must be distinct parameters of the model kind; points >= 1
    /// (a one-point axis needs min == max).
    void validate() const;
};

struct RateFunctionSpec {
    std::size_t subset = 1;  ///< 1-based monitored subset counted on its own
    double x_min = 0.0;
    double x_max = 0.5;
    std::size_t points = 21;
    Bracket bracket;
};

struct ValidateSpec {
    ModelSpec model;
    /// Model the trajectories are sampled from; equals `model` unless the
    /// config overrides parameters in [trajectory_model].
    ModelSpec trajectory_model;
    TrajectoryConfig trajectories;
    double fd_step = kDefaultFdStep;
    bool dump_samples = false;
};

/// Everything a config file can specify. Sections: [run], [model], [axis1],
/// [axis2], [scgf], [rate_function], [trajectories], [trajectory_model].
struct RunConfig {
    ModelSpec model;
    std::uint64_t seed = 1;
    std::size_t threads = 1;
    double fd_step = kDefaultFdStep;
    VariantSelection variant;
    bool svg = false;
    std::optional<AxisSpec> axis1;
    std::optional<AxisSpec> axis2;
    std::vector<double> scgf_s;
    RateFunctionSpec rate;
    TrajectoryConfig trajectories;
    std::map<std::string, double> trajectory_overrides;
    bool dump_samples = false;

    SweepSpec sweep_spec() const;
    ValidateSpec validate_spec() const;
};

RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text);

}  // namespace fcs::cli
