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

#include "fcs/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace fcs::cli {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& allowed_keys() {
    static const std::map<std::string, std::set<std::string>> keys = {
        {"run", {"seed", "threads", "fd_step", "variant", "svg"}},
        {"model", {"kind", "omega", "j", "gamma", "gamma_phi", "gamma1", "gamma2", "zeta", "delta",
                   "reflectivity"}},
        {"axis1", {"param", "min", "max", "points", "scale"}},
        {"axis2", {"param", "min", "max", "points", "scale"}},
        {"scgf", {"s"}},
        {"rate_function", {"subset", "x_min", "x_max", "points", "s_min", "s_max"}},
        {"trajectories", {"t_final", "n_traj", "dt_max", "t_warmup", "initial", "dump_samples"}},
        {"trajectory_model", {"omega", "j", "gamma", "gamma_phi", "gamma1", "gamma2", "zeta", "delta",
                              "reflectivity"}},
    };
    return keys;
}

double to_double(const std::string& section, const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("[" + section + "] " + key + " = '" + text + "' is not a finite number");
    }
}

std::uint64_t to_unsigned(const std::string& section, const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        if (!text.empty() && text.front() == '-') throw std::invalid_argument(text);
        const unsigned long long v = std::stoull(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("[" + section + "] " + key + " = '" + text + "' is not a non-negative integer");
    }
}

bool to_bool(const std::string& section, const std::string& key, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw ConfigError("[" + section + "] " + key + " = '" + text + "' is not a boolean");
}

std::string trim(std::string s) {
    const auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
    s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
    s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
    return s;
}

AxisSpec parse_axis(const std::string& name, const pt::ptree& section) {
    AxisSpec axis;
    for (const auto& [key, node] : section) {
        const std::string value = trim(node.data());
        if (key == "param") axis.param = value;
        else if (key == "min") axis.min = to_double(name, key, value);
        else if (key == "max") axis.max = to_double(name, key, value);
        else if (key == "points") axis.points = to_unsigned(name, key, value);
        else if (key == "scale") {
            if (value != "linear" && value != "log") throw ConfigError("[" + name + "] scale must be linear or log");
            axis.log_scale = value == "log";
        }
    }
    if (axis.param.empty()) throw ConfigError("[" + name + "] needs a param");
    return axis;
}

}  // namespace

ModelKind parse_model_kind(const std::string& name) {
    if (name == "qubit" || name == "driven_qubit") return ModelKind::DrivenQubit;
    if (name == "coupled_atoms") return ModelKind::CoupledAtoms;
    if (name == "circuit") return ModelKind::Circuit;
    throw ConfigError("unknown model kind '" + name + "' (expected qubit, coupled_atoms or circuit)");
}

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::DrivenQubit: return "qubit";
        case ModelKind::CoupledAtoms: return "coupled_atoms";
        case ModelKind::Circuit: return "circuit";
    }
    return "?";
}

std::vector<std::string> ModelSpec::parameter_names(ModelKind kind) {
    switch (kind) {
        case ModelKind::DrivenQubit: return {"omega", "gamma", "gamma_phi"};
        case ModelKind::CoupledAtoms: return {"omega", "j", "gamma", "gamma_phi"};
        case ModelKind::Circuit:
            return {"omega", "gamma1", "gamma2", "gamma_phi", "zeta", "delta", "reflectivity"};
    }
    return {};
}

ModelInstance ModelSpec::build() const {
    const auto names = parameter_names(kind);
    for (const auto& [key, value] : params) {
        if (std::find(names.begin(), names.end(), key) == names.end()) {
            throw ConfigError("parameter '" + key + "' does not apply to model kind " + to_string(kind));
        }
    }
    auto get = [&](const std::string& key, double fallback) {
        const auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };
    try {
        switch (kind) {
            case ModelKind::DrivenQubit: {
                DrivenQubitParams p;
                p.omega = get("omega", p.omega);
                p.gamma = get("gamma", p.gamma);
                p.gamma_phi = get("gamma_phi", p.gamma_phi);
                return build_driven_qubit(p);
            }
            case ModelKind::CoupledAtoms: {
                CoupledAtomsParams p;
                p.omega = get("omega", p.omega);
                p.j = get("j", p.j);
                p.gamma = get("gamma", p.gamma);
                p.gamma_phi = get("gamma_phi", p.gamma_phi);
                return build_coupled_atoms(p);
            }
            case ModelKind::Circuit: {
                CircuitParams p;
                p.omega = get("omega", p.omega);
                p.gamma1 = get("gamma1", p.gamma1);
                p.gamma2 = get("gamma2", p.gamma2);
                p.gamma_phi = get("gamma_phi", p.gamma_phi);
                p.delta = get("delta", p.delta);
                p.zeta = get("zeta", p.zeta);
                if (params.count("reflectivity")) {
                    if (params.count("zeta")) throw ConfigError("give either zeta or reflectivity, not both");
                    const double r = params.at("reflectivity");
                    if (r < 0.0 || r > 1.0) throw ConfigError("reflectivity must lie in [0, 1]");
                    p.zeta = std::asin(std::sqrt(r));
                }
                return build_circuit_atoms(p);
            }
        }
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    throw ConfigError("unhandled model kind");
}

std::vector<double> AxisSpec::values() const {
    std::vector<double> out(points);
    if (points == 1) {
        out[0] = min;
        return out;
    }
    for (std::size_t i = 0; i < points; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(points - 1);
        out[i] = log_scale ? min * std::pow(max / min, f) : min + f * (max - min);
    }
    out.back() = max;
    return out;
}

VariantSelection VariantSelection::parse(const std::string& name) {
    if (name == "appendix") return {true, false};
    if (name == "direct") return {false, true};
    if (name == "both") return {true, true};
    throw ConfigError("variant must be appendix, direct or both (got '" + name + "')");
}

std::string VariantSelection::name() const {
    if (appendix && direct) return "both";
    return appendix ? "appendix" : "direct";
}

void SweepSpec::validate() const {
    const auto names = ModelSpec::parameter_names(model.kind);
    for (const AxisSpec* axis : {&axis1, &axis2}) {
        if (std::find(names.begin(), names.end(), axis->param) == names.end()) {
            throw ConfigError("axis parameter '" + axis->param + "' is not valid for " + to_string(model.kind));
        }
        if (axis->points == 0) throw ConfigError("axis '" + axis->param + "' needs at least one point");
        if (axis->points == 1 && axis->min != axis->max) {
            throw ConfigError("one-point axis '" + axis->param + "' needs min == max");
        }
        if (axis->points >= 2 && !(axis->min < axis->max)) {
            throw ConfigError("axis '" + axis->param + "' needs min < max");
        }
        if (axis->log_scale && !(axis->min > 0.0)) throw ConfigError("log axis needs min > 0");
    }
    if (axis1.param == axis2.param) throw ConfigError("sweep axes must be distinct parameters");
    const auto is_angle = [](const std::string& p) { return p == "zeta" || p == "reflectivity"; };
    if (is_angle(axis1.param) && is_angle(axis2.param)) {
        throw ConfigError("zeta and reflectivity cannot both be swept");
    }
    if (threads == 0) throw ConfigError("threads must be >= 1");
}

SweepSpec RunConfig::sweep_spec() const {
    if (!axis1 || !axis2) throw ConfigError("sweep needs [axis1] and [axis2] sections");
    SweepSpec spec;
    spec.model = model;
    spec.axis1 = *axis1;
    spec.axis2 = *axis2;
    spec.variant = variant;
    spec.fd_step = fd_step;
    spec.threads = threads;
    spec.validate();
    return spec;
}

ValidateSpec RunConfig::validate_spec() const {
    ValidateSpec spec;
    spec.model = model;
    spec.trajectory_model = model;
    for (const auto& [key, value] : trajectory_overrides) {
        if (key == "zeta") spec.trajectory_model.params.erase("reflectivity");
        if (key == "reflectivity") spec.trajectory_model.params.erase("zeta");
        spec.trajectory_model.params[key] = value;
    }
    spec.trajectories = trajectories;
    spec.trajectories.seed = seed;
    spec.trajectories.threads = threads;
    spec.fd_step = fd_step;
    spec.dump_samples = dump_samples;
    return spec;
}

RunConfig parse_config(const std::string& text) {
    // '#' comment lines in addition to the ';' lines read_ini already skips.
    std::string stripped;
    {
        std::istringstream lines(text);
        std::string line;
        while (std::getline(lines, line)) {
            const std::string t = trim(line);
            if (!t.empty() && t.front() == '#') continue;
            stripped += line;
            stripped += '\n';
        }
    }
    pt::ptree tree;
    try {
        std::istringstream in(stripped);
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }

    RunConfig cfg;
    bool have_kind = false;
    std::string initial = "ground";
    for (const auto& [section, body] : tree) {
        const auto allowed = allowed_keys().find(section);
        if (allowed == allowed_keys().end()) {
            throw ConfigError("unknown config section or top-level key '" + section + "'");
        }
        for (const auto& [key, node] : body) {
            if (!allowed->second.count(key)) throw ConfigError("unknown key '" + key + "' in [" + section + "]");
        }
        auto value = [&](const std::string& key) { return trim(body.get<std::string>(key)); };
        auto has = [&](const std::string& key) { return body.count(key) > 0; };

        if (section == "run") {
            if (has("seed")) cfg.seed = to_unsigned(section, "seed", value("seed"));
            if (has("threads")) cfg.threads = to_unsigned(section, "threads", value("threads"));
            if (has("fd_step")) cfg.fd_step = to_double(section, "fd_step", value("fd_step"));
            if (has("variant")) cfg.variant = VariantSelection::parse(value("variant"));
            if (has("svg")) cfg.svg = to_bool(section, "svg", value("svg"));
        } else if (section == "model") {
            for (const auto& [key, node] : body) {
                if (key == "kind") {
                    cfg.model.kind = parse_model_kind(trim(node.data()));
                    have_kind = true;
                } else {
                    cfg.model.params[key] = to_double(section, key, trim(node.data()));
                }
            }
        } else if (section == "axis1") {
            cfg.axis1 = parse_axis(section, body);
        } else if (section == "axis2") {
            cfg.axis2 = parse_axis(section, body);
        } else if (section == "scgf") {
            std::stringstream list(value("s"));
            std::string item;
            while (std::getline(list, item, ',')) cfg.scgf_s.push_back(to_double(section, "s", trim(item)));
        } else if (section == "rate_function") {
            auto& r = cfg.rate;
            if (has("subset")) r.subset = to_unsigned(section, "subset", value("subset"));
            if (has("x_min")) r.x_min = to_double(section, "x_min", value("x_min"));
            if (has("x_max")) r.x_max = to_double(section, "x_max", value("x_max"));
            if (has("points")) r.points = to_unsigned(section, "points", value("points"));
            if (has("s_min")) r.bracket.lo = to_double(section, "s_min", value("s_min"));
            if (has("s_max")) r.bracket.hi = to_double(section, "s_max", value("s_max"));
        } else if (section == "trajectories") {
            auto& t = cfg.trajectories;
            if (has("t_final")) t.t_final = to_double(section, "t_final", value("t_final"));
            if (has("n_traj")) t.n_traj = to_unsigned(section, "n_traj", value("n_traj"));
            if (has("dt_max")) t.dt_max = to_double(section, "dt_max", value("dt_max"));
            if (has("t_warmup")) t.t_warmup = to_double(section, "t_warmup", value("t_warmup"));
            if (has("initial")) initial = value("initial");
            if (has("dump_samples")) cfg.dump_samples = to_bool(section, "dump_samples", value("dump_samples"));
        } else if (section == "trajectory_model") {
            for (const auto& [key, node] : body) {
                cfg.trajectory_overrides[key] = to_double(section, key, trim(node.data()));
            }
        }
    }
    if (!have_kind) throw ConfigError("[model] kind is required");
    if (initial != "ground" && initial != "excited") {
        throw ConfigError("[trajectories] initial must be ground or excited");
    }
    if (initial == "excited") {
        const std::size_t dim = cfg.model.kind == ModelKind::DrivenQubit ? 2 : 4;
        cfg.trajectories.initial_state = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
        cfg.trajectories.initial_state(static_cast<Eigen::Index>(dim - 1)) = 1.0;
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

}  // namespace fcs::cli
