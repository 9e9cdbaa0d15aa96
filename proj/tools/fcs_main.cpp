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

// Command-line front end: single-point SCGF/witness evaluations, parameter
// sweeps, rate-function scans and Monte Carlo validation runs.

#include <array>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "fcs/cli/config.hpp"
#include "fcs/cli/experiment.hpp"

#ifndef FCS_VERSION
#define FCS_VERSION "dev"
#endif
#ifndef FCS_GIT_HASH
#define FCS_GIT_HASH "unknown"
#endif

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fcs;
using namespace fcs::cli;

namespace {

struct Options {
    std::string config;
    std::string out = ".";
    std::optional<std::uint64_t> seed;
    std::optional<std::string> variant;
    std::optional<std::size_t> threads;
    bool svg = false;
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--config", o.config, "Run configuration file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", o.out, "Output directory");
    cmd->add_option("--seed", o.seed, "Override [run] seed");
    cmd->add_option("--variant", o.variant, "Witness variant: appendix|direct|both");
    cmd->add_option("--threads", o.threads, "Worker threads");
    cmd->add_flag("--svg", o.svg, "Also write an SVG heatmap (sweep)");
}

RunConfig load(const Options& o) {
    RunConfig cfg = load_config(o.config);
    if (o.seed) cfg.seed = *o.seed;
    if (o.variant) cfg.variant = VariantSelection::parse(*o.variant);
    if (o.threads) {
        if (*o.threads == 0) throw ConfigError("--threads must be >= 1");
        cfg.threads = *o.threads;
    }
    cfg.svg = cfg.svg || o.svg;
    fs::create_directories(o.out);
    return cfg;
}

std::ofstream open_out(const Options& o, const std::string& name) {
    std::ofstream f(fs::path(o.out) / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (fs::path(o.out) / name).string());
    return f;
}

json model_json(const ModelSpec& m) {
    json params = json::object();
    for (const auto& [k, v] : m.params) params[k] = v;
    return {{"kind", to_string(m.kind)}, {"params", params}, {"units", "rates in gamma, angles in radians"}};
}

std::string utc_now() {
    const std::time_t now = std::time(nullptr);
    std::array<char, 32> buf{};
    std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buf.data();
}

// Everything non-deterministic (timestamps, wall time) lives in manifest.json.
void write_manifest(const Options& o, const std::string& command, const RunConfig& cfg, json extra,
                    std::chrono::steady_clock::time_point start, const std::vector<std::string>& outputs) {
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json m = {{"tool", "fcs"},
              {"version", FCS_VERSION},
              {"git_hash", FCS_GIT_HASH},
              {"command", command},
              {"config_path", o.config},
              {"model", model_json(cfg.model)},
              {"seed", cfg.seed},
              {"threads", cfg.threads},
              {"fd_step", cfg.fd_step},
              {"variant", cfg.variant.name()},
              {"outputs", outputs},
              {"started_utc", utc_now()},
              {"wall_time_s", wall}};
    if (extra.is_object()) m.update(extra);
    open_out(o, "manifest.json") << m.dump(2) << '\n';
}

int cmd_scgf(const Options& o) {
    const auto start = std::chrono::steady_clock::now();
    const RunConfig cfg = load(o);
    const ModelInstance inst = cfg.model.build();
    std::vector<double> s = cfg.scgf_s;
    if (s.empty()) s.assign(inst.scheme.size(), 0.0);
    if (s.size() != inst.scheme.size()) {
        throw ConfigError(fmt::format("[scgf] s needs {} values", inst.scheme.size()));
    }
    const SpectralResult lead = leading_eigenpair(build_tilted(inst.model, inst.scheme, s));
    const json out = {{"s", s},
                      {"theta", lead.eigenvalue.real()},
                      {"eigenvalue_imag", lead.eigenvalue.imag()},
                      {"gap", lead.gap},
                      {"tie_broken", lead.tie_broken}};
    open_out(o, "scgf.json") << out.dump(2) << '\n';
    std::cout << out.dump(2) << '\n';
    write_manifest(o, "scgf", cfg, {}, start, {"scgf.json"});
    return kExitOk;
}

int cmd_witness(const Options& o) {
    const auto start = std::chrono::steady_clock::now();
    const RunConfig cfg = load(o);
    const ModelInstance inst = cfg.model.build();
    const WitnessReport report = evaluate_witness(cumulants_fd(inst.model, inst.scheme, cfg.fd_step));
    json out = witness_json(report);
    out["variant"] = cfg.variant.name();
    open_out(o, "witness.json") << out.dump(2) << '\n';
    std::cout << out.dump(2) << '\n';
    write_manifest(o, "witness", cfg, {}, start, {"witness.json"});
    return kExitOk;
}

int cmd_sweep(const Options& o) {
    const auto start = std::chrono::steady_clock::now();
    const RunConfig cfg = load(o);
    const SweepSpec spec = cfg.sweep_spec();
    const SweepResult result = run_sweep(spec);

    std::vector<std::string> outputs{"sweep.csv"};
    {
        auto f = open_out(o, "sweep.csv");
        write_sweep_csv(f, result);
    }
    if (cfg.svg) {
        for (const auto v : {WitnessVariant::Appendix, WitnessVariant::Direct}) {
            if ((v == WitnessVariant::Appendix && !spec.variant.appendix)
                || (v == WitnessVariant::Direct && !spec.variant.direct)) {
                continue;
            }
            const std::string name = fmt::format("heatmap_{}.svg", to_string(v));
            auto f = open_out(o, name);
            write_heatmap_svg(f, result, v);
            outputs.push_back(name);
        }
    }
    const json axes = {{"axis1", {{"param", spec.axis1.param}, {"min", spec.axis1.min}, {"max", spec.axis1.max},
                                  {"points", spec.axis1.points}, {"log", spec.axis1.log_scale}}},
                       {"axis2", {{"param", spec.axis2.param}, {"min", spec.axis2.min}, {"max", spec.axis2.max},
                                  {"points", spec.axis2.points}, {"log", spec.axis2.log_scale}}},
                       {"points", result.points.size()},
                       {"failures", result.failures}};
    write_manifest(o, "sweep", cfg, axes, start, outputs);
    std::cerr << fmt::format("sweep: {} points, {} failed\n", result.points.size(), result.failures);
    return result.failure_fraction() > kMaxFailureFraction ? kExitSolverBudget : kExitOk;
}

int cmd_rate_function(const Options& o) {
    const auto start = std::chrono::steady_clock::now();
    const RunConfig cfg = load(o);
    ModelInstance inst = cfg.model.build();
    const auto& r = cfg.rate;
    if (r.subset < 1 || r.subset > inst.scheme.size()) throw ConfigError("[rate_function] subset out of range");
    if (r.points < 1 || r.x_min < 0.0 || r.x_max < r.x_min) throw ConfigError("[rate_function] bad x range");
    inst.scheme.subsets = {inst.scheme.subsets[r.subset - 1]};

    auto f = open_out(o, "rate_function.csv");
    f << "# fcs-witness rate-function csv v1; subset=" << r.subset << '\n';
    f << "x,phi,argmin_s,status\n";
    for (std::size_t k = 0; k < r.points; ++k) {
        const double x = r.points == 1 ? r.x_min
                                       : r.x_min + (r.x_max - r.x_min) * static_cast<double>(k)
                                                       / static_cast<double>(r.points - 1);
        try {
            const RateFunctionSample sample = rate_function(inst.model, inst.scheme, x, r.bracket);
            f << format_number(x) << ',' << format_number(sample.phi) << ',' << format_number(sample.argmin_s) << ','
              << (sample.at_boundary ? "limit" : "ok") << '\n';
        } catch (const Error& e) {
            f << format_number(x) << ",nan,nan," << error_code(e) << '\n';
        }
    }
    write_manifest(o, "rate-function", cfg, {}, start, {"rate_function.csv"});
    return kExitOk;
}

int cmd_validate(const Options& o) {
    const auto start = std::chrono::steady_clock::now();
    const RunConfig cfg = load(o);
    const ValidateSpec spec = cfg.validate_spec();
    const ValidationReport report = run_validate(spec);

    std::vector<std::string> outputs{"validate.json"};
    json out = report.to_json();
    out["model"] = model_json(spec.model);
    out["trajectory_model"] = model_json(spec.trajectory_model);
    out["t_final"] = spec.trajectories.t_final;
    out["t_warmup"] = spec.trajectories.t_warmup;
    out["seed"] = spec.trajectories.seed;
    open_out(o, "validate.json") << out.dump(2) << '\n';
    if (spec.dump_samples) {
        auto f = open_out(o, "samples.csv");
        write_samples_csv(f, report.run.samples, spec.trajectories.t_final, spec.trajectories.seed);
        outputs.push_back("samples.csv");
    }
    for (const auto& w : report.run.warnings) std::cerr << "warning: " << w << '\n';
    std::cout << out.dump(2) << '\n';
    write_manifest(o, "validate", cfg, {}, start, outputs);
    return report.pass ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Full counting statistics and moment-matrix non-classicality witnesses for open quantum emitters"};
    app.set_version_flag("--version", std::string(FCS_VERSION) + " (" + FCS_GIT_HASH + ")");
    app.require_subcommand(1);

    Options opts;
    struct Command {
        const char* name;
        const char* help;
        int (*run)(const Options&);
    };
    const std::array<Command, 5> commands{{
        {"scgf", "Evaluate theta(s) at the [scgf] s point", cmd_scgf},
        {"witness", "Cumulants, moment matrix and witnesses at one model point", cmd_witness},
        {"sweep", "Two-parameter grid of witnesses (CSV, manifest, optional SVG)", cmd_sweep},
        {"validate", "Compare spectral cumulants against quantum-jump trajectories", cmd_validate},
        {"rate-function", "Scan the rate function phi(x) of one counting subset", cmd_rate_function},
    }};
    std::vector<std::pair<CLI::App*, const Command*>> subs;
    for (const auto& c : commands) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        add_common(sub, opts);
        subs.emplace_back(sub, &c);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        for (const auto& [sub, cmd] : subs) {
            if (sub->parsed()) return cmd->run(opts);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUnexpected;
    }
    return kExitUnexpected;
}
