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

#include "fcs/cli/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <fmt/format.h>

#include "fcs/parallel.hpp"

namespace fcs::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Rgb {
    int r, g, b;
};

// Diverging map: blue below zero, white at zero, red above.
Rgb diverging_color(double v, double scale) {
    if (!std::isfinite(v)) return {160, 160, 160};
    const double f = scale > 0.0 ? std::clamp(v / scale, -1.0, 1.0) : 0.0;
    const Rgb end = f < 0.0 ? Rgb{33, 102, 172} : Rgb{178, 24, 43};
    const double a = std::abs(f);
    auto mix = [a](int to) { return static_cast<int>(std::lround(255.0 + a * (to - 255.0))); };
    return {mix(end.r), mix(end.g), mix(end.b)};
}

nlohmann::json number_or_null(double v) {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    return fmt::format("{}", v);
}

std::string error_code(const std::exception& e) {
    if (dynamic_cast<const DegenerateSteadyState*>(&e)) return "degenerate_steady_state";
    if (dynamic_cast<const SolverError*>(&e)) return "solver_error";
    if (dynamic_cast<const BracketTooSmall*>(&e)) return "bracket_too_small";
    if (dynamic_cast<const ConfigError*>(&e)) return "config_error";
    if (dynamic_cast<const InvalidArgument*>(&e)) return "invalid_argument";
    if (dynamic_cast<const DimensionError*>(&e)) return "dimension_error";
    return "error";
}

double SweepResult::failure_fraction() const {
    return points.empty() ? 0.0 : static_cast<double>(failures) / static_cast<double>(points.size());
}

double SweepResult::value(const SweepPoint& p, WitnessVariant v) const {
    if (p.status != "ok") return kNaN;
    return v == WitnessVariant::Appendix ? p.report.m3_appendix : p.report.m3_direct;
}

ModelSpec grid_model(const SweepSpec& spec, double v1, double v2) {
    ModelSpec m = spec.model;
    for (const auto& [param, value] : {std::pair{spec.axis1.param, v1}, std::pair{spec.axis2.param, v2}}) {
        if (param == "reflectivity") m.params.erase("zeta");
        if (param == "zeta") m.params.erase("reflectivity");
        m.params[param] = value;
    }
    return m;
}

SweepResult run_sweep(const SweepSpec& spec) {
    spec.validate();
    const auto xs = spec.axis1.values();
    const auto ys = spec.axis2.values();

    SweepResult result;
    result.spec = spec;
    result.points.resize(xs.size() * ys.size());
    parallel_for(result.points.size(), spec.threads, [&](std::size_t k) {
        SweepPoint& p = result.points[k];
        p.i = k / ys.size();
        p.j = k % ys.size();
        p.axis1 = xs[p.i];
        p.axis2 = ys[p.j];
        try {
            const ModelInstance inst = grid_model(spec, p.axis1, p.axis2).build();
            p.report = evaluate_witness(cumulants_fd(inst.model, inst.scheme, spec.fd_step));
            p.total_emission = total_emission_rate(inst, steady_state(build_liouvillian(inst.model)));
        } catch (const std::exception& e) {
            p.status = error_code(e);
        }
    });
    result.failures = static_cast<std::size_t>(
        std::count_if(result.points.begin(), result.points.end(), [](const SweepPoint& p) { return p.status != "ok"; }));
    return result;
}

void write_sweep_csv(std::ostream& os, const SweepResult& result) {
    const auto& s = result.spec;
    os << "# " << kSweepCsvSchema << "; model=" << to_string(s.model.kind) << "; axis1=" << s.axis1.param
       << "; axis2=" << s.axis2.param << "; variant=" << s.variant.name() << '\n';
    os << "i,j,axis1,axis2,kappa10,kappa01,kappa20,kappa11,kappa02,m2,m3_direct,m3_appendix,total_emission,status\n";
    for (const auto& p : result.points) {
        const bool ok = p.status == "ok";
        const auto& c = p.report.cumulants;
        auto num = [ok](double v) { return format_number(ok ? v : kNaN); };
        os << p.i << ',' << p.j << ',' << format_number(p.axis1) << ',' << format_number(p.axis2) << ','
           << num(c.kappa10) << ',' << num(c.kappa01) << ',' << num(c.kappa20) << ',' << num(c.kappa11) << ','
           << num(c.kappa02) << ',' << num(p.report.m2) << ',' << num(p.report.m3_direct) << ','
           << num(p.report.m3_appendix) << ',' << num(p.total_emission) << ',' << p.status << '\n';
    }
}

void write_heatmap_svg(std::ostream& os, const SweepResult& result, WitnessVariant variant) {
    const auto& spec = result.spec;
    const std::size_t nx = spec.axis1.points;
    const std::size_t ny = spec.axis2.points;
    constexpr double left = 80, top = 40, plot_w = 480, plot_h = 400, bar_x = 590, bar_w = 20;
    const double cw = plot_w / static_cast<double>(nx);
    const double ch = plot_h / static_cast<double>(ny);

    double scale = 0.0;
    for (const auto& p : result.points) {
        const double v = result.value(p, variant);
        if (std::isfinite(v)) scale = std::max(scale, std::abs(v));
    }

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"680\" height=\"520\" "
          "font-family=\"sans-serif\" font-size=\"13\">\n";
    os << fmt::format("<text x=\"{}\" y=\"24\">m3 ({}) : {} vs {}</text>\n", left, to_string(variant),
                      spec.axis2.param, spec.axis1.param);
    for (const auto& p : result.points) {
        const Rgb c = diverging_color(result.value(p, variant), scale);
        // axis1 runs left to right, axis2 bottom to top.
        const double x = left + static_cast<double>(p.i) * cw;
        const double y = top + plot_h - static_cast<double>(p.j + 1) * ch;
        os << fmt::format("<rect x=\"{:.3f}\" y=\"{:.3f}\" width=\"{:.3f}\" height=\"{:.3f}\" fill=\"rgb({},{},{})\"/>\n",
                          x, y, cw, ch, c.r, c.g, c.b);
    }
    os << fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", left,
                      top, plot_w, plot_h);
    os << fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", left + plot_w / 2,
                      top + plot_h + 36, spec.axis1.param);
    os << fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 {} {})\">{}</text>\n",
                      left - 50, top + plot_h / 2, left - 50, top + plot_h / 2, spec.axis2.param);
    os << fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"start\">{}</text>\n", left, top + plot_h + 18,
                      format_number(spec.axis1.min));
    os << fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n", left + plot_w, top + plot_h + 18,
                      format_number(spec.axis1.max));
    os << fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n", left - 6, top + plot_h,
                      format_number(spec.axis2.min));
    os << fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n", left - 6, top + 10,
                      format_number(spec.axis2.max));

    constexpr int steps = 50;
    for (int k = 0; k < steps; ++k) {
        const double f = 1.0 - 2.0 * (k + 0.5) / steps;
        const Rgb c = diverging_color(f, 1.0);
        os << fmt::format("<rect x=\"{}\" y=\"{:.3f}\" width=\"{}\" height=\"{:.3f}\" fill=\"rgb({},{},{})\"/>\n",
                          bar_x, top + k * plot_h / steps, bar_w, plot_h / steps + 0.5, c.r, c.g, c.b);
    }
    os << fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", bar_x + bar_w + 4, top + 10, format_number(scale));
    os << fmt::format("<text x=\"{}\" y=\"{}\">0</text>\n", bar_x + bar_w + 4, top + plot_h / 2 + 4);
    os << fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", bar_x + bar_w + 4, top + plot_h,
                      format_number(-scale));
    os << "</svg>\n";
}

nlohmann::json cumulants_json(const CumulantTable& c) {
    return {{"kappa10", number_or_null(c.kappa10)}, {"kappa01", number_or_null(c.kappa01)},
            {"kappa20", number_or_null(c.kappa20)}, {"kappa11", number_or_null(c.kappa11)},
            {"kappa02", number_or_null(c.kappa02)}, {"convention", c.convention}};
}

nlohmann::json witness_json(const WitnessReport& report) {
    const MomentMatrix mm = moment_matrix(report.cumulants, 3);
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < mm.entries.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < mm.entries.cols(); ++c) row.push_back(mm.entries(r, c));
        rows.push_back(row);
    }
    nlohmann::json index = nlohmann::json::array();
    for (const auto& [n, m] : mm.index) index.push_back({n, m});
    return {{"cumulants", cumulants_json(report.cumulants)},
            {"moment_matrix", rows},
            {"moment_index", index},
            {"m2", report.m2},
            {"m3_direct", report.m3_direct},
            {"m3_appendix", report.m3_appendix},
            {"scaling_exponent", report.scaling_exponent}};
}

nlohmann::json ValidationReport::to_json() const {
    nlohmann::json items = nlohmann::json::array();
    for (const auto& e : entries) {
        items.push_back({{"quantity", e.quantity},
                         {"spectral", number_or_null(e.spectral)},
                         {"empirical", number_or_null(e.empirical)},
                         {"standard_error", number_or_null(e.standard_error)},
                         {"abs_difference", number_or_null(std::abs(e.spectral - e.empirical))},
                         {"tolerance", number_or_null(3.0 * e.standard_error + kValidationAbsSlack)},
                         {"pass", e.pass}});
    }
    nlohmann::json unmonitored = nlohmann::json::array();
    for (const auto& l : run.unmonitored_labels) unmonitored.push_back(l);
    return {{"result", pass ? "PASS" : "FAIL"},
            {"rule", "|spectral - empirical| <= 3 SE + 1e-9"},
            {"n_traj", run.samples.size()},
            {"renormalizations", run.renormalizations},
            {"warnings", run.warnings},
            {"unmonitored_channels", unmonitored},
            {"quantities", items}};
}

ValidationReport run_validate(const ValidateSpec& spec) {
    const ModelInstance reference = spec.model.build();
    const ModelInstance sampled = spec.trajectory_model.build();
    if (reference.scheme.size() != sampled.scheme.size()) {
        throw ConfigError("trajectory model must have the same counting subsets as the spectral model");
    }

    ValidationReport report;
    report.run = simulate_counts(sampled.model, sampled.scheme, spec.trajectories);
    const EmpiricalStats stats = empirical_stats(report.run.samples, spec.trajectories.t_final);

    const auto means = first_cumulants_analytic(reference.model, reference.scheme);
    const CumulantTable c = cumulants_fd(reference.model, reference.scheme, spec.fd_step);
    const std::size_t m = reference.scheme.size();

    auto add = [&](std::string name, double spectral, double empirical, double se) {
        ValidationEntry e{std::move(name), spectral, empirical, se, false};
        e.pass = std::isfinite(se) && std::abs(spectral - empirical) <= 3.0 * se + kValidationAbsSlack;
        report.entries.push_back(e);
    };
    for (std::size_t i = 0; i < m; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        add(fmt::format("kappa1[{}]", i + 1), means[i], stats.means(ii), stats.se_means(ii));
    }
    add("kappa20", c.kappa20, stats.covariance(0, 0), stats.se_covariance(0, 0));
    if (m == 2) {
        add("kappa11", c.kappa11, stats.covariance(0, 1), stats.se_covariance(0, 1));
        add("kappa02", c.kappa02, stats.covariance(1, 1), stats.se_covariance(1, 1));
    }
    report.pass = std::all_of(report.entries.begin(), report.entries.end(),
                              [](const ValidationEntry& e) { return e.pass; });
    return report;
}

}  // namespace fcs::cli
