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

#include "fcs/trajectories.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>
#include <fmt/format.h>

#include "fcs/errors.hpp"
#include "fcs/parallel.hpp"
#include "fcs/philox.hpp"

namespace fcs {

namespace {

constexpr double kRenormalizeBelow = 1e-150;
constexpr double kJumpTimeRelTol = 1e-8;

struct Channel {
    ComplexMatrix op;
    int subset = -1;        // monitored subset, or -1
    std::size_t slot = 0;   // index into CountSample::unmonitored when subset < 0
};

// Deterministic no-jump evolution psi(t) = exp(-i H_eff t) psi(0).
class NoJumpPropagator {
public:
    NoJumpPropagator(const ComplexMatrix& generator, double dt)
        : generator_(generator), full_step_((generator * dt).exp()) {}

    void full_step(const ComplexVector& in, ComplexVector& out) const { out.noalias() = full_step_ * in; }

    // Taylor series; tau never exceeds the step cap so ||A tau|| is small.
    void advance(const ComplexVector& in, double tau, ComplexVector& out) const {
        out = in;
        ComplexVector term = in;
        ComplexVector next(in.size());
        for (int k = 1; k < 60; ++k) {
            next.noalias() = generator_ * term;
            term = next * (tau / k);
            out += term;
            if (term.squaredNorm() <= 1e-34 * out.squaredNorm()) break;
        }
    }

private:
    ComplexMatrix generator_;
    ComplexMatrix full_step_;
};

ComplexVector initial_state(const TrajectoryConfig& cfg, std::size_t dim) {
    ComplexVector psi;
    if (cfg.initial_state.size() == 0) {
        psi = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
        psi(0) = 1.0;
        return psi;
    }
    if (static_cast<std::size_t>(cfg.initial_state.size()) != dim) {
        throw DimensionError("initial state length does not match the model dimension");
    }
    const double norm = cfg.initial_state.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) throw InvalidArgument("initial state must be a nonzero finite vector");
    return cfg.initial_state / norm;
}

}  // namespace

double max_jump_rate(const Lindbladian& model) {
    ComplexMatrix total = ComplexMatrix::Zero(model.hamiltonian.rows(), model.hamiltonian.cols());
    for (const auto& j : model.jumps) total += j.op.adjoint() * j.op;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(total, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().maxCoeff();
}

TrajectoryRun simulate_counts(const Lindbladian& model, const CountingScheme& scheme,
                              const TrajectoryConfig& cfg) {
    model.validate();
    scheme.validate(model);
    if (!(cfg.t_final > 0.0) || !std::isfinite(cfg.t_final)) throw InvalidArgument("t_final must be > 0");
    if (!(cfg.t_warmup >= 0.0) || !std::isfinite(cfg.t_warmup)) throw InvalidArgument("t_warmup must be >= 0");
    if (cfg.n_traj == 0) throw InvalidArgument("n_traj must be positive");

    const double rate = max_jump_rate(model);
    const double dt_cap = rate > 0.0 ? 0.01 / rate : cfg.t_final + cfg.t_warmup;
    double dt = cfg.dt_max == 0.0 ? dt_cap : cfg.dt_max;
    if (!(dt > 0.0) || dt > dt_cap * (1.0 + 1e-12)) {
        throw InvalidArgument(fmt::format("dt_max = {} must lie in (0, 0.01 / max rate = {}]", dt, dt_cap));
    }

    TrajectoryRun run;
    try {
        steady_state(build_liouvillian(model));
    } catch (const DegenerateSteadyState& e) {
        run.warnings.emplace_back(e.what());
    }

    std::vector<Channel> channels;
    for (const auto& j : model.jumps) {
        Channel c{j.op, scheme.subset_of(j.label), 0};
        if (c.subset < 0) {
            c.slot = run.unmonitored_labels.size();
            run.unmonitored_labels.push_back(j.label);
        }
        channels.push_back(std::move(c));
    }

    ComplexMatrix h_eff = model.hamiltonian;
    for (const auto& j : model.jumps) h_eff -= Complex(0.0, 0.5) * (j.op.adjoint() * j.op);
    const NoJumpPropagator propagator(Complex(0.0, -1.0) * h_eff, dt);
    const ComplexVector psi0 = initial_state(cfg, model.dim());
    const double t_end = cfg.t_warmup + cfg.t_final;

    run.samples.resize(cfg.n_traj);
    std::vector<std::size_t> renorm(cfg.n_traj, 0);

    parallel_for(cfg.n_traj, cfg.threads, [&](std::size_t k) {
        PhiloxStream rng(cfg.seed, k);
        CountSample sample;
        sample.counts.assign(scheme.size(), 0);
        sample.unmonitored.assign(run.unmonitored_labels.size(), 0);

        ComplexVector psi = psi0;
        ComplexVector trial(psi.size());
        ComplexVector scratch(psi.size());
        std::vector<double> weights(channels.size());
        double threshold = rng.uniform();
        double t = 0.0;

        while (t < t_end) {
            const double h = std::min(dt, t_end - t);
            if (h == dt) {
                propagator.full_step(psi, trial);
            } else {
                propagator.advance(psi, h, trial);
            }
            const double norm2 = trial.squaredNorm();
            if (norm2 > threshold) {
                psi.swap(trial);
                t += h;
                if (norm2 < kRenormalizeBelow) {
                    psi /= std::sqrt(norm2);
                    threshold /= norm2;
                    ++renorm[k];
                }
                continue;
            }

            // The norm is monotone in time: bisect for the threshold crossing.
            double lo = 0.0;
            double hi = h;
            while (hi - lo > kJumpTimeRelTol * dt) {
                const double mid = 0.5 * (lo + hi);
                propagator.advance(psi, mid, scratch);
                (scratch.squaredNorm() > threshold ? lo : hi) = mid;
            }
            propagator.advance(psi, hi, scratch);
            t += hi;

            double total = 0.0;
            for (std::size_t c = 0; c < channels.size(); ++c) {
                weights[c] = (channels[c].op * scratch).squaredNorm();
                total += weights[c];
            }
            const double pick = rng.uniform() * total;
            std::size_t chosen = 0;
            double acc = weights[0];
            while (acc < pick && chosen + 1 < channels.size()) acc += weights[++chosen];

            psi.noalias() = channels[chosen].op * scratch;
            psi.normalize();
            if (t >= cfg.t_warmup && t <= t_end) {
                const Channel& ch = channels[chosen];
                if (ch.subset >= 0) {
                    ++sample.counts[static_cast<std::size_t>(ch.subset)];
                } else {
                    ++sample.unmonitored[ch.slot];
                }
            }
            threshold = rng.uniform();
        }
        run.samples[k] = std::move(sample);
    });

    for (std::size_t r : renorm) run.renormalizations += r;
    if (run.renormalizations > 0) {
        run.warnings.push_back(fmt::format("{} norm-underflow renormalisations performed", run.renormalizations));
    }
    return run;
}

EmpiricalStats empirical_stats(const std::vector<CountSample>& samples, double t_final) {
    if (samples.size() < 2) throw InvalidArgument("empirical_stats needs at least 2 samples");
    if (!(t_final > 0.0)) throw InvalidArgument("empirical_stats: t_final must be > 0");
    const auto m = static_cast<Eigen::Index>(samples.front().counts.size());
    const auto n = static_cast<Eigen::Index>(samples.size());
    const double nd = static_cast<double>(n);

    Eigen::MatrixXd k(n, m);
    for (Eigen::Index r = 0; r < n; ++r) {
        const auto& c = samples[static_cast<std::size_t>(r)].counts;
        if (static_cast<Eigen::Index>(c.size()) != m) throw DimensionError("samples disagree in subset count");
        for (Eigen::Index i = 0; i < m; ++i) k(r, i) = static_cast<double>(c[static_cast<std::size_t>(i)]);
    }

    EmpiricalStats out;
    out.n = samples.size();
    const Eigen::RowVectorXd mean_k = k.colwise().mean();
    const Eigen::MatrixXd centered = k.rowwise() - mean_k;
    const Eigen::MatrixXd scatter = centered.transpose() * centered;  // sum of centred products

    out.means = mean_k.transpose() / t_final;
    out.covariance = scatter / ((nd - 1.0) * t_final);
    out.se_means = (out.covariance.diagonal() / t_final / nd).cwiseSqrt();

    out.se_covariance = Eigen::MatrixXd::Constant(m, m, std::numeric_limits<double>::quiet_NaN());
    if (n >= 3) {
        // Leave-one-out covariances from the centred sums:
        // S_ij^(-r) = S_ij - n/(n-1) c_ri c_rj, with c the centred sample.
        Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(m, m);
        Eigen::MatrixXd sum_sq = Eigen::MatrixXd::Zero(m, m);
        for (Eigen::Index r = 0; r < n; ++r) {
            const Eigen::VectorXd c = centered.row(r).transpose();
            const Eigen::MatrixXd loo = (scatter - (nd / (nd - 1.0)) * (c * c.transpose())) / ((nd - 2.0) * t_final);
            sum += loo;
            sum_sq += loo.cwiseProduct(loo);
        }
        const Eigen::MatrixXd mean_loo = sum / nd;
        const Eigen::MatrixXd var = (sum_sq / nd - mean_loo.cwiseProduct(mean_loo)).cwiseMax(0.0);
        out.se_covariance = ((nd - 1.0) * var).cwiseSqrt();
    }
    return out;
}

void write_samples_csv(std::ostream& os, const std::vector<CountSample>& samples, double t_final,
                       std::uint64_t seed) {
    const std::size_t m = samples.empty() ? 0 : samples.front().counts.size();
    os << "traj_id";
    for (std::size_t i = 0; i < m; ++i) os << ",K" << (i + 1);
    os << ",t_final,seed\n";
    for (std::size_t r = 0; r < samples.size(); ++r) {
        os << r;
        for (auto c : samples[r].counts) os << ',' << c;
        os << ',' << fmt::format("{}", t_final) << ',' << seed << '\n';
    }
}

}  // namespace fcs
