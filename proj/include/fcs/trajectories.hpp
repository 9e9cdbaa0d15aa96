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
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fcs/liouville.hpp"

namespace fcs {

struct TrajectoryConfig {
    double t_final = 200.0;   ///< counting window, units of 1/gamma
    std::size_t n_traj = 1000;
    std::uint64_t seed = 1;
    /// Step cap for bracketing jump times; 0 selects 0.01 / ||sum L^dag L||.
    double dt_max = 0.0;
    /// Evolution time before counting starts, so samples are (nearly) stationary.
    double t_warmup = 20.0;
    /// Initial pure state; empty means the all-ground basis state |0...0>.
    ComplexVector initial_state;
    std::size_t threads = 1;
};

struct CountSample {
    std::vector<std::uint64_t> counts;       ///< one entry per monitored subset
    std::vector<std::uint64_t> unmonitored;  ///< one entry per unmonitored jump
};

struct TrajectoryRun {
    std::vector<CountSample> samples;          ///< ordered by trajectory index
    std::vector<std::string> unmonitored_labels;
    std::size_t renormalizations = 0;          ///< norm-underflow rescalings performed
    std::vector<std::string> warnings;
};

struct EmpiricalStats {
    Eigen::VectorXd means;      ///< <K_i> / t
    Eigen::MatrixXd covariance; ///< cov(K_i, K_j) / t, unbiased (n - 1)
    Eigen::VectorXd se_means;
    Eigen::MatrixXd se_covariance;  ///< jackknife; NaN when fewer than 3 samples
    std::size_t n = 0;
};

/// Largest eigenvalue of sum_mu L_mu^dag L_mu: the maximal total jump rate.
double max_jump_rate(const Lindbladian& model);

/// Quantum-jump unravelling of the master equation. Trajectory k draws from
/// PhiloxStream(cfg.seed, k), so results are bit-identical for any thread count.
TrajectoryRun simulate_counts(const Lindbladian& model, const CountingScheme& scheme,
                              const TrajectoryConfig& cfg);

EmpiricalStats empirical_stats(const std::vector<CountSample>& samples, double t_final);

/// CSV with header `traj_id,K1,...,KM,t_final,seed`.
void write_samples_csv(std::ostream& os, const std::vector<CountSample>& samples, double t_final,
                       std::uint64_t seed);

}  // namespace fcs
