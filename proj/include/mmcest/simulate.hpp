// SPDX-License-Identifier: Apache-2.0
//
// mmcest - millimeter-wave MIMO sparse channel estimation
// Copyright (C) 2026 the mmcest authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef mmcest_simulate_H
#define mmcest_simulate_H

#include "mmcest/estimation.hpp"

#include <iosfwd>
#include <string>

namespace mmcest
{

enum class Algorithm
{
    single,
    multipath_sequential,
    multipath_joint
};

struct ExperimentConfig
{
    arma::uword n_bs = 64; // transmit antennas
    arma::uword n_ms = 32; // receive antennas
    arma::uword big_k = 3; // codebook branching factor K
    arma::uword big_s = 4; // codebook levels S
    arma::uword num_grid = 0; // grid size N; 0 derives 2*K^S, an explicit value must match it
    DictionaryKind dictionary_kind = DictionaryKind::cbp;
    Algorithm algorithm = Algorithm::single;
    arma::uword num_paths = 1;
    bool randomize_num_paths = false; // per-trial path count uniform over 1..6
    GainDistribution gain_distribution = GainDistribution::complex_normal;
    AngleMode angle_mode = AngleMode::continuous_uniform;
    std::vector<double> snr_db_sweep = {-20, -15, -10, -5, 0, 5, 10, 15, 20};
    arma::uword trials = 1000;
    double power = 1.0;                // per-measurement transmit power, equal across stages
    double spacing_wavelengths = 0.5;  // ULA element spacing d / lambda
    double delta_phi = -1.0;           // derivative-atom detuning; negative = default pi/N
    std::uint64_t master_seed = 1;
    std::string output_path = "results.csv";
};

struct SnrPointResult
{
    double snr_db = 0.0;
    double error_probability = 0.0;
    double se_estimated_mean = 0.0;
    double se_perfect_mean = 0.0;
    arma::uword trials = 0;
};

// Throws std::invalid_argument on an inconsistent configuration
// (e.g. num_grid != 2*K^S, unknown enums, empty SNR sweep, zero trials)
void validate(const ExperimentConfig &cfg);

// True if any of the num_paths strongest true paths ends up more than half a
// final-level grid spacing, pi / (2 * K^S), away from its greedily matched
// estimate in folded AoD or folded AoA.
bool angle_error(const std::vector<EstimateResult> &estimate, const std::vector<PathParams> &truth,
                 arma::uword num_paths, arma::uword branching, arma::uword levels);

// log2 det(I + snr/n * He * He^H) with He = W^H * h_true * F, where F and W hold
// the n strongest right/left singular vectors of h_hat (eigen-beamforming with
// equal power per stream).
double spectral_efficiency(const cx_mat &h_true, const cx_mat &h_hat, arma::uword n_streams, double snr_linear);

// Channel rebuilt from estimated paths using gain magnitudes (zero phase)
cx_mat reconstruct_channel(const std::vector<EstimateResult> &paths, const UlaConfig &bs, const UlaConfig &ms);

// Monte Carlo sweep over the config's SNR points. Each trial draws its own
// stream from derive_seed(master_seed, snr_index, trial_id), with snr_index
// taken over the ascending-sorted sweep, so results do not depend on
// num_threads or scheduling. Results come back in ascending SNR order.
std::vector<SnrPointResult> run_experiment(const ExperimentConfig &cfg, unsigned num_threads = 1);

// CSV with '#' metadata comments, a mandatory header row
// snr_db,error_probability,se_estimated_mean,se_perfect_mean,trials,master_seed
// and one row per SNR point in ascending order
void write_results_csv(const ExperimentConfig &cfg, const std::vector<SnrPointResult> &results, std::ostream &os);

// Level-1 beam pattern sweep: resolution rows of
// angle, |F_(1,1)[:,m]^H a(angle)| for m = 1..K. resolution must be >= num_grid.
void emit_beam_patterns(const HierarchicalCodebook &cb, const UlaConfig &ula,
                        arma::uword resolution, std::ostream &os);

// Flat key=value config file; '#' starts a comment. Unknown keys throw.
ExperimentConfig load_config_file(const std::string &path);
void apply_config_entry(ExperimentConfig &cfg, const std::string &key, const std::string &value);

// One fully-traced trial as JSON lines (stage records, per-path results, summary)
std::string trace_trial(const ExperimentConfig &cfg, double snr_db, arma::uword trial_id);

} // namespace mmcest

#endif
