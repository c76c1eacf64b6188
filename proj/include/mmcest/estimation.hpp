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

#ifndef mmcest_estimation_H
#define mmcest_estimation_H

#include "mmcest/channel_model.hpp"
#include "mmcest/codebook.hpp"

namespace mmcest
{

// One stage of the hierarchical search
struct StageTrace
{
    arma::uword level = 0;       // s, 1-based
    arma::uword bs_subset = 0;   // subset index k_s on the precoder side, 1-based
    arma::uword ms_subset = 0;   // subset index on the combiner side
    arma::uword bs_beam = 0;     // selected beam m* on the precoder side, 1-based
    arma::uword ms_beam = 0;     // selected beam on the combiner side
    arma::mat measurement_power; // K x K, |Y|^2 after any projection; rows = combiner beams
};

struct EstimateResult
{
    double aod = 0.0; // folded departure azimuth, on the estimation grid
    double aoa = 0.0; // folded arrival azimuth, on the estimation grid
    double gain_magnitude = 0.0;
    arma::uword aod_grid_index = 0; // folded grid index, in 0..N/2
    arma::uword aoa_grid_index = 0;
    std::vector<double> aod_candidates; // grid angles examined at the refinement round
    std::vector<double> aoa_candidates;
    std::vector<StageTrace> trace;
};

struct MultipathEstimate
{
    std::vector<EstimateResult> paths; // one per detected path, in detection order
    arma::umat bs_index_table;         // L x S, precoder subset used at each stage, 1-based
    arma::umat ms_index_table;         // L x S, combiner subset used at each stage
};

// y minus its orthogonal projection onto the column space of v (v may have any
// number of columns; empty v returns y unchanged)
cx_vec project_out(const cx_vec &y, const cx_mat &v);

// Hierarchical single-path search: S rounds of K x K beam-pair measurements,
// per-round power `power` and fresh noise, followed by one refinement round
// over the candidate steering vectors of the winning final-level beams
// (primary plus mirror coverage). Returns folded on-grid angles and the gain
// magnitude |Z_max| / (sqrt(power) * sqrt(n_bs * n_ms)).
EstimateResult estimate_single_path(const cx_mat &h,
                                    const HierarchicalCodebook &fcb, const HierarchicalCodebook &wcb,
                                    const Dictionary &bs_dict, const Dictionary &ms_dict,
                                    double power, double noise_var, Rng &rng);

// Sequential multipath search: paths are detected one at a time; while
// detecting path i, the contribution of each previously detected path is
// projected out of every stage (and refinement) measurement, one path at a
// time, using the dictionary columns at that path's estimated grid support.
// Requires num_paths <= K^S. Subset choices are recorded in the index tables.
MultipathEstimate estimate_multipath_sequential(const cx_mat &h,
                                                const HierarchicalCodebook &fcb, const HierarchicalCodebook &wcb,
                                                const Dictionary &bs_dict, const Dictionary &ms_dict,
                                                arma::uword num_paths, double power, double noise_var, Rng &rng);

// Joint multipath search: like the sequential variant, but all previously
// detected paths are removed at once through a single projection onto the
// complement of their per-path measurement directions, one direction per
// path, built from the steering vectors at the estimated angles.
MultipathEstimate estimate_multipath_joint(const cx_mat &h,
                                           const HierarchicalCodebook &fcb, const HierarchicalCodebook &wcb,
                                           const Dictionary &bs_dict, const Dictionary &ms_dict,
                                           arma::uword num_paths, double power, double noise_var, Rng &rng);

} // namespace mmcest

#endif
