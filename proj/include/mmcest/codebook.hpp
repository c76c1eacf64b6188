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

#ifndef mmcest_codebook_H
#define mmcest_codebook_H

#include "mmcest/dictionary.hpp"

#include <iosfwd>
#include <vector>

namespace mmcest
{

// Multi-resolution beamforming codebook. Level s (1-based) splits the folded
// angle range [0, pi] into K^s equal sectors; subset k of level s holds the K
// beams refining sector k of level s-1. The grid size must be N = 2 * K^S.
struct HierarchicalCodebook
{
    arma::uword levels = 0;    // S
    arma::uword branching = 0; // K, beams per subset
    arma::uword num_grid = 0;  // N = 2 * K^S
    double normalization_constant = 0.0; // in-band response target of the (1,1) block after scaling
    // mats[s-1][k-1]: n_ant x K beam matrix for subset k of level s, k in 1..K^(s-1)
    std::vector<std::vector<cx_mat>> mats;

    const cx_mat &mat(arma::uword level, arma::uword subset) const; // 1-based accessors
};

// 0-based grid indices whose angle lies in the coverage interval of beam `beam`
// (1..K) of subset `subset` (1..K^(level-1)) at `level`, i.e. the folded sector
// [pi/K^s * (K*(k-1)+m-1), pi/K^s * (K*(k-1)+m)] together with its mirror.
// Grid points on a boundary shared by two beams belong to the lower-indexed beam.
std::vector<arma::uword> coverage_index_set(arma::uword level, arma::uword subset, arma::uword beam,
                                            arma::uword branching, arma::uword num_grid);

// 1-based global beam index (in 1..K^level) covering grid point `grid_index` at `level`
arma::uword beam_index_of_grid_point(arma::uword level, arma::uword grid_index,
                                     arma::uword branching, arma::uword num_grid);

// Least-squares beam synthesis against the dictionary: each beam column solves
// atoms^H * f = g, where g carries 1 at the covered grid rows (and zeros on the
// derivative rows for a cbp dictionary), then every (s,k) block is rescaled
// jointly so that ||F_(s,k)||_F = K. Requires dict.grid.num_points == 2 * K^S.
HierarchicalCodebook build_codebook(const Dictionary &dict, const UlaConfig &ula,
                                    arma::uword levels, arma::uword branching);

// Self-describing decimal text dump (dims plus complex entries), for
// cross-implementation comparison; load_codebook reverses it.
void save_codebook(const HierarchicalCodebook &cb, std::ostream &os);
HierarchicalCodebook load_codebook(std::istream &is);

} // namespace mmcest

#endif
