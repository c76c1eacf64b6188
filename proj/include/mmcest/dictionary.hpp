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

#ifndef mmcest_dictionary_H
#define mmcest_dictionary_H

#include "mmcest/array_geometry.hpp"

namespace mmcest
{

enum class DictionaryKind
{
    grid, // steering atoms at the grid angles only
    cbp   // steering atoms plus scaled derivative atoms (first-order off-grid interpolation)
};

struct Dictionary
{
    DictionaryKind kind = DictionaryKind::grid;
    AngleGrid grid;
    // grid kind: n_ant x n, column u = a(phi_u)
    // cbp kind:  n_ant x 2n, column u = a(phi_u), column n+u = delta_phi * a'(phi_u)
    cx_mat atoms;
    double delta_phi = 0.0; // detuning scale of the derivative block; 0 for grid kind
};

Dictionary build_grid_dictionary(const UlaConfig &ula, const AngleGrid &grid);

// |delta_phi| must not exceed pi / grid.num_points (half the one-sided grid spacing)
Dictionary build_cbp_dictionary(const UlaConfig &ula, const AngleGrid &grid, double delta_phi);

// Convenience overload using the default detuning delta_phi = pi / grid.num_points
Dictionary build_cbp_dictionary(const UlaConfig &ula, const AngleGrid &grid);

// max_{i != j} |<a_i, a_j>| / (||a_i|| * ||a_j||) over non-zero columns
double mutual_coherence(const cx_mat &atoms);

} // namespace mmcest

#endif
