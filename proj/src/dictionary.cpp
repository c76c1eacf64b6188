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

#include "mmcest/dictionary.hpp"

#include <cmath>
#include <stdexcept>

namespace mmcest
{

static void check_grid(const AngleGrid &grid)
{
    if (grid.num_points < 2 || grid.angles.n_elem != grid.num_points)
        throw std::invalid_argument("Dictionary: malformed angle grid");
}

Dictionary build_grid_dictionary(const UlaConfig &ula, const AngleGrid &grid)
{
    check_grid(grid);

    Dictionary d;
    d.kind = DictionaryKind::grid;
    d.grid = grid;
    d.delta_phi = 0.0;
    d.atoms.set_size(ula.num_elements, grid.num_points);
    for (arma::uword u = 0; u < grid.num_points; ++u)
        d.atoms.col(u) = steering_vector(ula, grid.angles(u));
    return d;
}

Dictionary build_cbp_dictionary(const UlaConfig &ula, const AngleGrid &grid, double delta_phi)
{
    check_grid(grid);
    const double limit = M_PI / static_cast<double>(grid.num_points);
    if (!std::isfinite(delta_phi) || std::abs(delta_phi) > limit)
        throw std::invalid_argument("build_cbp_dictionary: |delta_phi| must not exceed pi/n");

    Dictionary d;
    d.kind = DictionaryKind::cbp;
    d.grid = grid;
    d.delta_phi = delta_phi;
    const arma::uword n = grid.num_points;
    d.atoms.set_size(ula.num_elements, 2 * n);
    for (arma::uword u = 0; u < n; ++u)
    {
        d.atoms.col(u) = steering_vector(ula, grid.angles(u));
        d.atoms.col(n + u) = delta_phi * steering_derivative(ula, grid.angles(u));
    }
    return d;
}

Dictionary build_cbp_dictionary(const UlaConfig &ula, const AngleGrid &grid)
{
    check_grid(grid);
    return build_cbp_dictionary(ula, grid, M_PI / static_cast<double>(grid.num_points));
}

double mutual_coherence(const cx_mat &atoms)
{
    if (atoms.n_cols < 2)
        throw std::invalid_argument("mutual_coherence: need at least two atoms");

    arma::vec norms(atoms.n_cols);
    for (arma::uword c = 0; c < atoms.n_cols; ++c)
        norms(c) = arma::norm(atoms.col(c));

    double best = 0.0;
    for (arma::uword i = 0; i + 1 < atoms.n_cols; ++i)
    {
        if (norms(i) == 0.0)
            continue; // a zero atom (e.g. derivative at phi = 0) carries no direction
        for (arma::uword j = i + 1; j < atoms.n_cols; ++j)
        {
            if (norms(j) == 0.0)
                continue;
            const double c = std::abs(arma::cdot(atoms.col(i), atoms.col(j))) / (norms(i) * norms(j));
            best = std::max(best, c);
        }
    }
    return best;
}

} // namespace mmcest
