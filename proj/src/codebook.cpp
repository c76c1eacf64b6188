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

#include "mmcest/codebook.hpp"
#include "mmcest/linalg.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace mmcest
{

// K^e with a sanity cap; the codebooks in use stay far below it
static arma::uword upow(arma::uword base, arma::uword e)
{
    arma::uword r = 1;
    for (arma::uword i = 0; i < e; ++i)
    {
        if (r > (arma::uword(1) << 40))
            throw std::invalid_argument("codebook: branching^levels out of range");
        r *= base;
    }
    return r;
}

const cx_mat &HierarchicalCodebook::mat(arma::uword level, arma::uword subset) const
{
    if (level < 1 || level > mats.size())
        throw std::invalid_argument("HierarchicalCodebook: level out of range");
    const auto &row = mats[level - 1];
    if (subset < 1 || subset > row.size())
        throw std::invalid_argument("HierarchicalCodebook: subset out of range");
    return row[subset - 1];
}

// Folded-angle membership is decided in exact integer arithmetic: grid point u
// folds to psi = 2*pi*min(u, n-u)/n, and beam g at level s owns the interval
// (pi*(g-1)/K^s, pi*g/K^s], with psi = 0 belonging to beam 1. This realizes the
// boundary tie-break toward the lower-indexed beam without floating-point edge
// cases.
static bool covers(arma::uword g, arma::uword ks, arma::uword u, arma::uword n)
{
    const arma::uword uf = (u <= n - u) ? u : n - u;
    if (uf == 0)
        return g == 1;
    const arma::uword lhs = 2 * uf * ks; // psi / pi as the fraction lhs / n
    return lhs > (g - 1) * n && lhs <= g * n;
}

static void check_beam_args(arma::uword level, arma::uword subset, arma::uword beam,
                            arma::uword branching, arma::uword num_grid)
{
    if (branching < 2)
        throw std::invalid_argument("codebook: branching must be >= 2");
    if (level < 1)
        throw std::invalid_argument("codebook: level must be >= 1");
    if (num_grid < 2)
        throw std::invalid_argument("codebook: grid too small");
    if (subset < 1 || subset > upow(branching, level - 1))
        throw std::invalid_argument("codebook: subset out of range");
    if (beam < 1 || beam > branching)
        throw std::invalid_argument("codebook: beam out of range");
}

std::vector<arma::uword> coverage_index_set(arma::uword level, arma::uword subset, arma::uword beam,
                                            arma::uword branching, arma::uword num_grid)
{
    check_beam_args(level, subset, beam, branching, num_grid);

    const arma::uword ks = upow(branching, level);
    const arma::uword g = branching * (subset - 1) + beam;

    std::vector<arma::uword> idx;
    for (arma::uword u = 0; u < num_grid; ++u)
        if (covers(g, ks, u, num_grid))
            idx.push_back(u);
    return idx;
}

arma::uword beam_index_of_grid_point(arma::uword level, arma::uword grid_index,
                                     arma::uword branching, arma::uword num_grid)
{
    if (branching < 2 || level < 1 || num_grid < 2)
        throw std::invalid_argument("codebook: bad beam lookup arguments");
    if (grid_index >= num_grid)
        throw std::invalid_argument("codebook: grid index out of range");

    const arma::uword n = num_grid;
    const arma::uword ks = upow(branching, level);
    const arma::uword uf = (grid_index <= n - grid_index) ? grid_index : n - grid_index;
    if (uf == 0)
        return 1;
    return (2 * uf * ks + n - 1) / n; // ceil; boundary points land in the lower beam
}

HierarchicalCodebook build_codebook(const Dictionary &dict, const UlaConfig &ula,
                                    arma::uword levels, arma::uword branching)
{
    if (levels < 1 || branching < 2)
        throw std::invalid_argument("build_codebook: need levels >= 1 and branching >= 2");

    const arma::uword n = dict.grid.num_points;
    if (n != 2 * upow(branching, levels))
        throw std::invalid_argument("build_codebook: grid size must equal 2 * K^S");
    if (dict.atoms.n_rows != ula.num_elements)
        throw std::invalid_argument("build_codebook: dictionary does not match the array");
    const arma::uword expected_atoms = (dict.kind == DictionaryKind::cbp) ? 2 * n : n;
    if (dict.atoms.n_cols != expected_atoms)
        throw std::invalid_argument("build_codebook: dictionary atom count does not match its kind");

    // One least-squares operator shared by every beam solve: f = pinv(A^H) g
    const cx_mat solve_op = linalg::pinv(linalg::hermitian(dict.atoms));

    HierarchicalCodebook cb;
    cb.levels = levels;
    cb.branching = branching;
    cb.num_grid = n;
    cb.mats.resize(levels);

    for (arma::uword s = 1; s <= levels; ++s)
    {
        const arma::uword subsets = upow(branching, s - 1);
        cb.mats[s - 1].reserve(subsets);
        for (arma::uword k = 1; k <= subsets; ++k)
        {
            cx_mat targets(dict.atoms.n_cols, branching, arma::fill::zeros);
            for (arma::uword m = 1; m <= branching; ++m)
                for (arma::uword u : coverage_index_set(s, k, m, branching, n))
                    targets(u, m - 1) = 1.0; // derivative rows (cbp) stay pinned at zero

            cx_mat f = solve_op * targets;
            const double nrm = linalg::frobenius_norm(f);
            if (!(nrm > 0.0))
                throw std::runtime_error("build_codebook: degenerate beam solve");
            const double scale = static_cast<double>(branching) / nrm;
            f *= scale;
            if (s == 1 && k == 1)
                cb.normalization_constant = scale;
            cb.mats[s - 1].push_back(std::move(f));
        }
    }
    return cb;
}

void save_codebook(const HierarchicalCodebook &cb, std::ostream &os)
{
    if (cb.mats.empty() || cb.mats[0].empty())
        throw std::invalid_argument("save_codebook: empty codebook");

    char buf[80];
    os << "mmcest-codebook 1\n";
    std::snprintf(buf, sizeof(buf), "%.17g", cb.normalization_constant);
    os << cb.levels << ' ' << cb.branching << ' ' << cb.num_grid << ' '
       << cb.mats[0][0].n_rows << ' ' << buf << '\n';

    for (arma::uword s = 1; s <= cb.levels; ++s)
        for (arma::uword k = 1; k <= cb.mats[s - 1].size(); ++k)
        {
            const cx_mat &f = cb.mat(s, k);
            os << s << ' ' << k << ' ' << f.n_rows << ' ' << f.n_cols << '\n';
            for (arma::uword r = 0; r < f.n_rows; ++r)
            {
                for (arma::uword c = 0; c < f.n_cols; ++c)
                {
                    std::snprintf(buf, sizeof(buf), "%.17g %.17g", f(r, c).real(), f(r, c).imag());
                    os << (c ? " " : "") << buf;
                }
                os << '\n';
            }
        }
}

HierarchicalCodebook load_codebook(std::istream &is)
{
    std::string magic;
    int version = 0;
    if (!(is >> magic >> version) || magic != "mmcest-codebook" || version != 1)
        throw std::invalid_argument("load_codebook: unrecognized header");

    HierarchicalCodebook cb;
    arma::uword n_ant = 0;
    if (!(is >> cb.levels >> cb.branching >> cb.num_grid >> n_ant >> cb.normalization_constant))
        throw std::invalid_argument("load_codebook: truncated header");

    cb.mats.resize(cb.levels);
    for (arma::uword s = 1; s <= cb.levels; ++s)
    {
        const arma::uword subsets = upow(cb.branching, s - 1);
        cb.mats[s - 1].resize(subsets);
        for (arma::uword k = 1; k <= subsets; ++k)
        {
            arma::uword rs = 0, rk = 0, rows = 0, cols = 0;
            if (!(is >> rs >> rk >> rows >> cols) || rs != s || rk != k || rows != n_ant || cols != cb.branching)
                throw std::invalid_argument("load_codebook: malformed block header");
            cx_mat f(rows, cols);
            for (arma::uword r = 0; r < rows; ++r)
                for (arma::uword c = 0; c < cols; ++c)
                {
                    double re = 0, im = 0;
                    if (!(is >> re >> im))
                        throw std::invalid_argument("load_codebook: truncated block");
                    f(r, c) = {re, im};
                }
            cb.mats[s - 1][k - 1] = std::move(f);
        }
    }
    return cb;
}

} // namespace mmcest
