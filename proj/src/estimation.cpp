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

#include "mmcest/estimation.hpp"
#include "mmcest/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mmcest
{

namespace
{

enum class Scheme
{
    none,
    sequential,
    joint
};

// Everything known about previously detected paths while searching the next one
struct Prior
{
    Scheme scheme = Scheme::none;
    std::vector<arma::uvec> bs_cols; // sequential: dictionary columns per path
    std::vector<arma::uvec> ms_cols;
    cx_mat bs_atoms; // joint: steering columns at the detected angles
    cx_mat ms_atoms;
};

arma::uword beam_count(arma::uword branching, arma::uword levels)
{
    arma::uword r = 1;
    for (arma::uword i = 0; i < levels; ++i)
        r *= branching;
    return r;
}

// Stacked beam-pair measurements live in the image of (F^T kron W^H); a path
// with steering pair (a_bs, a_ms) contributes along (F^T conj(a_bs)) kron
// (W^H a_ms). Removing prior paths therefore projects onto the complement of
// those directions, mapped through whatever F and W are in use at this round.
cx_vec purify(const cx_vec &y, const cx_mat &f, const cx_mat &w,
              const Dictionary &bs_dict, const Dictionary &ms_dict, const Prior &prior)
{
    if (prior.scheme == Scheme::sequential)
    {
        cx_vec r = y;
        for (std::size_t p = 0; p < prior.bs_cols.size(); ++p)
        {
            const cx_mat fb = f.st() * arma::conj(bs_dict.atoms.cols(prior.bs_cols[p]));
            const cx_mat wm = w.t() * ms_dict.atoms.cols(prior.ms_cols[p]);
            r = project_out(r, linalg::kron(fb, wm));
        }
        return r;
    }
    if (prior.scheme == Scheme::joint && prior.bs_atoms.n_cols > 0)
    {
        // One direction per detected path, projected out in a single shot.
        // Summing the outer products first and projecting the lone combined
        // direction would leave most of each contribution behind as soon as
        // the true gains differ from the implied equal weights.
        cx_mat v(y.n_elem, prior.bs_atoms.n_cols);
        for (arma::uword p = 0; p < prior.bs_atoms.n_cols; ++p)
        {
            const cx_mat vp = w.t() * prior.ms_atoms.col(p) * prior.bs_atoms.col(p).t() * f;
            v.col(p) = linalg::vec(vp);
        }
        return project_out(y, v);
    }
    return y;
}

// Row-major scan with strict improvement keeps the lexicographically smallest
// (row, col) among tied maxima
void power_argmax(const arma::mat &p, arma::uword &row, arma::uword &col)
{
    row = 0;
    col = 0;
    double best = -1.0;
    for (arma::uword r = 0; r < p.n_rows; ++r)
        for (arma::uword c = 0; c < p.n_cols; ++c)
            if (p(r, c) > best)
            {
                best = p(r, c);
                row = r;
                col = c;
            }
}

void subset_and_beam_of(arma::uword global_beam, arma::uword branching,
                        arma::uword &subset, arma::uword &beam)
{
    subset = (global_beam - 1) / branching + 1;
    beam = (global_beam - 1) % branching + 1;
}

// Grid indices searched at the refinement round: the combined coverage of the
// winning final-level subset, padded by one grid step per flank so points a
// beam-selection rounding error away stay reachable, widened by the
// final-level beams already claimed by earlier paths. Searching only the
// winning beam's own coverage would make this round a no-op almost
// everywhere: a final-level beam covers a single folded grid point, so the
// measurement could never overturn a near-tie lost at the last level.
std::vector<arma::uword> refine_candidates(const HierarchicalCodebook &cb,
                                           arma::uword subset,
                                           const std::vector<arma::uword> &prior_grid_idx)
{
    const arma::uword n = cb.num_grid;
    arma::uword lo = n / 2;
    arma::uword hi = 0;
    for (arma::uword m = 1; m <= cb.branching; ++m)
        for (arma::uword u : coverage_index_set(cb.levels, subset, m, cb.branching, n))
        {
            const arma::uword uf = std::min(u, n - u);
            lo = std::min(lo, uf);
            hi = std::max(hi, uf);
        }
    if (lo > 0)
        --lo;
    if (hi < n / 2)
        ++hi;
    std::vector<arma::uword> cand;
    for (arma::uword uf = lo; uf <= hi; ++uf)
    {
        cand.push_back(uf);
        if (uf != 0 && uf != n - uf)
            cand.push_back(n - uf);
    }
    for (arma::uword u : prior_grid_idx)
    {
        const arma::uword g = beam_index_of_grid_point(cb.levels, u, cb.branching, cb.num_grid);
        arma::uword ps = 0, pm = 0;
        subset_and_beam_of(g, cb.branching, ps, pm);
        const auto cov = coverage_index_set(cb.levels, ps, pm, cb.branching, cb.num_grid);
        cand.insert(cand.end(), cov.begin(), cov.end());
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    return cand;
}

arma::uvec to_uvec(const std::vector<arma::uword> &v)
{
    arma::uvec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out(i) = v[i];
    return out;
}

EstimateResult descend_one(const cx_mat &h,
                           const HierarchicalCodebook &fcb, const HierarchicalCodebook &wcb,
                           const Dictionary &bs_dict, const Dictionary &ms_dict,
                           double power, double noise_var, Rng &rng, const Prior &prior,
                           const std::vector<arma::uword> &prior_bs_grid,
                           const std::vector<arma::uword> &prior_ms_grid,
                           arma::uvec &bs_subsets, arma::uvec &ms_subsets)
{
    const arma::uword num_levels = fcb.levels;
    const arma::uword branching = fcb.branching;
    const arma::uword n = fcb.num_grid;

    EstimateResult res;
    arma::uword k_bs = 1, k_ms = 1;
    arma::uword m_bs = 1, m_ms = 1;
    bs_subsets.set_size(num_levels);
    ms_subsets.set_size(num_levels);

    for (arma::uword s = 1; s <= num_levels; ++s)
    {
        bs_subsets(s - 1) = k_bs;
        ms_subsets(s - 1) = k_ms;
        const cx_mat &f = fcb.mat(s, k_bs);
        const cx_mat &w = wcb.mat(s, k_ms);

        cx_vec y = linalg::vec(measure(h, f, w, power, noise_var, rng));
        y = purify(y, f, w, bs_dict, ms_dict, prior);
        const arma::mat pw = arma::square(arma::abs(linalg::unvec(y, w.n_cols, f.n_cols)));

        arma::uword r = 0, c = 0;
        power_argmax(pw, r, c);
        m_ms = r + 1;
        m_bs = c + 1;

        StageTrace tr;
        tr.level = s;
        tr.bs_subset = k_bs;
        tr.ms_subset = k_ms;
        tr.bs_beam = m_bs;
        tr.ms_beam = m_ms;
        tr.measurement_power = pw;
        res.trace.push_back(std::move(tr));

        k_bs = branching * (k_bs - 1) + m_bs;
        k_ms = branching * (k_ms - 1) + m_ms;
    }

    const std::vector<arma::uword> cand_bs =
        refine_candidates(fcb, bs_subsets(num_levels - 1), prior_bs_grid);
    const std::vector<arma::uword> cand_ms =
        refine_candidates(wcb, ms_subsets(num_levels - 1), prior_ms_grid);

    const cx_mat f_ref = bs_dict.atoms.cols(to_uvec(cand_bs));
    const cx_mat w_ref = ms_dict.atoms.cols(to_uvec(cand_ms));
    cx_vec zy = linalg::vec(measure(h, f_ref, w_ref, power, noise_var, rng));
    zy = purify(zy, f_ref, w_ref, bs_dict, ms_dict, prior);
    const cx_mat z = linalg::unvec(zy, w_ref.n_cols, f_ref.n_cols);

    arma::uword r = 0, c = 0;
    power_argmax(arma::square(arma::abs(z)), r, c);

    const arma::uword u_bs = cand_bs[c];
    const arma::uword u_ms = cand_ms[r];
    const arma::uword u_bs_fold = std::min(u_bs, n - u_bs);
    const arma::uword u_ms_fold = std::min(u_ms, n - u_ms);

    res.aod = bs_dict.grid.angles(u_bs_fold);
    res.aoa = ms_dict.grid.angles(u_ms_fold);
    res.aod_grid_index = u_bs_fold;
    res.aoa_grid_index = u_ms_fold;
    res.gain_magnitude = std::abs(z(r, c)) /
                         (std::sqrt(power) * std::sqrt(double(h.n_rows) * double(h.n_cols)));
    res.aod_candidates.reserve(cand_bs.size());
    for (arma::uword u : cand_bs)
        res.aod_candidates.push_back(bs_dict.grid.angles(u));
    res.aoa_candidates.reserve(cand_ms.size());
    for (arma::uword u : cand_ms)
        res.aoa_candidates.push_back(ms_dict.grid.angles(u));
    return res;
}

void check_inputs(const cx_mat &h,
                  const HierarchicalCodebook &fcb, const HierarchicalCodebook &wcb,
                  const Dictionary &bs_dict, const Dictionary &ms_dict,
                  double power, double noise_var, arma::uword num_paths)
{
    if (fcb.mats.empty() || wcb.mats.empty())
        throw std::invalid_argument("estimation: empty codebook");
    if (fcb.branching != wcb.branching || fcb.levels != wcb.levels)
        throw std::invalid_argument("estimation: codebooks must share branching and depth");
    if (fcb.num_grid != bs_dict.grid.num_points || wcb.num_grid != ms_dict.grid.num_points)
        throw std::invalid_argument("estimation: codebook grid does not match its dictionary");
    if (h.n_rows != ms_dict.atoms.n_rows || h.n_cols != bs_dict.atoms.n_rows)
        throw std::invalid_argument("estimation: channel dimensions do not match the dictionaries");
    if (fcb.mat(1, 1).n_rows != h.n_cols || wcb.mat(1, 1).n_rows != h.n_rows)
        throw std::invalid_argument("estimation: codebook dimensions do not match the channel");
    if (!(power > 0.0) || !std::isfinite(power))
        throw std::invalid_argument("estimation: power must be positive and finite");
    if (noise_var < 0.0 || !std::isfinite(noise_var))
        throw std::invalid_argument("estimation: noise variance must be nonnegative and finite");
    if (num_paths < 1)
        throw std::invalid_argument("estimation: need at least one path");
    if (num_paths > beam_count(fcb.branching, fcb.levels))
        throw std::invalid_argument("estimation: more paths than final-level beams");
}

// Dictionary columns holding one detected path's support: its folded steering
// column, plus the matching derivative column when the dictionary carries one.
// Wider column sets are counterproductive here: steering atoms depend on the
// angle only through its cosine, so a coverage window's mirrors collapse onto
// the same directions and F^T maps K independent directions onto all of C^K,
// which would turn the projection into annihilation of the whole measurement.
arma::uvec path_span_columns(const Dictionary &dict, arma::uword grid_index)
{
    std::vector<arma::uword> cols{grid_index};
    if (dict.kind == DictionaryKind::cbp)
        cols.push_back(grid_index + dict.grid.num_points);
    return to_uvec(cols);
}

MultipathEstimate run_multipath(const cx_mat &h,
                                const HierarchicalCodebook &fcb, const HierarchicalCodebook &wcb,
                                const Dictionary &bs_dict, const Dictionary &ms_dict,
                                arma::uword num_paths, double power, double noise_var,
                                Rng &rng, Scheme scheme)
{
    check_inputs(h, fcb, wcb, bs_dict, ms_dict, power, noise_var, num_paths);

    MultipathEstimate out;
    out.bs_index_table.set_size(num_paths, fcb.levels);
    out.ms_index_table.set_size(num_paths, fcb.levels);

    Prior prior;
    prior.scheme = scheme;
    std::vector<arma::uword> prior_bs_grid;
    std::vector<arma::uword> prior_ms_grid;

    for (arma::uword i = 0; i < num_paths; ++i)
    {
        arma::uvec bs_sub, ms_sub;
        EstimateResult res = descend_one(h, fcb, wcb, bs_dict, ms_dict, power, noise_var, rng,
                                         prior, prior_bs_grid, prior_ms_grid, bs_sub, ms_sub);
        out.bs_index_table.row(i) = bs_sub.t();
        out.ms_index_table.row(i) = ms_sub.t();

        if (scheme == Scheme::sequential)
        {
            prior.bs_cols.push_back(path_span_columns(bs_dict, res.aod_grid_index));
            prior.ms_cols.push_back(path_span_columns(ms_dict, res.aoa_grid_index));
        }
        else if (scheme == Scheme::joint)
        {
            prior.bs_atoms = arma::join_rows(prior.bs_atoms, bs_dict.atoms.col(res.aod_grid_index));
            prior.ms_atoms = arma::join_rows(prior.ms_atoms, ms_dict.atoms.col(res.aoa_grid_index));
        }
        prior_bs_grid.push_back(res.aod_grid_index);
        prior_ms_grid.push_back(res.aoa_grid_index);
        out.paths.push_back(std::move(res));
    }
    return out;
}

} // namespace

cx_vec project_out(const cx_vec &y, const cx_mat &v)
{
    if (v.n_cols == 0)
        return y;
    if (v.n_rows != y.n_elem)
        throw std::invalid_argument("project_out: dimension mismatch");
    return y - v * (linalg::pinv(v) * y);
}

EstimateResult estimate_single_path(const cx_mat &h,
                                    const HierarchicalCodebook &fcb, const HierarchicalCodebook &wcb,
                                    const Dictionary &bs_dict, const Dictionary &ms_dict,
                                    double power, double noise_var, Rng &rng)
{
    check_inputs(h, fcb, wcb, bs_dict, ms_dict, power, noise_var, 1);
    Prior prior;
    arma::uvec bs_sub, ms_sub;
    return descend_one(h, fcb, wcb, bs_dict, ms_dict, power, noise_var, rng,
                       prior, {}, {}, bs_sub, ms_sub);
}

MultipathEstimate estimate_multipath_sequential(const cx_mat &h,
                                                const HierarchicalCodebook &fcb, const HierarchicalCodebook &wcb,
                                                const Dictionary &bs_dict, const Dictionary &ms_dict,
                                                arma::uword num_paths, double power, double noise_var, Rng &rng)
{
    return run_multipath(h, fcb, wcb, bs_dict, ms_dict, num_paths, power, noise_var, rng,
                         Scheme::sequential);
}

MultipathEstimate estimate_multipath_joint(const cx_mat &h,
                                           const HierarchicalCodebook &fcb, const HierarchicalCodebook &wcb,
                                           const Dictionary &bs_dict, const Dictionary &ms_dict,
                                           arma::uword num_paths, double power, double noise_var, Rng &rng)
{
    return run_multipath(h, fcb, wcb, bs_dict, ms_dict, num_paths, power, noise_var, rng,
                         Scheme::joint);
}

} // namespace mmcest
