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

#include "mmcest/channel_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mmcest
{

static std::vector<PathParams> sort_by_gain(std::vector<PathParams> paths)
{
    std::stable_sort(paths.begin(), paths.end(), [](const PathParams &a, const PathParams &b) {
        return std::abs(a.gain) > std::abs(b.gain);
    });
    return paths;
}

ChannelRealization synthesize_channel(const std::vector<PathParams> &paths, const UlaConfig &bs, const UlaConfig &ms)
{
    if (paths.empty())
        throw std::invalid_argument("synthesize_channel: empty path list");

    const double scale = std::sqrt(static_cast<double>(bs.num_elements) * static_cast<double>(ms.num_elements) /
                                   static_cast<double>(paths.size()));

    ChannelRealization ch;
    ch.h.zeros(ms.num_elements, bs.num_elements);
    for (const PathParams &p : paths)
        ch.h += (scale * p.gain) * steering_vector(ms, p.aoa_az) * steering_vector(bs, p.aod_az).t();
    ch.paths = sort_by_gain(paths);
    return ch;
}

std::vector<PathParams> sample_paths(const PathSamplerConfig &cfg, Rng &rng)
{
    arma::uword count = cfg.num_paths;
    if (cfg.randomize_num_paths)
        count = 1 + rng.uniform_index(6);
    if (count < 1)
        throw std::invalid_argument("sample_paths: num_paths must be >= 1");
    if (cfg.angle_mode == AngleMode::on_grid && cfg.grid.num_points < 2)
        throw std::invalid_argument("sample_paths: on_grid mode needs an estimation grid");

    std::vector<PathParams> paths(count);
    for (PathParams &p : paths)
    {
        if (cfg.gain_distribution == GainDistribution::unit_gain)
            p.gain = std::polar(1.0, 2.0 * M_PI * rng.uniform());
        else
            p.gain = rng.complex_gaussian(1.0);

        if (cfg.angle_mode == AngleMode::on_grid)
        {
            p.aod_az = cfg.grid.angles(rng.uniform_index(cfg.grid.num_points));
            p.aoa_az = cfg.grid.angles(rng.uniform_index(cfg.grid.num_points));
        }
        else
        {
            p.aod_az = 2.0 * M_PI * rng.uniform();
            p.aoa_az = 2.0 * M_PI * rng.uniform();
        }
        p.aod_el = M_PI * (rng.uniform() - 0.5);
        p.aoa_el = M_PI * (rng.uniform() - 0.5);
    }

    if (cfg.gain_distribution == GainDistribution::complex_normal)
    {
        double sum_sq = 0.0;
        for (const PathParams &p : paths)
            sum_sq += std::norm(p.gain);
        const double s = std::sqrt(static_cast<double>(count) / sum_sq);
        for (PathParams &p : paths)
            p.gain *= s;
    }

    return sort_by_gain(std::move(paths));
}

cx_mat measure(const cx_mat &h, const cx_mat &f, const cx_mat &w, double power, double noise_var, Rng &rng)
{
    if (f.n_rows != h.n_cols)
        throw std::invalid_argument("measure: precoder rows do not match transmit antennas");
    if (w.n_rows != h.n_rows)
        throw std::invalid_argument("measure: combiner rows do not match receive antennas");
    if (!(power >= 0.0) || !(noise_var >= 0.0))
        throw std::invalid_argument("measure: power and noise_var must be non-negative");

    cx_mat y = std::sqrt(power) * (w.t() * h * f);
    if (noise_var > 0.0)
    {
        cx_mat n(h.n_rows, f.n_cols);
        for (arma::uword c = 0; c < n.n_cols; ++c)
            for (arma::uword r = 0; r < n.n_rows; ++r)
                n(r, c) = rng.complex_gaussian(noise_var);
        y += w.t() * n;
    }
    return y;
}

double noise_var_for_snr(const cx_mat &h, double power, double snr_linear)
{
    if (!(power > 0.0) || !(snr_linear > 0.0))
        throw std::invalid_argument("noise_var_for_snr: power and snr_linear must be positive");

    const double fro = arma::norm(h, "fro");
    if (fro == 0.0)
        throw std::invalid_argument("noise_var_for_snr: zero channel has no defined SNR");

    return power * fro * fro /
           (static_cast<double>(h.n_cols) * static_cast<double>(h.n_rows) * snr_linear);
}

void write_paths(const std::vector<PathParams> &paths, std::ostream &os)
{
    char line[256];
    for (const PathParams &p : paths)
    {
        std::snprintf(line, sizeof(line), "%.17g %.17g %.17g %.17g %.17g %.17g\n",
                      p.gain.real(), p.gain.imag(), p.aod_az, p.aoa_az, p.aod_el, p.aoa_el);
        os << line;
    }
}

std::vector<PathParams> read_paths(std::istream &is)
{
    std::vector<PathParams> paths;
    std::string line;
    while (std::getline(is, line))
    {
        if (line.empty())
            continue;
        std::istringstream ls(line);
        double re = 0, im = 0;
        PathParams p;
        if (!(ls >> re >> im >> p.aod_az >> p.aoa_az >> p.aod_el >> p.aoa_el))
            throw std::invalid_argument("read_paths: malformed record: " + line);
        p.gain = {re, im};
        paths.push_back(p);
    }
    return paths;
}

} // namespace mmcest
