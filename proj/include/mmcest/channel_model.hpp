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

#ifndef mmcest_channel_model_H
#define mmcest_channel_model_H

#include "mmcest/array_geometry.hpp"
#include "mmcest/rng.hpp"

#include <iosfwd>
#include <vector>

namespace mmcest
{

struct PathParams
{
    cx_double gain{0.0, 0.0}; // complex path gain alpha
    double aod_az = 0.0;      // departure azimuth, radians in [0, 2*pi)
    double aoa_az = 0.0;      // arrival azimuth, radians in [0, 2*pi)
    double aod_el = 0.0;      // elevations are carried through but unused by the azimuth-only pipeline
    double aoa_el = 0.0;
};

struct ChannelRealization
{
    cx_mat h;                      // n_ms x n_bs narrowband channel matrix
    std::vector<PathParams> paths; // sorted by descending |gain|
};

enum class GainDistribution
{
    unit_gain,     // |alpha| = 1, uniform random phase
    complex_normal // i.i.d. CN(0,1), then normalized so sum |alpha|^2 = L
};

enum class AngleMode
{
    continuous_uniform, // azimuths uniform over [0, 2*pi)
    on_grid             // azimuths drawn uniformly from the estimation grid
};

struct PathSamplerConfig
{
    arma::uword num_paths = 1;        // fixed path count; ignored when randomize_num_paths is set
    bool randomize_num_paths = false; // draw the path count uniformly from 1..6
    GainDistribution gain_distribution = GainDistribution::complex_normal;
    AngleMode angle_mode = AngleMode::continuous_uniform;
    AngleGrid grid;        // estimation grid, required for on_grid mode
    std::uint64_t seed = 0; // for standalone use; the harness passes a per-trial Rng instead
};

// h = sqrt(n_bs * n_ms / L) * sum_l alpha_l * a_ms(aoa_l) * a_bs(aod_l)^H; paths must be non-empty
ChannelRealization synthesize_channel(const std::vector<PathParams> &paths, const UlaConfig &bs, const UlaConfig &ms);

// Random path list per cfg, sorted by descending |gain|
std::vector<PathParams> sample_paths(const PathSamplerConfig &cfg, Rng &rng);

// One measurement round: sqrt(power) * w^H * h * f + w^H * n, with n i.i.d. CN(0, noise_var)
// of dimensions h.n_rows x f.n_cols (noise enters before the combiner).
// f: n_bs x m precoder columns, w: n_ms x m' combiner columns; result is m' x m.
cx_mat measure(const cx_mat &h, const cx_mat &f, const cx_mat &w, double power, double noise_var, Rng &rng);

// Per-entry noise variance such that power * ||h||_F^2 / (n_bs * n_ms * noise_var) = snr_linear;
// throws for an all-zero channel
double noise_var_for_snr(const cx_mat &h, double power, double snr_linear);

// Line-oriented text records, one path per line:
// re(alpha) im(alpha) aod_az aoa_az aod_el aoa_el
void write_paths(const std::vector<PathParams> &paths, std::ostream &os);
std::vector<PathParams> read_paths(std::istream &is);

} // namespace mmcest

#endif
