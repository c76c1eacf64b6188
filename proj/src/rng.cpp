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

#include "mmcest/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace mmcest
{

double Rng::uniform()
{
    // top 53 bits -> [0, 1)
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double Rng::uniform_pos()
{
    return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
}

std::uint64_t Rng::uniform_index(std::uint64_t n)
{
    if (n == 0)
        throw std::invalid_argument("uniform_index: empty range");
    // modulo bias is below n / 2^64, irrelevant for the small ranges used here
    return eng_() % n;
}

void Rng::gaussian_pair(double &z0, double &z1)
{
    const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
    const double t = 2.0 * M_PI * uniform();
    z0 = r * std::cos(t);
    z1 = r * std::sin(t);
}

std::complex<double> Rng::complex_gaussian(double variance)
{
    if (variance < 0.0)
        throw std::invalid_argument("complex_gaussian: negative variance");
    double z0 = 0.0, z1 = 0.0;
    gaussian_pair(z0, z1);
    const double s = std::sqrt(0.5 * variance);
    return {s * z0, s * z1};
}

std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t snr_index, std::uint64_t trial_id)
{
    std::uint64_t h = mix64(master_seed);
    h = mix64(h ^ (snr_index + 0x517cc1b727220a95ULL));
    h = mix64(h ^ (trial_id + 0x2545f4914f6cdd1dULL));
    return h;
}

} // namespace mmcest
