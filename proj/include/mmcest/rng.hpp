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

#ifndef mmcest_rng_H
#define mmcest_rng_H

#include <complex>
#include <cstdint>
#include <random>

namespace mmcest
{

// Deterministic random source for reproducible Monte Carlo runs. Gaussian draws
// use Box-Muller on top of the raw mt19937_64 stream, so the sequence of values
// is pinned by the seed alone and does not depend on standard library internals.
class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // uniform double in [0, 1)
    double uniform();

    // uniform double in (0, 1], safe as a log() argument
    double uniform_pos();

    // uniform integer in [0, n-1]; n must be >= 1
    std::uint64_t uniform_index(std::uint64_t n);

    // pair of independent standard normal values
    void gaussian_pair(double &z0, double &z1);

    // circularly-symmetric complex Gaussian with E|z|^2 = variance
    std::complex<double> complex_gaussian(double variance);

  private:
    std::mt19937_64 eng_;
};

// splitmix64 finalizer, used to decorrelate structured seed inputs
std::uint64_t mix64(std::uint64_t x);

// Per-trial seed derived from the master seed and the (snr_index, trial_id)
// pair, so each trial owns an independent stream regardless of scheduling.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t snr_index, std::uint64_t trial_id);

} // namespace mmcest

#endif
