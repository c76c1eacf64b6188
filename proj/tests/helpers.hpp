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

#ifndef mmcest_tests_helpers_H
#define mmcest_tests_helpers_H

#include "mmcest/linalg.hpp"
#include "mmcest/rng.hpp"

namespace mmcest_tests
{

constexpr double pi = 3.14159265358979323846;

// deterministic dense complex test matrix, entries ~ CN(0,1)
inline mmcest::cx_mat random_cx_mat(arma::uword rows, arma::uword cols, std::uint64_t seed)
{
    mmcest::Rng rng(seed);
    mmcest::cx_mat m(rows, cols);
    for (arma::uword c = 0; c < cols; ++c)
        for (arma::uword r = 0; r < rows; ++r)
            m(r, c) = rng.complex_gaussian(1.0);
    return m;
}

inline mmcest::cx_vec random_cx_vec(arma::uword n, std::uint64_t seed)
{
    return mmcest::cx_vec(random_cx_mat(n, 1, seed));
}

inline double max_abs_diff(const mmcest::cx_mat &a, const mmcest::cx_mat &b)
{
    return arma::abs(a - b).max();
}

} // namespace mmcest_tests

#endif
