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

#include "mmcest/array_geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace mmcest
{

static void check_ula(const UlaConfig &cfg)
{
    if (cfg.num_elements < 1)
        throw std::invalid_argument("UlaConfig: num_elements must be >= 1");
    if (!(cfg.spacing_wavelengths > 0.0) || !std::isfinite(cfg.spacing_wavelengths))
        throw std::invalid_argument("UlaConfig: spacing_wavelengths must be positive and finite");
}

static void check_angle(double phi_rad)
{
    if (!std::isfinite(phi_rad) || phi_rad < 0.0 || phi_rad > 2.0 * M_PI)
        throw std::invalid_argument("angle must lie in [0, 2*pi]");
}

cx_vec steering_vector(const UlaConfig &cfg, double phi_rad)
{
    check_ula(cfg);
    check_angle(phi_rad);

    const arma::uword n = cfg.num_elements;
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    const double step = 2.0 * M_PI * cfg.spacing_wavelengths * std::cos(phi_rad);

    cx_vec a(n);
    for (arma::uword i = 0; i < n; ++i)
        a(i) = scale * std::polar(1.0, step * static_cast<double>(i));
    return a;
}

cx_vec steering_derivative(const UlaConfig &cfg, double phi_rad)
{
    check_ula(cfg);
    check_angle(phi_rad);

    const arma::uword n = cfg.num_elements;
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    const double step = 2.0 * M_PI * cfg.spacing_wavelengths * std::cos(phi_rad);
    // d/dphi of exp(j * 2*pi*d*n * cos(phi)) pulls down -j * 2*pi*d*n * sin(phi)
    const cx_double factor(0.0, -2.0 * M_PI * cfg.spacing_wavelengths * std::sin(phi_rad));

    cx_vec b(n);
    for (arma::uword i = 0; i < n; ++i)
        b(i) = scale * factor * static_cast<double>(i) * std::polar(1.0, step * static_cast<double>(i));
    return b;
}

AngleGrid make_grid(arma::uword num_points)
{
    if (num_points < 2)
        throw std::invalid_argument("make_grid: need at least 2 points");

    AngleGrid g;
    g.num_points = num_points;
    g.angles.set_size(num_points);
    for (arma::uword i = 0; i < num_points; ++i)
        g.angles(i) = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(num_points);
    return g;
}

double fold_angle(double phi_rad)
{
    check_angle(phi_rad);
    return std::min(phi_rad, 2.0 * M_PI - phi_rad);
}

} // namespace mmcest
