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

#ifndef mmcest_array_geometry_H
#define mmcest_array_geometry_H

#include "mmcest/linalg.hpp"

namespace mmcest
{

// Uniform linear array along a line, azimuth-only
struct UlaConfig
{
    arma::uword num_elements = 1;     // number of antennas, >= 1
    double spacing_wavelengths = 0.5; // inter-element distance d / lambda
};

// Uniform azimuth estimation grid over [0, 2*pi)
struct AngleGrid
{
    arma::uword num_points = 0;
    arma::vec angles; // angles[i] = 2*pi*i / num_points, strictly increasing
};

// Unit-norm array response, element n = (1/sqrt(N)) * exp(j*2*pi*(d/lambda)*n*cos(phi));
// phi_rad must lie in [0, 2*pi]
cx_vec steering_vector(const UlaConfig &cfg, double phi_rad);

// Derivative of the array response with respect to phi,
// element n = (1/sqrt(N)) * (-j*2*pi*(d/lambda)*n*sin(phi)) * exp(j*2*pi*(d/lambda)*n*cos(phi))
cx_vec steering_derivative(const UlaConfig &cfg, double phi_rad);

// Grid of num_points equally spaced angles; num_points must be >= 2
AngleGrid make_grid(arma::uword num_points);

// min(phi, 2*pi - phi): canonical representative of the cos-ambiguous pair, in [0, pi]
double fold_angle(double phi_rad);

} // namespace mmcest

#endif
