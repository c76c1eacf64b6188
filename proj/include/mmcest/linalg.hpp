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

#ifndef mmcest_linalg_H
#define mmcest_linalg_H

#include <armadillo>
#include <complex>

namespace mmcest
{

using cx_double = arma::cx_double;
using cx_vec = arma::cx_vec;
using cx_mat = arma::cx_mat;

namespace linalg
{

// Result of a thin singular value decomposition, a = u * diagmat(s) * v.t()
struct SvdResult
{
    cx_mat u;    // left singular vectors, a.n_rows x r
    arma::vec s; // singular values, non-negative, non-increasing, length r = min(rows, cols)
    cx_mat v;    // right singular vectors, a.n_cols x r
};

// Kronecker product, (a.n_rows * b.n_rows) x (a.n_cols * b.n_cols)
cx_mat kron(const cx_mat &a, const cx_mat &b);

// Column-wise Kronecker product; a and b must have the same number of columns
cx_mat khatri_rao(const cx_mat &a, const cx_mat &b);

// Element-wise product; a and b must have identical dimensions
cx_mat hadamard(const cx_mat &a, const cx_mat &b);

// Column-stacking of a into a vector of length n_rows * n_cols
cx_vec vec(const cx_mat &a);

// Inverse of vec; v.n_elem must equal n_rows * n_cols
cx_mat unvec(const cx_vec &v, arma::uword n_rows, arma::uword n_cols);

// Conjugate transpose
cx_mat hermitian(const cx_mat &a);

// Frobenius norm
double frobenius_norm(const cx_mat &a);

// Thin SVD; throws std::runtime_error if the backend fails to converge
SvdResult svd_decompose(const cx_mat &a);

// Moore-Penrose pseudo-inverse via SVD; singular values below rel_tol * s_max are dropped
cx_mat pinv(const cx_mat &a, double rel_tol = 1e-12);

} // namespace linalg
} // namespace mmcest

#endif
