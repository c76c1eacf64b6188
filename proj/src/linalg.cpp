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

#include "mmcest/linalg.hpp"

#include <stdexcept>

namespace mmcest
{
namespace linalg
{

cx_mat kron(const cx_mat &a, const cx_mat &b)
{
    return arma::kron(a, b);
}

cx_mat khatri_rao(const cx_mat &a, const cx_mat &b)
{
    if (a.n_cols != b.n_cols)
        throw std::invalid_argument("khatri_rao: column counts differ");

    cx_mat out(a.n_rows * b.n_rows, a.n_cols);
    for (arma::uword c = 0; c < a.n_cols; ++c)
        out.col(c) = arma::kron(a.col(c), b.col(c));
    return out;
}

cx_mat hadamard(const cx_mat &a, const cx_mat &b)
{
    if (a.n_rows != b.n_rows || a.n_cols != b.n_cols)
        throw std::invalid_argument("hadamard: dimensions differ");

    return a % b;
}

cx_vec vec(const cx_mat &a)
{
    return arma::vectorise(a);
}

cx_mat unvec(const cx_vec &v, arma::uword n_rows, arma::uword n_cols)
{
    if (v.n_elem != n_rows * n_cols)
        throw std::invalid_argument("unvec: length does not match target shape");

    return arma::reshape(v, n_rows, n_cols);
}

cx_mat hermitian(const cx_mat &a)
{
    return a.t();
}

double frobenius_norm(const cx_mat &a)
{
    return arma::norm(a, "fro");
}

SvdResult svd_decompose(const cx_mat &a)
{
    SvdResult r;
    if (!arma::svd_econ(r.u, r.s, r.v, a, "both", "std"))
        throw std::runtime_error("svd_decompose: backend did not converge");
    return r;
}

cx_mat pinv(const cx_mat &a, double rel_tol)
{
    if (rel_tol < 0.0)
        throw std::invalid_argument("pinv: negative tolerance");

    const SvdResult r = svd_decompose(a);
    const double s_max = r.s.n_elem > 0 ? r.s.max() : 0.0;
    const double cut = rel_tol * s_max;

    arma::vec s_inv(r.s.n_elem, arma::fill::zeros);
    for (arma::uword i = 0; i < r.s.n_elem; ++i)
        if (r.s(i) > cut && r.s(i) > 0.0)
            s_inv(i) = 1.0 / r.s(i);

    return r.v * arma::diagmat(s_inv) * r.u.t();
}

} // namespace linalg
} // namespace mmcest
