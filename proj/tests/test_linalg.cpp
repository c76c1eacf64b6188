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

#include <doctest.h>

#include "helpers.hpp"
#include "mmcest/linalg.hpp"

#include <stdexcept>

using namespace mmcest;
using mmcest_tests::max_abs_diff;
using mmcest_tests::random_cx_mat;
using mmcest_tests::random_cx_vec;

namespace
{

// quadruple-loop definition, kept independent of the implementation
cx_mat kron_oracle(const cx_mat &a, const cx_mat &b)
{
    cx_mat out(a.n_rows * b.n_rows, a.n_cols * b.n_cols);
    for (arma::uword ar = 0; ar < a.n_rows; ++ar)
        for (arma::uword ac = 0; ac < a.n_cols; ++ac)
            for (arma::uword br = 0; br < b.n_rows; ++br)
                for (arma::uword bc = 0; bc < b.n_cols; ++bc)
                    out(ar * b.n_rows + br, ac * b.n_cols + bc) = a(ar, ac) * b(br, bc);
    return out;
}

void check_moore_penrose(const cx_mat &a, const cx_mat &p, double tol)
{
    const double scale = std::max(1.0, linalg::frobenius_norm(a));
    CHECK(max_abs_diff(a * p * a, a) < tol * scale);
    CHECK(max_abs_diff(p * a * p, p) < tol * std::max(1.0, linalg::frobenius_norm(p)));
    CHECK(max_abs_diff(linalg::hermitian(a * p), a * p) < tol);
    CHECK(max_abs_diff(linalg::hermitian(p * a), p * a) < tol);
}

} // namespace

TEST_CASE("kron: identity, scalar, and random cases against the element oracle")
{
    const cx_mat i2 = arma::eye<cx_mat>(2, 2);
    const cx_mat i3 = arma::eye<cx_mat>(3, 3);
    CHECK(max_abs_diff(linalg::kron(i2, i3), arma::eye<cx_mat>(6, 6)) == 0.0);

    const cx_mat b = random_cx_mat(3, 4, 11);
    cx_mat two(1, 1);
    two(0, 0) = cx_double(2.0, 0.0);
    CHECK(max_abs_diff(linalg::kron(two, b), cx_mat(2.0 * b)) < 1e-15);

    const cx_mat a = random_cx_mat(3, 2, 12);
    const cx_mat c = random_cx_mat(2, 2, 13);
    CHECK(max_abs_diff(linalg::kron(a, c), kron_oracle(a, c)) == 0.0);
}

TEST_CASE("kron: mixed-product identity")
{
    const cx_mat a = random_cx_mat(3, 4, 21);
    const cx_mat b = random_cx_mat(2, 3, 22);
    const cx_mat c = random_cx_mat(4, 2, 23);
    const cx_mat d = random_cx_mat(3, 5, 24);
    const cx_mat lhs = linalg::kron(a, b) * linalg::kron(c, d);
    const cx_mat rhs = linalg::kron(cx_mat(a * c), cx_mat(b * d));
    CHECK(max_abs_diff(lhs, rhs) < 1e-12 * linalg::frobenius_norm(rhs));
}

TEST_CASE("khatri_rao: definition collapse and per-column oracle")
{
    const cx_mat u = random_cx_mat(3, 1, 31);
    const cx_mat v = random_cx_mat(2, 1, 32);
    CHECK(max_abs_diff(linalg::khatri_rao(u, v), linalg::kron(u, v)) == 0.0);

    const cx_mat i2 = arma::eye<cx_mat>(2, 2);
    const cx_mat kr = linalg::khatri_rao(i2, i2);
    REQUIRE(kr.n_rows == 4);
    REQUIRE(kr.n_cols == 2);
    cx_mat expect(4, 2, arma::fill::zeros);
    expect(0, 0) = 1.0; // e1 kron e1
    expect(3, 1) = 1.0; // e2 kron e2
    CHECK(max_abs_diff(kr, expect) == 0.0);

    const cx_mat a = random_cx_mat(3, 4, 33);
    const cx_mat b = random_cx_mat(2, 4, 34);
    const cx_mat out = linalg::khatri_rao(a, b);
    REQUIRE(out.n_rows == 6);
    REQUIRE(out.n_cols == 4);
    for (arma::uword j = 0; j < 4; ++j)
        CHECK(max_abs_diff(out.col(j), linalg::kron(cx_mat(a.col(j)), cx_mat(b.col(j)))) == 0.0);

    CHECK_THROWS_AS(linalg::khatri_rao(random_cx_mat(2, 3, 35), random_cx_mat(2, 4, 36)),
                    std::invalid_argument);
}

TEST_CASE("hadamard: ones, conjugate square, scalar-loop oracle")
{
    const cx_mat a = random_cx_mat(4, 4, 41);
    const cx_mat ones = arma::ones<cx_mat>(4, 4);
    CHECK(max_abs_diff(linalg::hadamard(a, ones), a) == 0.0);

    const cx_mat sq = linalg::hadamard(a, cx_mat(arma::conj(a)));
    for (arma::uword r = 0; r < 4; ++r)
        for (arma::uword c = 0; c < 4; ++c)
        {
            CHECK(sq(r, c).imag() == doctest::Approx(0.0).epsilon(1e-14));
            CHECK(sq(r, c).real() >= 0.0);
            CHECK(sq(r, c).real() == doctest::Approx(std::norm(a(r, c))));
        }

    const cx_mat b = random_cx_mat(4, 4, 42);
    const cx_mat h = linalg::hadamard(a, b);
    for (arma::uword r = 0; r < 4; ++r)
        for (arma::uword c = 0; c < 4; ++c)
            CHECK(h(r, c) == a(r, c) * b(r, c));

    CHECK_THROWS_AS(linalg::hadamard(random_cx_mat(2, 2, 43), random_cx_mat(3, 2, 44)),
                    std::invalid_argument);
}

TEST_CASE("vec/unvec: column stacking and round trip")
{
    const cx_mat i2 = arma::eye<cx_mat>(2, 2);
    const cx_vec v = linalg::vec(i2);
    REQUIRE(v.n_elem == 4);
    CHECK(v(0) == cx_double(1.0, 0.0));
    CHECK(v(1) == cx_double(0.0, 0.0));
    CHECK(v(2) == cx_double(0.0, 0.0));
    CHECK(v(3) == cx_double(1.0, 0.0));

    const cx_mat m = random_cx_mat(5, 3, 51);
    CHECK(max_abs_diff(linalg::unvec(linalg::vec(m), 5, 3), m) == 0.0);

    CHECK_THROWS_AS(linalg::unvec(random_cx_vec(7, 52), 2, 3), std::invalid_argument);
}

TEST_CASE("vec of a triple product matches the kron identity")
{
    const cx_mat a = random_cx_mat(3, 3, 61);
    const cx_mat x = random_cx_mat(3, 3, 62);
    const cx_mat b = random_cx_mat(3, 3, 63);
    const cx_vec lhs = linalg::vec(cx_mat(a * x * b));
    const cx_vec rhs = linalg::kron(cx_mat(b.st()), a) * linalg::vec(x);
    CHECK(max_abs_diff(lhs, rhs) < 1e-12 * arma::norm(rhs));
}

TEST_CASE("pinv: identity, diagonal, and Moore-Penrose conditions")
{
    const cx_mat i4 = arma::eye<cx_mat>(4, 4);
    CHECK(max_abs_diff(linalg::pinv(i4), i4) < 1e-14);

    cx_mat d(2, 2, arma::fill::zeros);
    d(0, 0) = 2.0;
    const cx_mat dp = linalg::pinv(d);
    CHECK(dp(0, 0).real() == doctest::Approx(0.5));
    CHECK(std::abs(dp(1, 1)) == 0.0);

    const cx_mat a = random_cx_mat(20, 8, 71);
    const cx_mat p = linalg::pinv(a);
    CHECK(linalg::frobenius_norm(cx_mat(a * p * a - a)) < 1e-10);
    check_moore_penrose(a, p, 1e-10);

    // rank-deficient: duplicated columns
    cx_mat r = random_cx_mat(6, 4, 72);
    r.col(3) = r.col(1);
    check_moore_penrose(r, linalg::pinv(r), 1e-10);
}

TEST_CASE("pinv: relative cutoff suppresses tiny singular values")
{
    cx_mat d(2, 2, arma::fill::zeros);
    d(0, 0) = 1.0;
    d(1, 1) = 1e-14; // below the default 1e-12 relative cutoff
    const cx_mat p = linalg::pinv(d);
    CHECK(std::abs(p(1, 1)) == 0.0);
    // explicit looser tolerance keeps it
    const cx_mat p2 = linalg::pinv(d, 1e-16);
    CHECK(std::abs(p2(1, 1)) == doctest::Approx(1e14).epsilon(1e-6));
}

TEST_CASE("svd: identity, reconstruction, orthonormality")
{
    const auto si = linalg::svd_decompose(arma::eye<cx_mat>(3, 3));
    REQUIRE(si.s.n_elem == 3);
    for (arma::uword i = 0; i < 3; ++i)
        CHECK(si.s(i) == doctest::Approx(1.0));

    const cx_mat a = random_cx_mat(10, 6, 81);
    const auto r = linalg::svd_decompose(a);
    const cx_mat rebuilt = r.u * arma::diagmat(arma::conv_to<cx_vec>::from(r.s)) * r.v.t();
    CHECK(max_abs_diff(rebuilt, a) < 1e-10 * linalg::frobenius_norm(a));
    CHECK(max_abs_diff(r.u.t() * r.u, arma::eye<cx_mat>(6, 6)) < 1e-12);
    CHECK(max_abs_diff(r.v.t() * r.v, arma::eye<cx_mat>(6, 6)) < 1e-12);
    for (arma::uword i = 0; i + 1 < r.s.n_elem; ++i)
        CHECK(r.s(i) >= r.s(i + 1));
    for (arma::uword i = 0; i < r.s.n_elem; ++i)
        CHECK(r.s(i) >= 0.0);
}

TEST_CASE("frobenius_norm: closed form and trace identity")
{
    const cx_mat ones(2, 2, arma::fill::ones);
    CHECK(linalg::frobenius_norm(ones) == doctest::Approx(2.0));

    const cx_mat a = random_cx_mat(5, 7, 91);
    const double n2 = linalg::frobenius_norm(a) * linalg::frobenius_norm(a);
    const double tr = arma::trace(cx_mat(a.t() * a)).real();
    CHECK(n2 == doctest::Approx(tr).epsilon(1e-12));
}

TEST_CASE("hermitian: conjugate transpose")
{
    const cx_mat a = random_cx_mat(3, 5, 95);
    const cx_mat h = linalg::hermitian(a);
    REQUIRE(h.n_rows == 5);
    REQUIRE(h.n_cols == 3);
    for (arma::uword r = 0; r < 3; ++r)
        for (arma::uword c = 0; c < 5; ++c)
            CHECK(h(c, r) == std::conj(a(r, c)));
}
