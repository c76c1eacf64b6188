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
#include "mmcest/channel_model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

using namespace mmcest;
using mmcest_tests::max_abs_diff;
using mmcest_tests::pi;

namespace
{

PathParams make_path(cx_double gain, double aod, double aoa)
{
    PathParams p;
    p.gain = gain;
    p.aod_az = aod;
    p.aoa_az = aoa;
    return p;
}

} // namespace

TEST_CASE("synthesize_channel: broadside single path closed form")
{
    UlaConfig two{2, 0.5};
    const auto ch = synthesize_channel({make_path({1.0, 0.0}, pi / 2.0, pi / 2.0)}, two, two);
    REQUIRE(ch.h.n_rows == 2);
    REQUIRE(ch.h.n_cols == 2);
    // sqrt(4/1) * (1/sqrt(2))[1,1]^T * (1/sqrt(2))[1,1] = ones; consistent with
    // ||H||_F^2 = N_BS*N_MS for a single unit-gain path
    for (arma::uword r = 0; r < 2; ++r)
        for (arma::uword c = 0; c < 2; ++c)
            CHECK(std::abs(ch.h(r, c) - cx_double(1.0, 0.0)) < 1e-12);
}

TEST_CASE("synthesize_channel: zero gain gives the zero matrix")
{
    UlaConfig bs{8, 0.5}, ms{4, 0.5};
    const auto ch = synthesize_channel({make_path({0.0, 0.0}, 1.0, 2.0)}, bs, ms);
    CHECK(arma::abs(ch.h).max() == 0.0);
}

TEST_CASE("synthesize_channel: energy splits over orthogonal paths")
{
    // cos spacing in multiples of 2/N makes the steering vectors exactly orthogonal
    UlaConfig bs{8, 0.5}, ms{8, 0.5};
    const double a0 = std::acos(0.0), a1 = std::acos(0.25), a2 = std::acos(0.5);
    const std::vector<PathParams> paths = {
        make_path({1.0, 0.0}, a0, a2),
        make_path({0.0, 2.0}, a1, a0),
        make_path({-0.5, 0.5}, a2, a1),
    };
    const auto ch = synthesize_channel(paths, bs, ms);
    double gain2 = 0.0;
    for (const auto &p : paths)
        gain2 += std::norm(p.gain);
    const double expect = 8.0 * 8.0 / 3.0 * gain2;
    const double got = std::pow(arma::norm(ch.h, "fro"), 2);
    CHECK(got == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("synthesize_channel: linear in the gains, sorted by magnitude")
{
    UlaConfig bs{16, 0.5}, ms{8, 0.5};
    const std::vector<PathParams> paths = {
        make_path({0.3, -0.1}, 0.7, 2.9),
        make_path({-1.2, 0.4}, 2.1, 1.3),
    };
    std::vector<PathParams> doubled = paths;
    for (auto &p : doubled)
        p.gain *= 2.0;
    const auto ch1 = synthesize_channel(paths, bs, ms);
    const auto ch2 = synthesize_channel(doubled, bs, ms);
    CHECK(max_abs_diff(ch2.h, cx_mat(2.0 * ch1.h)) < 1e-12);
    // strongest first regardless of input order
    CHECK(std::abs(ch1.paths[0].gain) >= std::abs(ch1.paths[1].gain));
    CHECK(ch1.paths[0].aod_az == doctest::Approx(2.1));
}

TEST_CASE("synthesize_channel: mirror azimuths leave the channel unchanged")
{
    UlaConfig bs{16, 0.5}, ms{8, 0.5};
    const std::vector<PathParams> paths = {
        make_path({0.8, 0.2}, 0.9, 2.4),
        make_path({0.1, -0.6}, 2.8, 0.4),
    };
    std::vector<PathParams> mirrored = paths;
    for (auto &p : mirrored)
    {
        p.aod_az = 2.0 * pi - p.aod_az;
        p.aoa_az = 2.0 * pi - p.aoa_az;
    }
    const auto a = synthesize_channel(paths, bs, ms);
    const auto b = synthesize_channel(mirrored, bs, ms);
    CHECK(max_abs_diff(a.h, b.h) < 1e-12);
}

TEST_CASE("synthesize_channel: empty path list rejected")
{
    UlaConfig bs{4, 0.5}, ms{4, 0.5};
    CHECK_THROWS_AS(synthesize_channel({}, bs, ms), std::invalid_argument);
}

TEST_CASE("sample_paths: unit-gain and normalized complex-normal modes")
{
    PathSamplerConfig cfg;
    cfg.num_paths = 1;
    cfg.gain_distribution = GainDistribution::unit_gain;
    Rng rng(501);
    const auto one = sample_paths(cfg, rng);
    REQUIRE(one.size() == 1);
    CHECK(std::abs(one[0].gain) == doctest::Approx(1.0).epsilon(1e-12));

    cfg.num_paths = 4;
    cfg.gain_distribution = GainDistribution::complex_normal;
    const auto four = sample_paths(cfg, rng);
    REQUIRE(four.size() == 4);
    double total = 0.0;
    for (const auto &p : four)
        total += std::norm(p.gain);
    CHECK(total == doctest::Approx(4.0).epsilon(1e-12));
    for (std::size_t i = 1; i < four.size(); ++i)
        CHECK(std::abs(four[i - 1].gain) >= std::abs(four[i].gain));
}

TEST_CASE("sample_paths: angle ranges per mode")
{
    PathSamplerConfig cfg;
    cfg.num_paths = 6;
    Rng rng(502);
    for (int rep = 0; rep < 20; ++rep)
        for (const auto &p : sample_paths(cfg, rng))
        {
            CHECK(p.aod_az >= 0.0);
            CHECK(p.aod_az < 2.0 * pi);
            CHECK(p.aoa_az >= 0.0);
            CHECK(p.aoa_az < 2.0 * pi);
        }

    cfg.angle_mode = AngleMode::on_grid;
    cfg.grid = make_grid(128);
    for (int rep = 0; rep < 20; ++rep)
        for (const auto &p : sample_paths(cfg, rng))
        {
            // every drawn azimuth must be one of the 128 grid angles
            const double step = 2.0 * pi / 128.0;
            CHECK(std::abs(p.aod_az / step - std::round(p.aod_az / step)) < 1e-12);
            CHECK(std::abs(p.aoa_az / step - std::round(p.aoa_az / step)) < 1e-12);
        }
}

TEST_CASE("sample_paths: deterministic under a fixed seed, randomized path count in 1..6")
{
    PathSamplerConfig cfg;
    cfg.num_paths = 3;
    Rng a(503), b(503);
    const auto pa = sample_paths(cfg, a);
    const auto pb = sample_paths(cfg, b);
    REQUIRE(pa.size() == pb.size());
    for (std::size_t i = 0; i < pa.size(); ++i)
    {
        CHECK(pa[i].gain == pb[i].gain);
        CHECK(pa[i].aod_az == pb[i].aod_az);
        CHECK(pa[i].aoa_az == pb[i].aoa_az);
    }

    cfg.randomize_num_paths = true;
    Rng r(504);
    bool seen_many = false;
    for (int rep = 0; rep < 50; ++rep)
    {
        const auto ps = sample_paths(cfg, r);
        REQUIRE(ps.size() >= 1);
        REQUIRE(ps.size() <= 6);
        seen_many = seen_many || ps.size() > 1;
    }
    CHECK(seen_many);
}

TEST_CASE("measure: noiseless identity probes return the scaled channel")
{
    UlaConfig bs{6, 0.5}, ms{6, 0.5};
    const auto ch = synthesize_channel({make_path({0.7, -0.2}, 1.0, 2.0)}, bs, ms);
    const cx_mat eye6 = arma::eye<cx_mat>(6, 6);
    Rng rng(505);
    const cx_mat y = measure(ch.h, eye6, eye6, 4.0, 0.0, rng);
    CHECK(max_abs_diff(y, cx_mat(2.0 * ch.h)) < 1e-12);
}

TEST_CASE("measure: matched single-path probe gives the closed-form scalar")
{
    UlaConfig bs{64, 0.5}, ms{32, 0.5};
    const AngleGrid grid = make_grid(128);
    const cx_double alpha(0.6, 0.8);
    const double aod = grid.angles(37), aoa = grid.angles(90);
    const auto ch = synthesize_channel({make_path(alpha, aod, aoa)}, bs, ms);
    const cx_mat f(steering_vector(bs, aod));
    const cx_mat w(steering_vector(ms, aoa));
    Rng rng(506);
    const cx_mat y = measure(ch.h, f, w, 9.0, 0.0, rng);
    REQUIRE(y.n_rows == 1);
    REQUIRE(y.n_cols == 1);
    const cx_double expect = 3.0 * std::sqrt(64.0 * 32.0) * alpha;
    CHECK(std::abs(y(0, 0) - expect) < 1e-10);
}

TEST_CASE("measure: zero power leaves combined noise of the configured variance")
{
    cx_mat w(4, 2, arma::fill::zeros);
    w(0, 0) = 1.0; // unit-norm columns pass the noise through unscaled
    w(2, 1) = 1.0;
    const cx_mat h(4, 3, arma::fill::ones);
    const cx_mat f = arma::eye<cx_mat>(3, 3);
    Rng rng(507);
    const double noise_var = 0.8;
    double acc = 0.0;
    int count = 0;
    for (int rep = 0; rep < 20000; ++rep)
    {
        const cx_mat y = measure(h, f, w, 0.0, noise_var, rng);
        for (arma::uword i = 0; i < y.n_elem; ++i)
            acc += std::norm(y(i));
        count += static_cast<int>(y.n_elem);
    }
    CHECK(acc / count == doctest::Approx(noise_var).epsilon(0.03));
}

TEST_CASE("measure: noiseless runs are bit-stable and dimension-checked")
{
    UlaConfig bs{8, 0.5}, ms{4, 0.5};
    const auto ch = synthesize_channel({make_path({1.0, 1.0}, 0.5, 1.5)}, bs, ms);
    const cx_mat f(steering_vector(bs, 0.5));
    const cx_mat w(steering_vector(ms, 1.5));
    Rng r1(508), r2(509);
    const cx_mat y1 = measure(ch.h, f, w, 1.0, 0.0, r1);
    const cx_mat y2 = measure(ch.h, f, w, 1.0, 0.0, r2);
    CHECK(max_abs_diff(y1, y2) == 0.0);

    const cx_mat bad(3, 1, arma::fill::ones);
    CHECK_THROWS_AS(measure(ch.h, bad, w, 1.0, 0.0, r1), std::invalid_argument);
}

TEST_CASE("noise_var_for_snr: unit-path anchor and scaling laws")
{
    UlaConfig bs{64, 0.5}, ms{32, 0.5};
    const auto ch = synthesize_channel({make_path({1.0, 0.0}, 1.1, 2.2)}, bs, ms);
    CHECK(noise_var_for_snr(ch.h, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(noise_var_for_snr(ch.h, 1.0, 1e12) == doctest::Approx(1e-12).epsilon(1e-9));
    CHECK(noise_var_for_snr(ch.h, 2.0, 1.0) ==
          doctest::Approx(2.0 * noise_var_for_snr(ch.h, 1.0, 1.0)));

    const cx_mat zero(4, 4, arma::fill::zeros);
    CHECK_THROWS_AS(noise_var_for_snr(zero, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("path serialization: text round trip")
{
    std::vector<PathParams> paths = {
        make_path({0.25, -1.5}, 0.123456789, 5.87654321),
        make_path({-2.0, 0.0}, 3.0, 0.5),
    };
    paths[0].aod_el = 0.25;
    paths[1].aoa_el = -0.5;
    std::stringstream ss;
    write_paths(paths, ss);
    const auto back = read_paths(ss);
    REQUIRE(back.size() == paths.size());
    for (std::size_t i = 0; i < paths.size(); ++i)
    {
        CHECK(std::abs(back[i].gain - paths[i].gain) < 1e-12);
        CHECK(back[i].aod_az == doctest::Approx(paths[i].aod_az).epsilon(1e-12));
        CHECK(back[i].aoa_az == doctest::Approx(paths[i].aoa_az).epsilon(1e-12));
        CHECK(back[i].aod_el == doctest::Approx(paths[i].aod_el).epsilon(1e-12));
        CHECK(back[i].aoa_el == doctest::Approx(paths[i].aoa_el).epsilon(1e-12));
    }
}
