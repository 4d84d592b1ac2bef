// SPDX-License-Identifier: Apache-2.0
//
// tsdce: transformed spatial domain channel estimation for analog mmWave links
// Copyright (C) 2026 The tsdce authors
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

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace tsdce;
using Catch::Approx;
using numkit::ComplexMatrix;
using numkit::cplx;
using numkit::SeededRng;

constexpr double pi = std::numbers::pi;

TEST_CASE("wrap - ceiling formula")
{
    CHECK(obs::wrap(0.1875, -1.0, 1.0) == Approx(0.1875));
    CHECK(obs::wrap(1.25, -1.0, 1.0) == Approx(-0.75));
    CHECK(obs::wrap(1.0, -1.0, 1.0) == Approx(1.0));
    CHECK(obs::wrap(-1.0, -1.0, 1.0) == Approx(1.0)); // image is (lo, hi]

    SeededRng rng(1);
    for (int i = 0; i < 100; ++i)
    {
        const double x = rng.uniform(-10.0, 10.0);
        const int k = static_cast<int>(rng.uniform(-5.0, 5.0));
        const double w = obs::wrap(x, -pi, pi);
        CHECK(w > -pi - 1e-12);
        CHECK(w <= pi + 1e-12);
        CHECK(obs::wrap(x + 2.0 * pi * k, -pi, pi) == Approx(w).margin(1e-12));
    }
}

TEST_CASE("build_codebook - cosines and DFT conditions")
{
    CHECK_THROWS_AS(obs::build_codebook(8, 16, 16, 16), std::invalid_argument);
    CHECK_THROWS_AS(obs::build_codebook(16, 8, 16, 16), std::invalid_argument);

    const auto cb = obs::build_codebook(32, 32, 16, 16);
    CHECK(cb.tx_cosines[3] == Approx(0.1875));
    CHECK(cb.tx_cosines[20] == Approx(-0.75));

    for (auto [P, Q] : {std::pair{16, 16}, std::pair{32, 24}, std::pair{17, 19}})
    {
        const auto c = obs::build_codebook(P, Q, 16, 16);
        for (std::size_t p = 0; p < c.p_count; ++p)
        {
            CHECK(std::abs(std::polar(1.0, pi * c.tx_cosines[p]) - std::polar(1.0, 2 * pi * p / P)) < 1e-12);
            CHECK(c.tx_cosines[p] >= -1.0);
            CHECK(c.tx_cosines[p] <= 1.0);
        }
        for (std::size_t q = 0; q < c.q_count; ++q)
            CHECK(std::abs(std::polar(1.0, -pi * c.rx_cosines[q]) - std::polar(1.0, 2 * pi * q / Q)) < 1e-12);
        for (std::size_t p = 0; p < c.p_count; ++p)
        {
            double n = 0.0;
            for (std::size_t k = 0; k < 16; ++k)
                n += std::norm(c.f(k, p));
            CHECK(n == Approx(1.0).epsilon(1e-14));
        }
    }
}

TEST_CASE("synthesize_observation - on-grid peak")
{
    // AoD and AoA on the third quantized angles, n = 16, P = Q = 32.
    const auto cb = obs::build_codebook(32, 32, 16, 16);
    const cplx alpha{0.6, 0.3};
    const auto path = channel::make_path(alpha, std::acos(cb.tx_cosines[3]), std::acos(cb.rx_cosines[3]));
    const auto ch = channel::build_channel({path}, 16, 16);
    SeededRng rng(2);
    const double rho = 2.0;
    const auto o = obs::synthesize_observation(ch, cb, rho, 0.0, rng);
    CHECK(std::abs(o.y(3, 3)) == Approx(std::sqrt(rho) * std::abs(alpha) * 16.0).epsilon(1e-12));
    // On the 2x-oversampled grid the other bins on the same row/column land on
    // Dirichlet zeros except at odd offsets; the peak dominates everywhere.
    for (std::size_t q = 0; q < 32; ++q)
        for (std::size_t p = 0; p < 32; ++p)
            if (q != 3 || p != 3)
                CHECK(std::abs(o.y(q, p)) < std::abs(o.y(3, 3)));
    CHECK(std::isinf(o.snr()));
}

TEST_CASE("synthesize_observation - on-grid single nonzero entry")
{
    // With Q = n_r, P = n_t the DFT codebook is orthogonal and an on-grid path hits one bin.
    const auto cb = obs::build_codebook(16, 16, 16, 16);
    const auto path = channel::make_path(1.0, std::acos(cb.tx_cosines[3]), std::acos(cb.rx_cosines[3]));
    const auto ch = channel::build_channel({path}, 16, 16);
    SeededRng rng(3);
    const auto o = obs::synthesize_observation(ch, cb, 1.0, 0.0, rng);
    for (std::size_t q = 0; q < 16; ++q)
        for (std::size_t p = 0; p < 16; ++p)
        {
            if (q == 3 && p == 3)
                CHECK(std::abs(o.y(q, p)) == Approx(16.0).epsilon(1e-12));
            else
                CHECK(std::abs(o.y(q, p)) < 1e-10);
        }
}

TEST_CASE("synthesize_observation - Dirichlet closed form off grid")
{
    SeededRng rng(4);
    for (auto [P, Q] : {std::pair{16, 16}, std::pair{32, 32}, std::pair{20, 18}})
    {
        const auto cb = obs::build_codebook(P, Q, 16, 16);
        for (int t = 0; t < 5; ++t)
        {
            const auto path = channel::sample_paths(1, rng)[0];
            const auto ch = channel::build_channel({path}, 16, 16);
            const auto o = obs::synthesize_observation(ch, cb, 1.5, 0.0, rng);
            CHECK(oracle::max_abs_diff(o.y, oracle::dirichlet_observation(path, cb, 16, 16, 1.5)) < 1e-9);
        }
    }
}

TEST_CASE("synthesize_observation - validation and pure noise")
{
    SeededRng rng(5);
    const auto cb = obs::build_codebook(16, 16, 16, 16);
    auto ch = channel::build_channel({channel::make_path(0.0, 1.0, 1.0)}, 16, 16);
    CHECK_THROWS_AS(obs::synthesize_observation(ch, cb, 0.0, 1.0, rng), std::invalid_argument);
    CHECK_THROWS_AS(obs::synthesize_observation(ch, cb, 1.0, -1.0, rng), std::invalid_argument);
    const auto cb8 = obs::build_codebook(16, 16, 8, 16);
    CHECK_THROWS_AS(obs::synthesize_observation(ch, cb8, 1.0, 1.0, rng), std::invalid_argument);

    double acc = 0.0;
    std::size_t count = 0;
    for (int t = 0; t < 100; ++t)
    {
        const auto o = obs::synthesize_observation(ch, cb, 1.0, 0.5, rng);
        acc += numkit::frobenius_norm_sq(o.y);
        count += o.y.size();
        CHECK(o.snr() == Approx(2.0));
    }
    CHECK(acc / static_cast<double>(count) == Approx(0.5).epsilon(0.03));
}

TEST_CASE("to_spatial - cisoid crop mask and noise estimate")
{
    SeededRng rng(6);
    const auto cb = obs::build_codebook(32, 32, 16, 16);
    const auto path = channel::sample_paths(1, rng)[0];
    const auto ch = channel::build_channel({path}, 16, 16);
    const double rho = 3.0;
    const auto o = obs::synthesize_observation(ch, cb, rho, 0.0, rng);
    const auto sp = obs::to_spatial(o, 16, 16);
    CHECK(sp.d.rows() == 32);
    CHECK(sp.d_bar.rows() == 16);
    CHECK(sp.mask_rows == 16);
    CHECK(sp.mask_cols == 16);
    CHECK(sp.d_bar == sp.d.crop(16, 16));
    const cplx A = path.gain() / 16.0;
    for (std::size_t m = 0; m < 16; ++m)
        for (std::size_t n = 0; n < 16; ++n)
            CHECK(std::abs(sp.d_bar(m, n) - std::sqrt(rho) * A * std::polar(1.0, path.omega_aoa * m + path.omega_aod * n)) <
                  1e-9);
    REQUIRE(sp.sigma_z_sq_hat.has_value());
    CHECK(*sp.sigma_z_sq_hat < 1e-20);

    const auto sq = obs::to_spatial(obs::synthesize_observation(ch, obs::build_codebook(16, 16, 16, 16), 1.0, 1.0, rng),
                                    16, 16);
    CHECK_FALSE(sq.sigma_z_sq_hat.has_value());

    CHECK_THROWS_AS(obs::to_spatial(o, 33, 16), std::invalid_argument);
}

TEST_CASE("to_spatial - noise variance estimator is unbiased")
{
    SeededRng rng(7);
    const auto cb = obs::build_codebook(32, 32, 16, 16);
    const auto ch = channel::build_channel({channel::make_path(0.0, 1.0, 1.0)}, 16, 16);
    const double sigma_n_sq = 2.0;
    double acc = 0.0;
    for (int t = 0; t < 100; ++t)
        acc += *obs::to_spatial(obs::synthesize_observation(ch, cb, 1.0, sigma_n_sq, rng), 16, 16).sigma_z_sq_hat;
    CHECK(acc / 100.0 == Approx(sigma_n_sq / 1024.0).epsilon(0.05));
}

TEST_CASE("spatial_ls_estimate - noiseless exactness and LS identity")
{
    SeededRng rng(8);
    for (auto [P, Q] : {std::pair{16, 16}, std::pair{32, 32}, std::pair{24, 20}})
    {
        const auto cb = obs::build_codebook(P, Q, 16, 16);
        const auto ch = channel::build_channel(channel::sample_paths(3, rng), 16, 16);
        const auto clean = obs::synthesize_observation(ch, cb, 1.0, 0.0, rng);
        const auto h_d = obs::spatial_ls_estimate(obs::to_spatial(clean, 16, 16), 1.0);
        CHECK(numkit::frobenius_norm(h_d - ch.h) / numkit::frobenius_norm(ch.h) < 1e-9);
    }
    CHECK_THROWS_AS(obs::spatial_ls_estimate(obs::SpatialObservation{}, 0.0), std::invalid_argument);

    // Identity with the explicit Kronecker least-squares solve.
    const auto cb = obs::build_codebook(16, 16, 16, 16);
    for (int t = 0; t < 100; ++t)
    {
        const auto ch = channel::build_channel(channel::sample_paths(2, rng), 16, 16);
        const auto o = obs::synthesize_observation(ch, cb, 1.3, 0.7, rng);
        const auto h_d = obs::spatial_ls_estimate(obs::to_spatial(o, 16, 16), o.rho);
        if (t < 5)
            CHECK(oracle::max_abs_diff(h_d, oracle::kron_ls(o, cb)) < 1e-9);
        CHECK(oracle::max_abs_diff(h_d, analysis::ls_estimate_explicit(o, cb)) < 1e-9);
    }
    const auto cb32 = obs::build_codebook(32, 24, 16, 16);
    const auto ch = channel::build_channel(channel::sample_paths(2, rng), 16, 16);
    const auto o = obs::synthesize_observation(ch, cb32, 1.0, 0.3, rng);
    CHECK(oracle::max_abs_diff(obs::spatial_ls_estimate(obs::to_spatial(o, 16, 16), 1.0), oracle::kron_ls(o, cb32)) <
          1e-9);
}

TEST_CASE("snr_in_spatial_domain - scaling")
{
    CHECK(obs::snr_in_spatial_domain(1.0, 32, 32, 16, 16) == Approx(4.0));
    CHECK(10.0 * std::log10(obs::snr_in_spatial_domain(1.0, 32, 32, 16, 16)) == Approx(6.0206).epsilon(1e-4));
    CHECK(obs::snr_in_spatial_domain(5.0, 16, 16, 16, 16) == Approx(5.0));
    CHECK(obs::snr_in_spatial_domain(0.0, 32, 32, 16, 16) == 0.0);
    CHECK_THROWS_AS(obs::snr_in_spatial_domain(1.0, 0, 32, 16, 16), std::invalid_argument);
}

TEST_CASE("Spatial-domain SNR gain - empirical")
{
    // Signal power over noise power inside d_bar matches SNR * QP / (n_t n_r).
    SeededRng rng(9);
    const auto cb = obs::build_codebook(32, 32, 16, 16);
    const double sigma_n_sq = 1.0;
    double sig = 0.0, noise = 0.0;
    for (int t = 0; t < 200; ++t)
    {
        const auto ch = channel::build_channel({channel::make_path(1.0, rng.uniform(0, pi), rng.uniform(0, pi))}, 16, 16);
        const auto clean = obs::to_spatial(obs::synthesize_observation(ch, cb, 1.0, 0.0, rng), 16, 16).d_bar;
        SeededRng copy = rng;
        const auto noisy = obs::to_spatial(obs::synthesize_observation(ch, cb, 1.0, sigma_n_sq, copy), 16, 16).d_bar;
        rng = copy;
        sig += numkit::frobenius_norm_sq(clean);
        noise += numkit::frobenius_norm_sq(noisy - clean);
    }
    // Per-element signal power is rho |alpha|^2 / (n_t n_r), noise is sigma_n^2 / QP.
    CHECK(sig / noise == Approx(obs::snr_in_spatial_domain(1.0 / sigma_n_sq, 32, 32, 16, 16)).epsilon(0.05));
}
