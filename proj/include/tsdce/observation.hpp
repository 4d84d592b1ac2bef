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

#ifndef TSDCE_OBSERVATION_HPP
#define TSDCE_OBSERVATION_HPP

#include "tsdce/channel.hpp"
#include "tsdce/numkit/dft.hpp"

#include <cmath>
#include <limits>
#include <optional>

namespace tsdce::obs
{

using numkit::ComplexMatrix;
using numkit::cplx;

// Wrapping operator onto [lo, hi]: x - (hi - lo) * ceil((x - hi) / (hi - lo)).
// The image of the formula is the half-open (lo, hi].
inline double wrap(double x, double lo, double hi)
{
    const double w = hi - lo;
    return x - w * std::ceil((x - hi) / w);
}

inline double wrap_pi(double x) { return wrap(x, -std::numbers::pi, std::numbers::pi); }

// DFT-ordered analog codebook. With cos(phi_p) = wrap(2p/P) and
// cos(psi_q) = wrap(-2q/Q), the beam sweep over (q, p) is exactly a 2D DFT
// of the windowed spatial cisoids.
struct Codebook
{
    std::size_t p_count = 0;
    std::size_t q_count = 0;
    std::vector<double> tx_cosines;
    std::vector<double> rx_cosines;
    ComplexMatrix f; // n_t x P
    ComplexMatrix w; // n_r x Q
};

inline Codebook build_codebook(std::size_t P, std::size_t Q, std::size_t n_t, std::size_t n_r)
{
    if (n_t == 0 || n_r == 0)
        throw std::invalid_argument("build_codebook: antenna counts must be positive.");
    if (P < n_t || Q < n_r)
        throw std::invalid_argument("build_codebook: codebook must satisfy P >= n_t and Q >= n_r (got P=" +
                                    std::to_string(P) + ", Q=" + std::to_string(Q) + ", n_t=" + std::to_string(n_t) +
                                    ", n_r=" + std::to_string(n_r) + ").");
    Codebook cb;
    cb.p_count = P;
    cb.q_count = Q;
    cb.f = ComplexMatrix(n_t, P);
    cb.w = ComplexMatrix(n_r, Q);
    for (std::size_t p = 0; p < P; ++p)
    {
        const double c = wrap(2.0 * static_cast<double>(p) / static_cast<double>(P), -1.0, 1.0);
        cb.tx_cosines.push_back(c);
        const auto col = channel::steering_vector_from_cosine(c, n_t);
        for (std::size_t n = 0; n < n_t; ++n)
            cb.f(n, p) = col[n];
    }
    for (std::size_t q = 0; q < Q; ++q)
    {
        const double c = wrap(-2.0 * static_cast<double>(q) / static_cast<double>(Q), -1.0, 1.0);
        cb.rx_cosines.push_back(c);
        const auto col = channel::steering_vector_from_cosine(c, n_r);
        for (std::size_t m = 0; m < n_r; ++m)
            cb.w(m, q) = col[m];
    }
    return cb;
}

struct Observation
{
    ComplexMatrix y; // Q x P
    double rho = 1.0;
    double sigma_n_sq = 0.0;

    double snr() const { return sigma_n_sq > 0.0 ? rho / sigma_n_sq : std::numeric_limits<double>::infinity(); }
};

// Y = sqrt(rho) W^H H F + N, N i.i.d. CN(0, sigma_n_sq). Pilot symbol is 1.
inline Observation synthesize_observation(const channel::ChannelRealization &ch, const Codebook &cb, double rho,
                                          double sigma_n_sq, numkit::SeededRng &rng)
{
    if (!(rho > 0.0))
        throw std::invalid_argument("synthesize_observation: rho must be positive.");
    if (!(sigma_n_sq >= 0.0))
        throw std::invalid_argument("synthesize_observation: sigma_n_sq must be non-negative.");
    if (cb.f.rows() != ch.n_t || cb.w.rows() != ch.n_r)
        throw std::invalid_argument("synthesize_observation: codebook does not match the channel's arrays.");

    Observation o;
    o.rho = rho;
    o.sigma_n_sq = sigma_n_sq;
    o.y = numkit::matmul(numkit::matmul(numkit::adjoint(cb.w), ch.h), cb.f);
    o.y *= std::sqrt(rho);
    if (sigma_n_sq > 0.0)
        for (auto &e : o.y.entries())
            e += numkit::sample_complex_gaussian(rng, sigma_n_sq);
    return o;
}

struct SpatialObservation
{
    ComplexMatrix d;     // Q x P, IDFT of Y
    ComplexMatrix d_bar; // n_r x n_t top-left crop
    std::size_t mask_rows = 0;
    std::size_t mask_cols = 0;
    std::optional<double> sigma_z_sq_hat; // present iff QP > n_t n_r
};

inline SpatialObservation to_spatial(const Observation &o, std::size_t n_t, std::size_t n_r)
{
    if (o.y.rows() < n_r || o.y.cols() < n_t)
        throw std::invalid_argument("to_spatial: observation smaller than the antenna arrays.");
    SpatialObservation sp;
    sp.d = numkit::dft2d(o.y, numkit::DftDirection::inverse);
    sp.d_bar = sp.d.crop(n_r, n_t);
    sp.mask_rows = n_r;
    sp.mask_cols = n_t;

    const std::size_t outside = sp.d.size() - n_r * n_t;
    if (outside > 0)
    {
        double acc = 0.0;
        for (std::size_t m = 0; m < sp.d.rows(); ++m)
            for (std::size_t n = 0; n < sp.d.cols(); ++n)
                if (m >= n_r || n >= n_t)
                    acc += std::norm(sp.d(m, n));
        sp.sigma_z_sq_hat = acc / static_cast<double>(outside);
    }
    return sp;
}

// H_D = sqrt(n_t n_r / rho) * D_bar
inline ComplexMatrix spatial_ls_estimate(const SpatialObservation &sp, double rho)
{
    if (!(rho > 0.0))
        throw std::invalid_argument("spatial_ls_estimate: rho must be positive.");
    return sp.d_bar * std::sqrt(static_cast<double>(sp.mask_rows * sp.mask_cols) / rho);
}

// SNR_C = SNR * QP / (n_t n_r)
inline double snr_in_spatial_domain(double snr, std::size_t P, std::size_t Q, std::size_t n_t, std::size_t n_r)
{
    if (P == 0 || Q == 0 || n_t == 0 || n_r == 0)
        throw std::invalid_argument("snr_in_spatial_domain: counts must be positive.");
    return snr * static_cast<double>(Q * P) / static_cast<double>(n_t * n_r);
}

} // namespace tsdce::obs

#endif
