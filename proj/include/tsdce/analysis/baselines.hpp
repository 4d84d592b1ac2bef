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

#ifndef TSDCE_ANALYSIS_BASELINES_HPP
#define TSDCE_ANALYSIS_BASELINES_HPP

#include "tsdce/algorithm.hpp"
#include "tsdce/numkit/dft.hpp"

#include <bit>

namespace tsdce::analysis
{

using numkit::ComplexMatrix;
using numkit::cplx;

// Least squares on vec(Y) = sqrt(rho) (F^T kron W^H) vec(H) + noise.
// The DFT codebook makes Q^H Q = (QP / n_t n_r) I, so the normal equations
// reduce to H_LS = n_t n_r / (QP sqrt(rho)) * W Y F^H.
inline ComplexMatrix ls_estimate_explicit(const obs::Observation &o, const obs::Codebook &cb)
{
    const std::size_t n_t = cb.f.rows(), n_r = cb.w.rows();
    const std::size_t QP = cb.p_count * cb.q_count;
    if (QP < n_t * n_r)
        throw std::domain_error("ls_estimate_explicit: QP < n_t n_r, the LS system is rank deficient.");
    if (o.y.rows() != cb.q_count || o.y.cols() != cb.p_count)
        throw std::invalid_argument("ls_estimate_explicit: observation does not match the codebook.");
    auto h = numkit::matmul(numkit::matmul(cb.w, o.y), numkit::adjoint(cb.f));
    h *= static_cast<double>(n_t * n_r) / (static_cast<double>(QP) * std::sqrt(o.rho));
    return h;
}

// Simplified DFT peak-pick / cancel comparator: zero-padded 2D FFT of the
// spatial crop, strongest bin -> frequencies, derotated mean -> gain,
// subtract and repeat. Not a reimplementation of any published DFT scheme.
inline std::vector<algo::PathEstimate> dft_peak_baseline(const obs::Observation &o, std::size_t n_t, std::size_t n_r,
                                                         std::size_t l_desired, std::size_t n_dft = 1024)
{
    if (!std::has_single_bit(n_dft) || n_dft < std::max(o.y.rows(), o.y.cols()))
        throw std::invalid_argument("dft_peak_baseline: n_dft must be a power of two >= max(Q, P).");
    if (l_desired == 0)
        throw std::invalid_argument("dft_peak_baseline: l_desired must be at least 1.");

    auto residual = obs::to_spatial(o, n_t, n_r).d_bar;
    const double two_pi_over_n = 2.0 * std::numbers::pi / static_cast<double>(n_dft);
    const double sqrt_rho = std::sqrt(o.rho);
    const double sqrt_ntnr = std::sqrt(static_cast<double>(n_t * n_r));

    std::vector<algo::PathEstimate> out;
    for (std::size_t l = 0; l < l_desired; ++l)
    {
        const auto spec = numkit::zero_padded_fft2d(residual, n_dft);
        std::size_t kr = 0, kt = 0;
        double best = -1.0;
        for (std::size_t r = 0; r < n_dft; ++r)
            for (std::size_t c = 0; c < n_dft; ++c)
                if (const double v = std::norm(spec(r, c)); v > best)
                {
                    best = v;
                    kr = r;
                    kt = c;
                }
        const double w_aoa = obs::wrap_pi(two_pi_over_n * static_cast<double>(kr));
        const double w_aod = obs::wrap_pi(two_pi_over_n * static_cast<double>(kt));
        const cplx alpha = algo::detail::derotated_mean(residual, w_aoa, w_aod) * sqrt_ntnr / sqrt_rho;

        auto est = channel::make_path_from_freqs(alpha, w_aod, w_aoa);
        residual -= algo::reconstruct_path(est, n_t, n_r) * sqrt_rho;
        out.push_back(est);
    }
    return out;
}

} // namespace tsdce::analysis

#endif
