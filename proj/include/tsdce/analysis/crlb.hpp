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

#ifndef TSDCE_ANALYSIS_CRLB_HPP
#define TSDCE_ANALYSIS_CRLB_HPP

#include "tsdce/analysis/bounds.hpp"
#include "tsdce/channel.hpp"
#include "tsdce/numkit/symmetric_eigen.hpp"

#include <limits>

namespace tsdce::analysis
{

using numkit::ComplexMatrix;
using numkit::cplx;
using numkit::RealMatrix;

// Parameter layout per path l: [4l] |alpha|, [4l+1] arg alpha, [4l+2] omega_aod, [4l+3] omega_aoa.
struct FisherModel
{
    std::vector<double> params;
    double noise_var = 1.0;
    std::size_t n_t = 0;
    std::size_t n_r = 0;

    std::size_t path_count() const { return params.size() / 4; }

    static FisherModel from_paths(const std::vector<channel::PathParams> &paths, double noise_var, std::size_t n_t,
                                  std::size_t n_r)
    {
        FisherModel m;
        m.noise_var = noise_var;
        m.n_t = n_t;
        m.n_r = n_r;
        for (const auto &p : paths)
            m.params.insert(m.params.end(), {p.gain_magnitude, p.gain_phase, p.omega_aod, p.omega_aoa});
        return m;
    }
};

namespace detail
{

inline void check_model(const FisherModel &m)
{
    if (m.params.empty() || m.params.size() % 4 != 0)
        throw std::invalid_argument("FisherModel: params must hold 4 entries per path.");
    if (m.n_t == 0 || m.n_r == 0)
        throw std::invalid_argument("FisherModel: n_t and n_r must be positive.");
}

} // namespace detail

// vec(H) row-major (index m * n_t + n) for h[m,n] = sum_l |a| e^{j(arg a + w_aoa m + w_aod n)}.
// Negative magnitudes are allowed so perturbed parameter sets stay valid.
inline ComplexMatrix channel_from_params(std::span<const double> params, std::size_t n_t, std::size_t n_r)
{
    ComplexMatrix h(n_r, n_t);
    for (std::size_t l = 0; l + 3 < params.size(); l += 4)
        for (std::size_t m = 0; m < n_r; ++m)
            for (std::size_t n = 0; n < n_t; ++n)
            {
                const double arg = params[l + 1] + params[l + 3] * static_cast<double>(m) +
                                   params[l + 2] * static_cast<double>(n);
                h(m, n) += params[l] * cplx(std::cos(arg), std::sin(arg));
            }
    return h;
}

// (n_r n_t) x 4L Jacobian of vec(H).
inline ComplexMatrix fisher_jacobian(const FisherModel &model)
{
    detail::check_model(model);
    const std::size_t L = model.path_count();
    ComplexMatrix j(model.n_r * model.n_t, 4 * L);
    for (std::size_t l = 0; l < L; ++l)
    {
        const double mag = model.params[4 * l], ph = model.params[4 * l + 1];
        const double w_aod = model.params[4 * l + 2], w_aoa = model.params[4 * l + 3];
        for (std::size_t m = 0; m < model.n_r; ++m)
            for (std::size_t n = 0; n < model.n_t; ++n)
            {
                const double dm = static_cast<double>(m), dn = static_cast<double>(n);
                const cplx e = std::polar(1.0, ph + w_aoa * dm + w_aod * dn);
                const cplx je = cplx(0.0, mag) * e;
                const std::size_t row = m * model.n_t + n;
                j(row, 4 * l) = e;
                j(row, 4 * l + 1) = je;
                j(row, 4 * l + 2) = dn * je;
                j(row, 4 * l + 3) = dm * je;
            }
    }
    return j;
}

// F = (2 / sigma^2) Re(J^H J)
inline RealMatrix fisher_matrix(const FisherModel &model)
{
    if (!(model.noise_var > 0.0))
        throw std::invalid_argument("fisher_matrix: noise_var must be positive.");
    const auto j = fisher_jacobian(model);
    const std::size_t p = j.cols();
    RealMatrix f(p, p);
    for (std::size_t a = 0; a < p; ++a)
        for (std::size_t b = a; b < p; ++b)
        {
            double acc = 0.0;
            for (std::size_t r = 0; r < j.rows(); ++r)
                acc += (std::conj(j(r, a)) * j(r, b)).real();
            f(a, b) = f(b, a) = 2.0 * acc / model.noise_var;
        }
    return f;
}

struct CrlbVariances
{
    std::vector<double> variances; // diag of F^{-1}, or of the floored pseudo-inverse
    bool regularized = false;
    double condition_number = 1.0;
};

// Eigenvalues below 1e-12 * lambda_max are treated as null directions and dropped.
inline CrlbVariances crlb_variances(const RealMatrix &fisher)
{
    const auto eig = numkit::symmetric_eigen(fisher);
    const std::size_t p = fisher.rows();
    const double lmax = eig.values.front();
    CrlbVariances out;
    out.variances.assign(p, 0.0);
    if (!(lmax > 0.0))
    {
        out.regularized = true;
        out.condition_number = std::numeric_limits<double>::infinity();
        return out;
    }
    const double floor = 1e-12 * lmax;
    const double lmin = eig.values.back();
    out.condition_number = lmin > 0.0 ? lmax / lmin : std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < p; ++k)
    {
        const double lam = eig.values[k];
        if (lam <= floor)
        {
            out.regularized = true;
            continue;
        }
        for (std::size_t i = 0; i < p; ++i)
            out.variances[i] += eig.vectors(i, k) * eig.vectors(i, k) / lam;
    }
    return out;
}

// sigma_e^2 = (1 / rho) sum_{l<=L} n_t lambda_{l,mean}
inline double crlb_noise_variance(std::size_t L, double rho, std::size_t n_t, std::size_t n_r, double sigma_z_sq)
{
    if (L < 1 || L > n_r)
        throw std::invalid_argument("crlb_noise_variance: need 1 <= L <= n_r.");
    if (!(rho > 0.0))
        throw std::invalid_argument("crlb_noise_variance: rho must be positive.");
    const auto mp = MarchenkoPastur::for_arrays(sigma_z_sq, n_t, n_r);
    double acc = 0.0;
    for (std::size_t l = 1; l <= L; ++l)
        acc += static_cast<double>(n_t) * ordered_eigenvalue_mean(mp, l, n_r);
    return acc / rho;
}

struct CrlbSample
{
    double nmse_ratio = 0.0;
    bool regularized = false;
    double condition_number = 1.0;
};

// One Monte Carlo draw: perturb the true parameters by their CRLB variances and rebuild H.
inline CrlbSample crlb_nmse_sample(const channel::ChannelRealization &ch, double noise_var, numkit::SeededRng &rng)
{
    const auto model = FisherModel::from_paths(ch.paths, noise_var, ch.n_t, ch.n_r);
    const auto var = crlb_variances(fisher_matrix(model));
    auto params = model.params;
    for (std::size_t i = 0; i < params.size(); ++i)
        if (var.variances[i] > 0.0)
            params[i] += std::sqrt(var.variances[i]) * rng.normal();
    const auto h_hat = channel_from_params(params, ch.n_t, ch.n_r);
    const double den = numkit::frobenius_norm_sq(ch.h);
    if (!(den > 0.0))
        throw std::invalid_argument("crlb_nmse_sample: channel has zero norm.");
    return {numkit::frobenius_norm_sq(h_hat - ch.h) / den, var.regularized, var.condition_number};
}

inline double crlb_nmse_bound(const channel::ChannelRealization &ch, double rho, double sigma_z_sq,
                              numkit::SeededRng &rng)
{
    const double nv = crlb_noise_variance(ch.paths.size(), rho, ch.n_t, ch.n_r, sigma_z_sq);
    return crlb_nmse_sample(ch, nv, rng).nmse_ratio;
}

} // namespace tsdce::analysis

#endif
