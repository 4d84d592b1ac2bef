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

#ifndef TSDCE_ANALYSIS_BOUNDS_HPP
#define TSDCE_ANALYSIS_BOUNDS_HPP

#include "tsdce/numkit/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace tsdce::analysis
{

// Mean-SSE upper bound for one path: (sqrt(n_r) + sqrt(n_t))^2 / SNR_C.
// Divide by n_t n_r for an NMSE bound.
inline double upper_bound_single_path(double snr_c, std::size_t n_t, std::size_t n_r)
{
    if (!(snr_c > 0.0))
        throw std::invalid_argument("upper_bound_single_path: snr_c must be positive.");
    const double s = std::sqrt(static_cast<double>(n_r)) + std::sqrt(static_cast<double>(n_t));
    return s * s / snr_c;
}

// Marchenko-Pastur law of the eigenvalues of (1/n_t) Z^H Z for an
// n_r x n_t matrix Z with i.i.d. entries of variance sigma_z_sq, c = n_r / n_t <= 1.
struct MarchenkoPastur
{
    double sigma_z_sq = 1.0;
    double c = 1.0;
    double a = 0.0;
    double b = 4.0;

    static MarchenkoPastur make(double sigma_z_sq, double c)
    {
        if (!(sigma_z_sq > 0.0))
            throw std::invalid_argument("MarchenkoPastur: sigma_z_sq must be positive.");
        if (!(c > 0.0 && c <= 1.0))
            throw std::invalid_argument("MarchenkoPastur: c must lie in (0, 1].");
        const double sc = std::sqrt(c);
        return {sigma_z_sq, c, sigma_z_sq * (1.0 - sc) * (1.0 - sc), sigma_z_sq * (1.0 + sc) * (1.0 + sc)};
    }

    // Requires n_r <= n_t so that (1/n_t) Z^H Z has n_r non-zero eigenvalues.
    static MarchenkoPastur for_arrays(double sigma_z_sq, std::size_t n_t, std::size_t n_r)
    {
        if (n_r > n_t || n_r == 0)
            throw std::invalid_argument("MarchenkoPastur: requires 1 <= n_r <= n_t.");
        return make(sigma_z_sq, static_cast<double>(n_r) / static_cast<double>(n_t));
    }
};

inline double mp_density(const MarchenkoPastur &mp, double x)
{
    if (!(x > mp.a && x < mp.b))
        return 0.0;
    return std::sqrt((x - mp.a) * (mp.b - x)) / (2.0 * std::numbers::pi * mp.sigma_z_sq * mp.c * x);
}

namespace detail
{

// Antiderivative of sqrt((x-a)(b-x)) / x, up to a constant factor.
inline double mp_primitive(const MarchenkoPastur &mp, double x)
{
    const double a = mp.a, b = mp.b;
    const double root = std::sqrt(std::max(0.0, (x - a) * (b - x)));
    const double s1 = std::clamp((2.0 * x - a - b) / (b - a), -1.0, 1.0);
    double val = root + 0.5 * (a + b) * std::asin(s1);
    if (a > 0.0)
    {
        const double s2 = std::clamp(((a + b) * x - 2.0 * a * b) / (x * (b - a)), -1.0, 1.0);
        val -= std::sqrt(a * b) * std::asin(s2);
    }
    return val;
}

// x = a + (b - a) sin^2 t maps t in [0, pi/2] onto [a, b] and cancels the
// square-root edge behaviour: dx = (b - a) sin(2t) dt.
template <typename G>
double integrate_over_support(const MarchenkoPastur &mp, G &&g, double tol)
{
    const double w = mp.b - mp.a;
    auto integrand = [&](double t) {
        const double s = std::sin(t), c = std::cos(t);
        const double x = mp.a + w * s * s;
        if (x <= 0.0)
        {
            // a = 0 edge: the density has a 1/sqrt(x) singularity that the
            // Jacobian cancels; evaluate the limit through a nudged point.
            const double tt = 1e-12;
            const double xs = mp.a + w * std::sin(tt) * std::sin(tt);
            return g(xs) * w * std::sin(2.0 * tt);
        }
        return g(x) * w * 2.0 * s * c;
    };
    return numkit::adaptive_simpson(integrand, 0.0, 0.5 * std::numbers::pi, tol).value;
}

} // namespace detail

// CDF normalized by its endpoint difference, so F(a) = 0 and F(b) = 1.
inline double mp_cdf(const MarchenkoPastur &mp, double x)
{
    if (x <= mp.a)
        return 0.0;
    if (x >= mp.b)
        return 1.0;
    const double fa = detail::mp_primitive(mp, mp.a), fb = detail::mp_primitive(mp, mp.b);
    return std::clamp((detail::mp_primitive(mp, x) - fa) / (fb - fa), 0.0, 1.0);
}

// Integral of g(x) f(x) over the support; integrate_density(mp, 1) == 1.
template <typename G>
double integrate_against_density(const MarchenkoPastur &mp, G &&g, double tol = 1e-8)
{
    return detail::integrate_over_support(mp, [&](double x) { return g(x) * mp_density(mp, x); }, tol);
}

inline double log_binomial(double n, double k)
{
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// Mean of the l-th largest (1-based) of n_r i.i.d. draws from the MP law,
// density (n_r - l + 1) C(n_r, n_r - l + 1) f F^{n_r - l} (1 - F)^{l - 1}.
inline double ordered_eigenvalue_mean(const MarchenkoPastur &mp, std::size_t l, std::size_t n_r, double tol = 1e-8)
{
    if (l < 1 || l > n_r)
        throw std::invalid_argument("ordered_eigenvalue_mean: need 1 <= l <= n_r.");
    const double n = static_cast<double>(n_r), dl = static_cast<double>(l);
    const double log_coef = std::log(n - dl + 1.0) + log_binomial(n, n - dl + 1.0);
    auto g = [&](double x) {
        const double F = mp_cdf(mp, x);
        double lp = log_coef;
        if (n - dl > 0)
            lp += (n - dl) * std::log(F);
        if (dl - 1 > 0)
            lp += (dl - 1.0) * std::log1p(-F);
        return x * std::exp(lp);
    };
    // Scale the tolerance with the support width; eigenvalues scale with sigma_z_sq.
    return integrate_against_density(mp, g, tol * mp.b);
}

inline std::vector<double> ordered_eigenvalue_means(const MarchenkoPastur &mp, std::size_t n_r)
{
    std::vector<double> out(n_r);
    for (std::size_t l = 1; l <= n_r; ++l)
        out[l - 1] = ordered_eigenvalue_mean(mp, l, n_r);
    return out;
}

// Mean-SSE upper bound for L paths: (n_t n_r / rho) sum_{l<=L} n_t lambda_{l,mean}.
inline double upper_bound_multi_path(std::size_t L, double rho, std::size_t n_t, std::size_t n_r, double sigma_z_sq)
{
    if (L < 1 || L > n_r)
        throw std::invalid_argument("upper_bound_multi_path: need 1 <= L <= n_r.");
    if (!(rho > 0.0))
        throw std::invalid_argument("upper_bound_multi_path: rho must be positive.");
    const auto mp = MarchenkoPastur::for_arrays(sigma_z_sq, n_t, n_r);
    double acc = 0.0;
    for (std::size_t l = 1; l <= L; ++l)
        acc += static_cast<double>(n_t) * ordered_eigenvalue_mean(mp, l, n_r);
    return static_cast<double>(n_t * n_r) / rho * acc;
}

} // namespace tsdce::analysis

#endif
