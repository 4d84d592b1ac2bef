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

#ifndef TSDCE_CHANNEL_HPP
#define TSDCE_CHANNEL_HPP

#include "tsdce/numkit/matrix.hpp"
#include "tsdce/numkit/rng.hpp"

#include <algorithm>
#include <numbers>
#include <utility>
#include <vector>

namespace tsdce::channel
{

using numkit::ComplexMatrix;
using numkit::ComplexVector;
using numkit::cplx;

enum class Side
{
    tx,
    rx
};

// One propagation path. The spatial angular frequencies follow
//   omega_aod = pi cos(aod),  omega_aoa = -pi cos(aoa).
struct PathParams
{
    double gain_magnitude = 0.0;
    double gain_phase = 0.0; // (-pi, pi]
    double aod = 0.0;
    double aoa = 0.0;
    double omega_aod = 0.0;
    double omega_aoa = 0.0;

    cplx gain() const { return std::polar(gain_magnitude, gain_phase); }
};

inline double aod_to_freq(double aod) { return std::numbers::pi * std::cos(aod); }
inline double aoa_to_freq(double aoa) { return -std::numbers::pi * std::cos(aoa); }

// Inverse of the maps above, onto [0, pi].
inline double freq_to_angle(double omega, Side side)
{
    constexpr double pi = std::numbers::pi;
    if (!(std::abs(omega) <= pi))
        throw std::invalid_argument("freq_to_angle: |omega| must not exceed pi.");
    const double c = std::clamp(side == Side::tx ? omega / pi : -omega / pi, -1.0, 1.0);
    return std::acos(c);
}

// Builds a path from (complex gain, angles), filling the frequencies.
inline PathParams make_path(cplx gain, double aod, double aoa)
{
    PathParams p;
    p.gain_magnitude = std::abs(gain);
    p.gain_phase = std::arg(gain);
    p.aod = aod;
    p.aoa = aoa;
    p.omega_aod = aod_to_freq(aod);
    p.omega_aoa = aoa_to_freq(aoa);
    return p;
}

// Builds a path directly from spatial frequencies in [-pi, pi].
inline PathParams make_path_from_freqs(cplx gain, double omega_aod, double omega_aoa)
{
    PathParams p;
    p.gain_magnitude = std::abs(gain);
    p.gain_phase = std::arg(gain);
    p.omega_aod = omega_aod;
    p.omega_aoa = omega_aoa;
    p.aod = freq_to_angle(omega_aod, Side::tx);
    p.aoa = freq_to_angle(omega_aoa, Side::rx);
    return p;
}

// Element k = exp(-j pi k c) / sqrt(n) for direction cosine c.
inline ComplexVector steering_vector_from_cosine(double cosine, std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("steering_vector: n must be at least 1.");
    ComplexVector a(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k)
        a[k] = std::polar(scale, -std::numbers::pi * static_cast<double>(k) * cosine);
    return a;
}

// Uniform linear array response with half-wavelength spacing. Tx and rx share
// the formula; the side only documents which angle is passed.
inline ComplexVector steering_vector(double angle, std::size_t n, Side /*side*/ = Side::tx)
{
    return steering_vector_from_cosine(std::cos(angle), n);
}

struct ChannelRealization
{
    std::size_t n_t = 0;
    std::size_t n_r = 0;
    std::vector<PathParams> paths; // decreasing gain_magnitude
    ComplexMatrix h;               // n_r x n_t
};

// Draws L paths with CN(0, 1/L) gains and angles uniform on [lo, hi], sorted
// by decreasing |gain| so path 0 is always the dominant one.
inline std::vector<PathParams> sample_paths(std::size_t L, numkit::SeededRng &rng,
                                            std::pair<double, double> angle_range = {0.0, std::numbers::pi})
{
    if (L == 0)
        throw std::invalid_argument("sample_paths: L must be at least 1.");
    if (!(angle_range.first < angle_range.second))
        throw std::invalid_argument("sample_paths: angle range must satisfy lo < hi.");

    std::vector<PathParams> paths;
    paths.reserve(L);
    for (std::size_t l = 0; l < L; ++l)
    {
        const cplx alpha = numkit::sample_complex_gaussian(rng, 1.0 / static_cast<double>(L));
        const double aod = rng.uniform(angle_range.first, angle_range.second);
        const double aoa = rng.uniform(angle_range.first, angle_range.second);
        paths.push_back(make_path(alpha, aod, aoa));
    }
    std::stable_sort(paths.begin(), paths.end(),
                     [](const PathParams &a, const PathParams &b) { return a.gain_magnitude > b.gain_magnitude; });
    return paths;
}

// h[m,n] = sum_l alpha_l exp(j(omega_aoa m + omega_aod n)), which equals
// sqrt(n_t n_r) sum_l alpha_l a_r(aoa) a_t(aod)^H.
inline ComplexMatrix synthesize_channel(const std::vector<PathParams> &paths, std::size_t n_t, std::size_t n_r)
{
    ComplexMatrix h(n_r, n_t);
    for (const auto &p : paths)
    {
        const cplx g = p.gain();
        for (std::size_t m = 0; m < n_r; ++m)
            for (std::size_t n = 0; n < n_t; ++n)
                h(m, n) += g * std::polar(1.0, p.omega_aoa * static_cast<double>(m) +
                                                   p.omega_aod * static_cast<double>(n));
    }
    return h;
}

inline ChannelRealization build_channel(std::vector<PathParams> paths, std::size_t n_t, std::size_t n_r)
{
    if (n_t < 2 || n_r < 2)
        throw std::invalid_argument("build_channel: n_t and n_r must be at least 2.");
    std::stable_sort(paths.begin(), paths.end(),
                     [](const PathParams &a, const PathParams &b) { return a.gain_magnitude > b.gain_magnitude; });
    ChannelRealization ch;
    ch.n_t = n_t;
    ch.n_r = n_r;
    ch.h = synthesize_channel(paths, n_t, n_r);
    ch.paths = std::move(paths);
    return ch;
}

} // namespace tsdce::channel

#endif
