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

#ifndef TSDCE_NUMKIT_RNG_HPP
#define TSDCE_NUMKIT_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace tsdce::numkit
{

// Counter-based generator: output i is splitmix64(seed + i * golden_gamma).
// The state is (seed, counter); identical seed and call sequence reproduce
// identical draws. Not safe for concurrent mutation: give each worker its own
// substream via substream().
class SeededRng
{
public:
    explicit SeededRng(std::uint64_t seed) noexcept : seed_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t position() const noexcept { return counter_; }

    // Per-trial substream, independent of draw order in other trials.
    static SeededRng substream(std::uint64_t seed, std::uint64_t index) noexcept
    {
        return SeededRng(seed ^ index);
    }

    std::uint64_t next_u64() noexcept
    {
        std::uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform on the open interval (0, 1).
    double uniform() noexcept
    {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    // Standard normal via Box-Muller; the second variate of each pair is cached.
    double normal() noexcept
    {
        if (has_spare_)
        {
            has_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double t = 2.0 * std::numbers::pi * uniform();
        spare_ = r * std::sin(t);
        has_spare_ = true;
        return r * std::cos(t);
    }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// z ~ CN(0, variance): real and imaginary parts independent, each of variance/2.
// One Box-Muller pair per draw, so the stream position advances by exactly two.
inline std::complex<double> sample_complex_gaussian(SeededRng &rng, double variance)
{
    if (!(variance > 0.0))
        throw std::invalid_argument("sample_complex_gaussian: variance must be positive.");
    const double r = std::sqrt(-variance * std::log(rng.uniform()));
    const double t = 2.0 * std::numbers::pi * rng.uniform();
    return std::polar(r, t);
}

} // namespace tsdce::numkit

#endif
