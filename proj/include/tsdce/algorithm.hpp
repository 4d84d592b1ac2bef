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

#ifndef TSDCE_ALGORITHM_HPP
#define TSDCE_ALGORITHM_HPP

#include "tsdce/channel.hpp"
#include "tsdce/numkit/acf.hpp"
#include "tsdce/numkit/svd.hpp"
#include "tsdce/observation.hpp"

#include <functional>
#include <numbers>
#include <optional>

namespace tsdce::algo
{

using numkit::ComplexMatrix;
using numkit::cplx;

using PathEstimate = channel::PathParams;

struct TsdceConfig
{
    std::size_t l_desired = 1; // L_d, number of paths to extract
    std::size_t rounds = 1;    // K, SIC refinement rounds
    double rho = 1.0;
    std::size_t n_t = 16;
    std::size_t n_r = 16;
    double svd_tol = 1e-12;
    std::size_t svd_max_iter = 10000;

    void validate() const
    {
        if (l_desired < 1 || rounds < 1)
            throw std::invalid_argument("TsdceConfig: l_desired and rounds must be at least 1.");
        if (n_t < 2 || n_r < 2)
            throw std::invalid_argument("TsdceConfig: n_t and n_r must be at least 2.");
        if (l_desired > std::min(n_t, n_r))
            throw std::invalid_argument("TsdceConfig: l_desired must not exceed min(n_t, n_r).");
        if (!(rho > 0.0))
            throw std::invalid_argument("TsdceConfig: rho must be positive.");
    }
};

// Thrown when the rank-one extraction fails; carries the estimates completed so far.
class EstimationError : public std::runtime_error
{
public:
    EstimationError(const std::string &what, std::vector<PathEstimate> partial)
        : std::runtime_error(what), partial_(std::move(partial))
    {
    }
    const std::vector<PathEstimate> &partial() const noexcept { return partial_; }

private:
    std::vector<PathEstimate> partial_;
};

inline ComplexMatrix extract_rank_one(const ComplexMatrix &residual, numkit::PowerIterationOptions opts = {})
{
    return numkit::dominant_singular_triplet(residual, opts).rank_one();
}

enum class AcfLine
{
    first_column, // R[m, 0], AoA direction, length n_r
    first_row     // R[0, n], AoD direction, length n_t
};

// delta[0] = 0, delta[i] = arg(r_i conj(r_{i-1})) along the chosen ACF line.
inline std::vector<double> phase_differences(const ComplexMatrix &r, AcfLine line)
{
    const std::size_t len = line == AcfLine::first_column ? r.rows() : r.cols();
    auto at = [&](std::size_t i) { return line == AcfLine::first_column ? r(i, 0) : r(0, i); };
    std::vector<double> delta(len, 0.0);
    for (std::size_t i = 1; i < len; ++i)
        delta[i] = std::arg(at(i) * std::conj(at(i - 1)));
    return delta;
}

namespace detail
{

inline double population_variance(std::span<const double> x)
{
    double mean = 0.0;
    for (double v : x)
        mean += v;
    mean /= static_cast<double>(x.size());
    double acc = 0.0;
    for (double v : x)
        acc += (v - mean) * (v - mean);
    return acc / static_cast<double>(x.size());
}

// [0, 2pi) branch; keeps delta[0] = 0 at zero.
inline double wrap_zero_two_pi(double x)
{
    constexpr double two_pi = 2.0 * std::numbers::pi;
    return x - two_pi * std::floor(x / two_pi);
}

} // namespace detail

// Chooses between the principal branch and the [0, 2pi) branch, whichever
// has the smaller variance. Ties keep the input.
inline std::vector<double> select_wrap_branch(std::span<const double> delta)
{
    if (delta.size() < 2)
        throw std::invalid_argument("select_wrap_branch: need at least two phase differences.");
    std::vector<double> wrapped(delta.size());
    for (std::size_t i = 0; i < delta.size(); ++i)
        wrapped[i] = detail::wrap_zero_two_pi(delta[i]);
    if (detail::population_variance(delta) > detail::population_variance(wrapped))
        return wrapped;
    return {delta.begin(), delta.end()};
}

inline std::vector<double> unwrap_cumsum(std::span<const double> delta)
{
    std::vector<double> out(delta.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < delta.size(); ++i)
        out[i] = (acc += delta[i]);
    return out;
}

// w_i = (M + 1)(M - i) / (i + 1): inverse of the accumulated ACF phase variance.
inline std::vector<double> wls_weights(std::size_t M)
{
    if (M < 2)
        throw std::invalid_argument("wls_weights: M must be at least 2.");
    std::vector<double> w(M);
    for (std::size_t i = 0; i < M; ++i)
        w[i] = static_cast<double>(M + 1) * static_cast<double>(M - i) / static_cast<double>(i + 1);
    return w;
}

// Weighted least-squares slope of phases[i] against i.
inline double wls_slope(std::span<const double> phases, std::span<const double> weights)
{
    if (phases.size() != weights.size() || phases.size() < 2)
        throw std::invalid_argument("wls_slope: phases and weights must have equal length >= 2.");
    double sw = 0.0, sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < phases.size(); ++i)
    {
        if (!(weights[i] > 0.0))
            throw std::invalid_argument("wls_slope: weights must be positive.");
        sw += weights[i];
        sx += weights[i] * static_cast<double>(i);
        sy += weights[i] * phases[i];
    }
    const double xbar = sx / sw, ybar = sy / sw;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < phases.size(); ++i)
    {
        const double dx = static_cast<double>(i) - xbar;
        num += weights[i] * dx * (phases[i] - ybar);
        den += weights[i] * dx * dx;
    }
    return num / den;
}

// Frequency along one ACF line: differences, branch choice, unwrap, WLS, wrap to [-pi, pi].
inline double estimate_frequency(const ComplexMatrix &r, AcfLine line)
{
    const auto delta = select_wrap_branch(phase_differences(r, line));
    const auto phases = unwrap_cumsum(delta);
    return obs::wrap_pi(wls_slope(phases, wls_weights(phases.size())));
}

// |alpha| from the kappa-weighted mean ACF magnitude over all lags except (0, 0).
inline double estimate_amplitude(const ComplexMatrix &r, double rho)
{
    if (!(rho > 0.0))
        throw std::invalid_argument("estimate_amplitude: rho must be positive.");
    const std::size_t nr = r.rows(), nt = r.cols();
    const double dnr = static_cast<double>(nr), dnt = static_cast<double>(nt);
    const double norm_k = 1.0 / (0.25 * dnr * (dnr + 1.0) * dnt * (dnt + 1.0) - dnt * dnr);
    double acc = 0.0;
    for (std::size_t m = 0; m < nr; ++m)
        for (std::size_t n = 0; n < nt; ++n)
        {
            if (m == 0 && n == 0)
                continue;
            acc += static_cast<double>((nr - m) * (nt - n)) * std::abs(r(m, n));
        }
    const double a_sq = norm_k * acc / rho;
    return std::sqrt(dnt * dnr) * std::sqrt(a_sq);
}

namespace detail
{

inline cplx derotated_mean(const ComplexMatrix &d, double omega_aoa, double omega_aod)
{
    cplx acc = 0.0;
    for (std::size_t m = 0; m < d.rows(); ++m)
        for (std::size_t n = 0; n < d.cols(); ++n)
            acc += d(m, n) * std::polar(1.0, -(omega_aoa * static_cast<double>(m) + omega_aod * static_cast<double>(n)));
    return acc / static_cast<double>(d.size());
}

} // namespace detail

// Angle of the derotated sample mean.
inline double estimate_gain_phase(const ComplexMatrix &d_tilde, double omega_aoa, double omega_aod, double rho)
{
    if (!(rho > 0.0))
        throw std::invalid_argument("estimate_gain_phase: rho must be positive.");
    const cplx mean = detail::derotated_mean(d_tilde, omega_aoa, omega_aod) / std::sqrt(rho);
    if (mean == cplx{})
        throw std::domain_error("estimate_gain_phase: derotated mean is zero, phase undefined.");
    return std::arg(mean);
}

// One path from a (rank-one or SIC residual) n_r x n_t spatial matrix.
inline PathEstimate estimate_path(const ComplexMatrix &d_tilde, double rho)
{
    const auto r = numkit::acf2d_unbiased(d_tilde);
    const double w_aoa = estimate_frequency(r, AcfLine::first_column);
    const double w_aod = estimate_frequency(r, AcfLine::first_row);
    const double mag = estimate_amplitude(r, rho);
    const cplx mean = detail::derotated_mean(d_tilde, w_aoa, w_aod);
    const double phase = mean == cplx{} ? 0.0 : std::arg(mean);

    PathEstimate est = channel::make_path_from_freqs(std::polar(1.0, phase), w_aod, w_aoa);
    est.gain_magnitude = mag;
    return est;
}

// Spatial-domain component of one path: |a|/sqrt(n_t n_r) e^{j arg a} e^{j(w_aoa m + w_aod n)}.
inline ComplexMatrix reconstruct_path(const PathEstimate &est, std::size_t n_t, std::size_t n_r)
{
    ComplexMatrix c(n_r, n_t);
    const cplx a = est.gain() / std::sqrt(static_cast<double>(n_t * n_r));
    for (std::size_t m = 0; m < n_r; ++m)
        for (std::size_t n = 0; n < n_t; ++n)
            c(m, n) = a * std::polar(1.0, est.omega_aoa * static_cast<double>(m) + est.omega_aod * static_cast<double>(n));
    return c;
}

inline ComplexMatrix reconstruct_channel(const std::vector<PathEstimate> &estimates, std::size_t n_t, std::size_t n_r)
{
    if (estimates.empty())
        throw std::invalid_argument("reconstruct_channel: need at least one estimate.");
    return channel::synthesize_channel(estimates, n_t, n_r);
}

// Snapshot handed to an observer after every (round, path) step.
struct IterationTrace
{
    std::size_t round = 0; // 1-based k
    std::size_t path = 0;  // 0-based l
    bool used_rank_one = false;
    const ComplexMatrix &residual; // D'_C before rank-one extraction
    const PathEstimate &estimate;
};

using IterationObserver = std::function<void(const IterationTrace &)>;

// Rank-one step for round 1: every path but the last, and also the only path
// when L_d = 1. Later rounds work on the SIC residual directly.
inline bool uses_rank_one(std::size_t round, std::size_t path, std::size_t l_desired)
{
    return round == 1 && (path + 1 < l_desired || l_desired == 1);
}

inline std::vector<PathEstimate> run_on_spatial(const ComplexMatrix &d_bar, const TsdceConfig &cfg,
                                                const IterationObserver &observer = {})
{
    cfg.validate();
    if (d_bar.rows() != cfg.n_r || d_bar.cols() != cfg.n_t)
        throw std::invalid_argument("tsdce: spatial crop does not match n_r x n_t.");

    const std::size_t ld = cfg.l_desired;
    const double sqrt_rho = std::sqrt(cfg.rho);
    std::vector<PathEstimate> est(ld);
    std::vector<std::optional<ComplexMatrix>> components(ld);

    auto completed = [&] {
        std::vector<PathEstimate> out;
        for (std::size_t i = 0; i < ld; ++i)
            if (components[i])
                out.push_back(est[i]);
        return out;
    };

    for (std::size_t k = 1; k <= cfg.rounds; ++k)
        for (std::size_t l = 0; l < ld; ++l)
        {
            ComplexMatrix residual = d_bar;
            for (std::size_t i = 0; i < ld; ++i)
                if (i != l && components[i])
                    residual -= *components[i] * sqrt_rho;

            const bool rank_one = uses_rank_one(k, l, ld);
            if (rank_one)
            {
                try
                {
                    est[l] = estimate_path(extract_rank_one(residual, {cfg.svd_tol, cfg.svd_max_iter}), cfg.rho);
                }
                catch (const numkit::ConvergenceError &e)
                {
                    throw EstimationError(std::string("tsdce: ") + e.what(), completed());
                }
            }
            else
            {
                est[l] = estimate_path(residual, cfg.rho);
            }
            components[l] = reconstruct_path(est[l], cfg.n_t, cfg.n_r);

            if (observer)
                observer(IterationTrace{k, l, rank_one, residual, est[l]});
        }
    return est;
}

inline std::vector<PathEstimate> run(const obs::Observation &y, const TsdceConfig &cfg,
                                     const IterationObserver &observer = {})
{
    cfg.validate();
    const auto sp = obs::to_spatial(y, cfg.n_t, cfg.n_r);
    return run_on_spatial(sp.d_bar, cfg, observer);
}

} // namespace tsdce::algo

#endif
