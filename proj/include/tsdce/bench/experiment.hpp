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

#ifndef TSDCE_BENCH_EXPERIMENT_HPP
#define TSDCE_BENCH_EXPERIMENT_HPP

#include "tsdce/algorithm.hpp"
#include "tsdce/analysis/baselines.hpp"
#include "tsdce/bench/config.hpp"
#include "tsdce/bench/metrics.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <functional>
#include <iostream>
#include <mutex>
#include <thread>

namespace tsdce::bench
{

struct MetricRecord
{
    std::string method;
    double snr_db = 0.0;
    double nmse_db = 0.0;
    double doa_rmse_deg = std::numeric_limits<double>::quiet_NaN();
    double p_detect = std::numeric_limits<double>::quiet_NaN(); // NaN for methods without angle estimates
    double mean_sse = 0.0;
    std::size_t trials = 0;
    double wall_ms = 0.0;
};

class FailureRateError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// sigma_n^2 = rho / 10^(snr/10); +inf dB is noiseless.
inline double noise_variance(double snr_db, double rho)
{
    if (std::isinf(snr_db) && snr_db > 0.0)
        return 0.0;
    return rho / std::pow(10.0, snr_db / 10.0);
}

struct TrialInput
{
    channel::ChannelRealization channel;
    obs::Observation observation;
};

// The per-trial substream depends only on (seed, trial), so every SNR point
// sees the same channel draws.
inline TrialInput make_trial(const ExperimentConfig &cfg, const obs::Codebook &cb, double snr_db, std::size_t trial)
{
    numkit::SeededRng rng(numkit::SeededRng::substream(cfg.seed, trial));
    TrialInput in;
    in.channel = channel::build_channel(channel::sample_paths(cfg.L, rng, cfg.angle_range), cfg.n_t, cfg.n_r);
    in.observation = obs::synthesize_observation(in.channel, cb, cfg.rho, noise_variance(snr_db, cfg.rho), rng);
    return in;
}

inline algo::TsdceConfig tsdce_config(const ExperimentConfig &cfg)
{
    algo::TsdceConfig t;
    t.l_desired = cfg.effective_l_desired();
    t.rounds = cfg.rounds;
    t.rho = cfg.rho;
    t.n_t = cfg.n_t;
    t.n_r = cfg.n_r;
    return t;
}

struct MethodOutcome
{
    bool failed = false;
    std::string error;
    double ratio = 0.0;
    double sse = 0.0;
    std::optional<Pairing> pairing;
    double elapsed_ms = 0.0;
};

inline MethodOutcome run_method(Method m, const ExperimentConfig &cfg, const TrialInput &in)
{
    MethodOutcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try
    {
        ComplexMatrix h_hat;
        std::vector<algo::PathEstimate> est;
        switch (m)
        {
        case Method::tsdce:
            est = algo::run(in.observation, tsdce_config(cfg));
            h_hat = algo::reconstruct_channel(est, cfg.n_t, cfg.n_r);
            break;
        case Method::ls:
            h_hat = obs::spatial_ls_estimate(obs::to_spatial(in.observation, cfg.n_t, cfg.n_r), cfg.rho);
            break;
        case Method::dft_peak:
            est = analysis::dft_peak_baseline(in.observation, cfg.n_t, cfg.n_r, cfg.effective_l_desired(), cfg.n_dft);
            h_hat = algo::reconstruct_channel(est, cfg.n_t, cfg.n_r);
            break;
        }
        out.sse = numkit::frobenius_norm_sq(h_hat - in.channel.h);
        out.ratio = nmse_ratio(h_hat, in.channel.h);
        if (!est.empty())
            out.pairing = match_paths(in.channel.paths, est);
        if (!std::isfinite(out.ratio))
            throw std::runtime_error("non-finite estimate");
    }
    catch (const std::exception &e)
    {
        out.failed = true;
        out.error = e.what();
    }
    out.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

// TSDCE_THREADS caps the worker count; default is all hardware threads.
inline std::size_t worker_count()
{
    std::size_t n = std::max(1u, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("TSDCE_THREADS"))
    {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0)
            n = static_cast<std::size_t>(v);
    }
    return n;
}

// Runs body(i) for i in [0, count) on up to `threads` workers.
inline void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)> &body)
{
    threads = std::max<std::size_t>(1, std::min(threads, count));
    if (threads == 1)
    {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    // The first exception stops further work and is rethrown on the caller.
    std::atomic<std::size_t> next{0};
    std::exception_ptr first;
    std::mutex mu;
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++)
                {
                    try
                    {
                        body(i);
                    }
                    catch (...)
                    {
                        std::lock_guard lock(mu);
                        if (!first)
                            first = std::current_exception();
                        next = count;
                    }
                }
            });
    }
    if (first)
        std::rethrow_exception(first);
}

using FailureLog = std::function<void(const std::string &)>;

inline void log_to_stderr(const std::string &msg) { std::cerr << "tsdce: " << msg << '\n'; }

inline std::vector<MetricRecord> run_experiment(const ExperimentConfig &cfg, std::size_t threads = worker_count(),
                                                const FailureLog &log = log_to_stderr)
{
    cfg.validate();
    const auto cb = obs::build_codebook(cfg.p_count, cfg.q_count, cfg.n_t, cfg.n_r);
    const std::size_t n_snr = cfg.snr_db_list.size(), n_m = cfg.methods.size();

    // outcomes[(s * trials + t) * n_m + k]
    std::vector<MethodOutcome> outcomes(n_snr * cfg.trials * n_m);
    parallel_for(n_snr * cfg.trials, threads, [&](std::size_t task) {
        const std::size_t s = task / cfg.trials, t = task % cfg.trials;
        const auto in = make_trial(cfg, cb, cfg.snr_db_list[s], t);
        for (std::size_t k = 0; k < n_m; ++k)
            outcomes[task * n_m + k] = run_method(cfg.methods[k], cfg, in);
    });

    std::vector<MetricRecord> records;
    for (std::size_t s = 0; s < n_snr; ++s)
        for (std::size_t k = 0; k < n_m; ++k)
        {
            double ratio_sum = 0.0, sse_sum = 0.0, ms = 0.0;
            std::size_t ok = 0, failed = 0;
            bool has_angles = false;
            DoaAccumulator doa(cfg.detection_threshold_deg);
            for (std::size_t t = 0; t < cfg.trials; ++t)
            {
                const auto &o = outcomes[(s * cfg.trials + t) * n_m + k];
                ms += o.elapsed_ms;
                if (o.failed)
                {
                    ++failed;
                    log(method_name(cfg.methods[k]) + " failed at snr_db=" + std::to_string(cfg.snr_db_list[s]) +
                        " trial=" + std::to_string(t) + ": " + o.error);
                    continue;
                }
                ++ok;
                ratio_sum += o.ratio;
                sse_sum += o.sse;
                if (o.pairing)
                {
                    has_angles = true;
                    doa.add_trial(*o.pairing, cfg.L);
                }
            }
            if (static_cast<double>(failed) > 0.01 * static_cast<double>(cfg.trials))
                throw FailureRateError(method_name(cfg.methods[k]) + ": " + std::to_string(failed) + " of " +
                                       std::to_string(cfg.trials) + " trials failed at snr_db=" +
                                       std::to_string(cfg.snr_db_list[s]));

            MetricRecord r;
            r.method = method_name(cfg.methods[k]);
            r.snr_db = cfg.snr_db_list[s];
            r.trials = cfg.trials;
            r.nmse_db = ok > 0 ? nmse_db(ratio_sum / static_cast<double>(ok)) : std::numeric_limits<double>::quiet_NaN();
            r.mean_sse = ok > 0 ? sse_sum / static_cast<double>(ok) : std::numeric_limits<double>::quiet_NaN();
            if (has_angles)
            {
                const auto d = doa.summary();
                r.p_detect = d.p_detect;
                if (d.rmse_deg)
                    r.doa_rmse_deg = *d.rmse_deg;
            }
            r.wall_ms = cfg.timing ? ms : 0.0;
            records.push_back(r);
        }
    return records;
}

} // namespace tsdce::bench

#endif
