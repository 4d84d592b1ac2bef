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

#ifndef TSDCE_BENCH_BOUND_SWEEP_HPP
#define TSDCE_BENCH_BOUND_SWEEP_HPP

#include "tsdce/analysis/crlb.hpp"
#include "tsdce/bench/csv.hpp"

namespace tsdce::bench
{

enum class BoundKind
{
    lemma3,
    lemma4,
    crlb
};

inline BoundKind parse_bound_kind(const std::string &s)
{
    if (s == "lemma3")
        return BoundKind::lemma3;
    if (s == "lemma4")
        return BoundKind::lemma4;
    if (s == "crlb")
        return BoundKind::crlb;
    throw ConfigError("unknown bound kind '" + s + "' (expected lemma3, lemma4 or crlb)");
}

inline std::string bound_kind_name(BoundKind k)
{
    switch (k)
    {
    case BoundKind::lemma3:
        return "lemma3";
    case BoundKind::lemma4:
        return "lemma4";
    case BoundKind::crlb:
        return "crlb";
    }
    return "unknown";
}

struct BoundRecord
{
    std::string kind;
    double snr_db = 0.0;
    double mean_sse = 0.0;
    double nmse_db = 0.0;
    std::size_t trials = 0; // 0 for closed-form bounds
};

// Salt separating the CRLB perturbation draws from the channel substream.
inline constexpr std::uint64_t crlb_stream_salt = 0xC21B5EEDULL;

// The analytic bounds are mean-SSE values; nmse divides by E||H||_F^2 = n_t n_r.
// The CRLB curve averages per-realization NMSE ratios over cfg.trials channels.
inline std::vector<BoundRecord> run_bound_sweep(const ExperimentConfig &cfg, BoundKind kind,
                                                std::size_t threads = worker_count())
{
    cfg.validate();
    const double ntnr = static_cast<double>(cfg.n_t * cfg.n_r);
    const double QP = static_cast<double>(cfg.p_count * cfg.q_count);
    const auto cb = obs::build_codebook(cfg.p_count, cfg.q_count, cfg.n_t, cfg.n_r);

    std::vector<BoundRecord> out;
    for (double snr_db : cfg.snr_db_list)
    {
        BoundRecord r;
        r.kind = bound_kind_name(kind);
        r.snr_db = snr_db;
        const double sigma_n_sq = noise_variance(snr_db, cfg.rho);
        if (sigma_n_sq == 0.0)
        {
            r.mean_sse = 0.0;
            r.nmse_db = minus_inf_db_sentinel;
            r.trials = kind == BoundKind::crlb ? cfg.trials : 0;
            out.push_back(r);
            continue;
        }
        const double sigma_z_sq = sigma_n_sq / QP;
        switch (kind)
        {
        case BoundKind::lemma3:
        {
            const double snr_c = obs::snr_in_spatial_domain(cfg.rho / sigma_n_sq, cfg.p_count, cfg.q_count, cfg.n_t,
                                                            cfg.n_r);
            r.mean_sse = analysis::upper_bound_single_path(snr_c, cfg.n_t, cfg.n_r);
            r.nmse_db = nmse_db(r.mean_sse / ntnr);
            break;
        }
        case BoundKind::lemma4:
            r.mean_sse = analysis::upper_bound_multi_path(cfg.L, cfg.rho, cfg.n_t, cfg.n_r, sigma_z_sq);
            r.nmse_db = nmse_db(r.mean_sse / ntnr);
            break;
        case BoundKind::crlb:
        {
            const double nv = analysis::crlb_noise_variance(cfg.L, cfg.rho, cfg.n_t, cfg.n_r, sigma_z_sq);
            std::vector<double> ratio(cfg.trials), sse(cfg.trials);
            parallel_for(cfg.trials, threads, [&](std::size_t t) {
                const auto in = make_trial(cfg, cb, snr_db, t);
                numkit::SeededRng rng(numkit::SeededRng::substream(cfg.seed ^ crlb_stream_salt, t));
                const auto s = analysis::crlb_nmse_sample(in.channel, nv, rng);
                ratio[t] = s.nmse_ratio;
                sse[t] = s.nmse_ratio * numkit::frobenius_norm_sq(in.channel.h);
            });
            double rs = 0.0, ss = 0.0;
            for (std::size_t t = 0; t < cfg.trials; ++t)
            {
                rs += ratio[t];
                ss += sse[t];
            }
            r.trials = cfg.trials;
            r.mean_sse = ss / static_cast<double>(cfg.trials);
            r.nmse_db = nmse_db(rs / static_cast<double>(cfg.trials));
            break;
        }
        }
        out.push_back(r);
    }
    return out;
}

inline void write_bound_csv(const std::vector<BoundRecord> &records, std::ostream &out)
{
    out << "kind,snr_db,mean_sse,nmse_db,trials\n";
    for (const auto &r : records)
        out << r.kind << ',' << format_real(r.snr_db) << ',' << format_real(r.mean_sse) << ','
            << format_real(r.nmse_db) << ',' << r.trials << '\n';
}

} // namespace tsdce::bench

#endif
