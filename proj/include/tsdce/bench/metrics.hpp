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

#ifndef TSDCE_BENCH_METRICS_HPP
#define TSDCE_BENCH_METRICS_HPP

#include "tsdce/channel.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <optional>
#include <tuple>

namespace tsdce::bench
{

using numkit::ComplexMatrix;

inline constexpr double minus_inf_db_sentinel = -999.0;

// Per-trial ||H_hat - H||_F^2 / ||H||_F^2.
inline double nmse_ratio(const ComplexMatrix &h_hat, const ComplexMatrix &h)
{
    if (!h_hat.same_shape(h))
        throw std::invalid_argument("nmse_ratio: shape mismatch.");
    const double den = numkit::frobenius_norm_sq(h);
    if (!(den > 0.0))
        throw std::invalid_argument("nmse_ratio: reference channel has zero norm.");
    return numkit::frobenius_norm_sq(h_hat - h) / den;
}

// 10 log10 of an already averaged ratio; a zero ratio maps to the sentinel.
inline double nmse_db(double mean_ratio)
{
    if (!(mean_ratio > 0.0))
        return minus_inf_db_sentinel;
    return 10.0 * std::log10(mean_ratio);
}

inline double rad_to_deg(double r) { return r * 180.0 / std::numbers::pi; }

struct PathPair
{
    std::size_t truth = 0;
    std::size_t estimate = 0;
    double aoa_error_deg = 0.0;
    double aod_error_deg = 0.0;
};

struct Pairing
{
    std::vector<PathPair> pairs; // sorted by truth index
    double total_cost = 0.0;
};

namespace detail
{

struct MatchSearch
{
    const std::vector<std::vector<double>> &cost; // [small][large]
    std::vector<std::size_t> current;
    std::vector<std::size_t> best;
    std::vector<bool> used;
    double best_cost = std::numeric_limits<double>::infinity();

    void dfs(std::size_t i, double acc)
    {
        if (acc >= best_cost)
            return;
        if (i == cost.size())
        {
            best_cost = acc;
            best = current;
            return;
        }
        for (std::size_t j = 0; j < used.size(); ++j)
            if (!used[j])
            {
                used[j] = true;
                current[i] = j;
                dfs(i + 1, acc + cost[i][j]);
                used[j] = false;
            }
    }
};

} // namespace detail

// Minimum total |dAoA| + |dAoD| (degrees) one-to-one assignment. When the
// counts differ, min(L, L_d) pairs are formed. Exhaustive with pruning; ties
// keep the lexicographically first assignment.
inline Pairing match_paths(const std::vector<channel::PathParams> &truth,
                           const std::vector<channel::PathParams> &estimates)
{
    if (truth.empty() || estimates.empty())
        throw std::invalid_argument("match_paths: both path sets must be non-empty.");
    const bool truth_small = truth.size() <= estimates.size();
    const auto &small = truth_small ? truth : estimates;
    const auto &large = truth_small ? estimates : truth;

    auto err = [](const channel::PathParams &t, const channel::PathParams &e) {
        return std::pair{rad_to_deg(std::abs(e.aoa - t.aoa)), rad_to_deg(std::abs(e.aod - t.aod))};
    };

    std::vector<std::vector<double>> cost(small.size(), std::vector<double>(large.size()));
    for (std::size_t i = 0; i < small.size(); ++i)
        for (std::size_t j = 0; j < large.size(); ++j)
        {
            const auto [a, d] = truth_small ? err(small[i], large[j]) : err(large[j], small[i]);
            cost[i][j] = a + d;
        }

    detail::MatchSearch s{cost, std::vector<std::size_t>(small.size()), {}, std::vector<bool>(large.size(), false)};
    s.dfs(0, 0.0);

    Pairing out;
    out.total_cost = s.best_cost;
    for (std::size_t i = 0; i < small.size(); ++i)
    {
        PathPair p;
        p.truth = truth_small ? i : s.best[i];
        p.estimate = truth_small ? s.best[i] : i;
        std::tie(p.aoa_error_deg, p.aod_error_deg) = err(truth[p.truth], estimates[p.estimate]);
        out.pairs.push_back(p);
    }
    std::sort(out.pairs.begin(), out.pairs.end(), [](const PathPair &a, const PathPair &b) { return a.truth < b.truth; });
    return out;
}

struct DoaSummary
{
    std::optional<double> rmse_deg; // absent when nothing was detected
    double p_detect = 0.0;
};

// Pools every AoA and AoD error as a separate measurement. Detections are
// errors <= threshold; the RMSE runs over detections only and
// p_detect = |N| / (2 L trials).
class DoaAccumulator
{
public:
    explicit DoaAccumulator(double threshold_deg) : threshold_(threshold_deg)
    {
        if (!(threshold_deg > 0.0))
            throw std::invalid_argument("DoaAccumulator: threshold must be positive.");
    }

    void add_trial(const Pairing &p, std::size_t true_paths)
    {
        opportunities_ += 2 * true_paths;
        for (const auto &pp : p.pairs)
            for (double e : {pp.aoa_error_deg, pp.aod_error_deg})
                add_measurement(e);
    }

    void add_measurement(double error_deg)
    {
        if (std::abs(error_deg) <= threshold_)
        {
            ++detected_;
            sum_sq_ += error_deg * error_deg;
        }
    }

    void add_opportunities(std::size_t n) { opportunities_ += n; }

    void merge(const DoaAccumulator &o)
    {
        detected_ += o.detected_;
        opportunities_ += o.opportunities_;
        sum_sq_ += o.sum_sq_;
    }

    DoaSummary summary() const
    {
        DoaSummary s;
        if (opportunities_ > 0)
            s.p_detect = static_cast<double>(detected_) / static_cast<double>(opportunities_);
        if (detected_ > 0)
            s.rmse_deg = std::sqrt(sum_sq_ / static_cast<double>(detected_));
        return s;
    }

private:
    double threshold_;
    std::size_t detected_ = 0;
    std::size_t opportunities_ = 0;
    double sum_sq_ = 0.0;
};

} // namespace tsdce::bench

#endif
