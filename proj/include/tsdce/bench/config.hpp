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

#ifndef TSDCE_BENCH_CONFIG_HPP
#define TSDCE_BENCH_CONFIG_HPP

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tsdce::bench
{

class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

enum class Method
{
    tsdce,
    ls,
    dft_peak
};

inline std::string method_name(Method m)
{
    switch (m)
    {
    case Method::tsdce:
        return "tsdce";
    case Method::ls:
        return "ls";
    case Method::dft_peak:
        return "dft_peak";
    }
    return "unknown";
}

inline Method parse_method(const std::string &s)
{
    if (s == "tsdce")
        return Method::tsdce;
    if (s == "ls")
        return Method::ls;
    if (s == "dft_peak")
        return Method::dft_peak;
    throw ConfigError("unknown method '" + s + "' (expected tsdce, ls or dft_peak)");
}

struct ExperimentConfig
{
    std::size_t n_t = 16;
    std::size_t n_r = 16;
    std::size_t p_count = 16;
    std::size_t q_count = 16;
    std::size_t L = 1;
    std::size_t l_desired = 0; // 0 -> L
    std::size_t rounds = 1;
    std::vector<double> snr_db_list{0.0, 10.0, 20.0};
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    std::vector<Method> methods{Method::tsdce, Method::ls};
    double rho = 1.0;
    double detection_threshold_deg = 1.0;
    std::pair<double, double> angle_range{0.0, std::numbers::pi};
    std::size_t n_dft = 1024;
    bool timing = false; // wall_ms is written as 0 unless enabled, to keep CSVs reproducible

    std::size_t effective_l_desired() const { return l_desired == 0 ? L : l_desired; }

    void validate() const
    {
        if (n_t < 2 || n_r < 2)
            throw ConfigError("n_t and n_r must be at least 2");
        if (p_count < n_t || q_count < n_r)
            throw ConfigError("codebook must satisfy p_count >= n_t and q_count >= n_r");
        if (L < 1)
            throw ConfigError("L must be at least 1");
        if (effective_l_desired() > std::min(n_t, n_r))
            throw ConfigError("l_desired must not exceed min(n_t, n_r)");
        if (rounds < 1)
            throw ConfigError("rounds must be at least 1");
        if (trials < 1)
            throw ConfigError("trials must be at least 1");
        if (snr_db_list.empty())
            throw ConfigError("snr_db_list must not be empty");
        if (methods.empty())
            throw ConfigError("methods must not be empty");
        if (!(rho > 0.0))
            throw ConfigError("rho must be positive");
        if (!(detection_threshold_deg > 0.0))
            throw ConfigError("detection_threshold_deg must be positive");
        if (!(angle_range.first < angle_range.second))
            throw ConfigError("angle_range must satisfy lo < hi");
        if (n_dft == 0 || (n_dft & (n_dft - 1)) != 0 || n_dft < std::max(p_count, q_count))
            throw ConfigError("n_dft must be a power of two >= max(p_count, q_count)");
    }
};

namespace detail
{

inline std::string trim(std::string s)
{
    auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
    s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
    s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
    return s;
}

inline std::vector<std::string> split_list(const std::string &v)
{
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        item = trim(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

inline double parse_real(const std::string &key, const std::string &v)
{
    std::string s = v;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "inf" || s == "+inf")
        return std::numeric_limits<double>::infinity();
    if (s == "pi")
        return std::numbers::pi;
    try
    {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size())
            throw std::invalid_argument("trailing characters");
        return d;
    }
    catch (const std::exception &)
    {
        throw ConfigError("key '" + key + "': cannot parse '" + v + "' as a number");
    }
}

inline std::uint64_t parse_unsigned(const std::string &key, const std::string &v)
{
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw ConfigError("key '" + key + "': cannot parse '" + v + "' as a non-negative integer");
    return out;
}

inline bool parse_bool(const std::string &key, const std::string &v)
{
    if (v == "true" || v == "1" || v == "yes")
        return true;
    if (v == "false" || v == "0" || v == "no")
        return false;
    throw ConfigError("key '" + key + "': expected true or false, got '" + v + "'");
}

} // namespace detail

// Flat `key = value` text; `#` starts a comment; lists are comma separated.
inline ExperimentConfig parse_config(std::istream &in)
{
    ExperimentConfig cfg;
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = detail::trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        const auto key = detail::trim(line.substr(0, eq));
        const auto val = detail::trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
        if (!kv.emplace(key, val).second)
            throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }

    for (const auto &[key, val] : kv)
    {
        auto count = [&] { return static_cast<std::size_t>(detail::parse_unsigned(key, val)); };
        if (key == "n_t")
            cfg.n_t = count();
        else if (key == "n_r")
            cfg.n_r = count();
        else if (key == "p_count")
            cfg.p_count = count();
        else if (key == "q_count")
            cfg.q_count = count();
        else if (key == "L")
            cfg.L = count();
        else if (key == "l_desired")
            cfg.l_desired = count();
        else if (key == "rounds")
            cfg.rounds = count();
        else if (key == "trials")
            cfg.trials = count();
        else if (key == "seed")
            cfg.seed = detail::parse_unsigned(key, val);
        else if (key == "n_dft")
            cfg.n_dft = count();
        else if (key == "rho")
            cfg.rho = detail::parse_real(key, val);
        else if (key == "detection_threshold_deg")
            cfg.detection_threshold_deg = detail::parse_real(key, val);
        else if (key == "timing")
            cfg.timing = detail::parse_bool(key, val);
        else if (key == "snr_db_list")
        {
            cfg.snr_db_list.clear();
            for (const auto &s : detail::split_list(val))
                cfg.snr_db_list.push_back(detail::parse_real(key, s));
        }
        else if (key == "methods")
        {
            cfg.methods.clear();
            for (const auto &s : detail::split_list(val))
                cfg.methods.push_back(parse_method(s));
        }
        else if (key == "angle_range")
        {
            const auto parts = detail::split_list(val);
            if (parts.size() != 2)
                throw ConfigError("angle_range: expected 'lo, hi'");
            cfg.angle_range = {detail::parse_real(key, parts[0]), detail::parse_real(key, parts[1])};
        }
        else
            throw ConfigError("unknown key '" + key + "'");
    }
    cfg.validate();
    return cfg;
}

inline ExperimentConfig parse_config_string(const std::string &text)
{
    std::istringstream in(text);
    return parse_config(in);
}

inline ExperimentConfig load_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    try
    {
        return parse_config(in);
    }
    catch (const ConfigError &e)
    {
        throw ConfigError(path + ": " + e.what());
    }
}

} // namespace tsdce::bench

#endif
