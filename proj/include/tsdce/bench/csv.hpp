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

#ifndef TSDCE_BENCH_CSV_HPP
#define TSDCE_BENCH_CSV_HPP

#include "tsdce/bench/experiment.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

namespace tsdce::bench
{

inline constexpr const char *csv_header = "method,snr_db,nmse_db,doa_rmse_deg,p_detect,mean_sse,trials,wall_ms";

// Six significant digits; NaN and infinities print as nan / inf / -inf.
inline std::string format_real(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

inline void write_csv(const std::vector<MetricRecord> &records, std::ostream &out)
{
    out << csv_header << '\n';
    for (const auto &r : records)
        out << r.method << ',' << format_real(r.snr_db) << ',' << format_real(r.nmse_db) << ','
            << format_real(r.doa_rmse_deg) << ',' << format_real(r.p_detect) << ',' << format_real(r.mean_sse) << ','
            << r.trials << ',' << format_real(r.wall_ms) << '\n';
}

inline void emit_csv(const std::vector<MetricRecord> &records, const std::string &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("emit_csv: cannot open '" + path + "' for writing");
    write_csv(records, out);
    out.flush();
    if (!out)
        throw std::runtime_error("emit_csv: write to '" + path + "' failed");
}

inline std::vector<MetricRecord> parse_csv(std::istream &in)
{
    std::string line;
    if (!std::getline(in, line) || line != csv_header)
        throw std::runtime_error("parse_csv: missing or unexpected header");
    std::vector<MetricRecord> out;
    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        const auto f = detail::split_list(line);
        if (f.size() != 8)
            throw std::runtime_error("parse_csv: expected 8 fields in '" + line + "'");
        auto real = [](const std::string &s) { return std::stod(s); };
        MetricRecord r;
        r.method = f[0];
        r.snr_db = real(f[1]);
        r.nmse_db = real(f[2]);
        r.doa_rmse_deg = real(f[3]);
        r.p_detect = real(f[4]);
        r.mean_sse = real(f[5]);
        r.trials = static_cast<std::size_t>(std::stoull(f[6]));
        r.wall_ms = real(f[7]);
        out.push_back(r);
    }
    return out;
}

// One `m,n,re,im` row per entry.
inline void write_matrix_csv(const numkit::ComplexMatrix &m, std::ostream &out)
{
    out << "m,n,re,im\n";
    char buf[96];
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
        {
            std::snprintf(buf, sizeof(buf), "%zu,%zu,%.17g,%.17g\n", r, c, m(r, c).real(), m(r, c).imag());
            out << buf;
        }
}

inline void write_matrix_csv(const numkit::ComplexMatrix &m, const std::string &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("write_matrix_csv: cannot open '" + path + "' for writing");
    write_matrix_csv(m, out);
}

} // namespace tsdce::bench

#endif
