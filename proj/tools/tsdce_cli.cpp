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

#include "CLI11.hpp"
#include "tsdce/tsdce.hpp"

#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;
using namespace tsdce;

namespace
{

constexpr int exit_ok = 0;
constexpr int exit_other = 1;
constexpr int exit_config = 2;
constexpr int exit_failure_rate = 3;

void write_paths_csv(const std::vector<channel::PathParams> &paths, const fs::path &file)
{
    std::ofstream out(file, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + file.string() + "' for writing");
    out << "path,gain_magnitude,gain_phase,aod,aoa,omega_aod,omega_aoa\n";
    char buf[256];
    for (std::size_t l = 0; l < paths.size(); ++l)
    {
        const auto &p = paths[l];
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", l, p.gain_magnitude, p.gain_phase,
                      p.aod, p.aoa, p.omega_aod, p.omega_aoa);
        out << buf;
    }
}

int cmd_run(const std::string &config, const std::string &out_path)
{
    const auto cfg = bench::load_config(config);
    bench::emit_csv(bench::run_experiment(cfg), out_path);
    return exit_ok;
}

int cmd_single(const std::string &config, double snr_db, std::size_t trial, const std::string &dump)
{
    const auto cfg = bench::load_config(config);
    const fs::path dir(dump);
    fs::create_directories(dir);

    const auto cb = obs::build_codebook(cfg.p_count, cfg.q_count, cfg.n_t, cfg.n_r);
    const auto in = bench::make_trial(cfg, cb, snr_db, trial);
    const auto sp = obs::to_spatial(in.observation, cfg.n_t, cfg.n_r);

    bench::write_matrix_csv(in.observation.y, (dir / "y.csv").string());
    bench::write_matrix_csv(sp.d, (dir / "d.csv").string());
    bench::write_matrix_csv(sp.d_bar, (dir / "d_bar.csv").string());
    bench::write_matrix_csv(in.channel.h, (dir / "h.csv").string());
    write_paths_csv(in.channel.paths, dir / "truth.csv");

    std::vector<channel::PathParams> trace_est;
    const auto est = algo::run(in.observation, bench::tsdce_config(cfg), [&](const algo::IterationTrace &t) {
        const std::string tag = "k" + std::to_string(t.round) + "_l" + std::to_string(t.path);
        bench::write_matrix_csv(t.residual, (dir / ("residual_" + tag + ".csv")).string());
        trace_est.push_back(t.estimate);
    });
    write_paths_csv(trace_est, dir / "iterations.csv");
    write_paths_csv(est, dir / "estimates.csv");
    const auto h_hat = algo::reconstruct_channel(est, cfg.n_t, cfg.n_r);
    bench::write_matrix_csv(h_hat, (dir / "h_hat.csv").string());

    std::cout << "nmse_db," << bench::format_real(bench::nmse_db(bench::nmse_ratio(h_hat, in.channel.h))) << '\n';
    return exit_ok;
}

int cmd_bound(const std::string &config, const std::string &kind, const std::string &out_path)
{
    const auto cfg = bench::load_config(config);
    const auto records = bench::run_bound_sweep(cfg, bench::parse_bound_kind(kind));
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + out_path + "' for writing");
    bench::write_bound_csv(records, out);
    if (kind == "crlb")
        std::cerr << "note: the crlb curve models the post-SVD residual as white Gaussian noise\n";
    return exit_ok;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"tsdce: spatial-domain channel estimation for analog mmWave links"};
    app.require_subcommand(1);

    std::string config, out_path, dump, kind;
    double snr_db = 0.0;
    std::size_t trial = 0;

    auto *run = app.add_subcommand("run", "Monte Carlo sweep over the configured SNR list");
    run->add_option("--config", config, "configuration file")->required();
    run->add_option("--out", out_path, "output CSV")->required();

    auto *single = app.add_subcommand("single", "one realization with matrix dumps");
    single->add_option("--config", config, "configuration file")->required();
    single->add_option("--snr-db", snr_db, "SNR in dB")->required();
    single->add_option("--trial", trial, "trial index (selects the RNG substream)")->required();
    single->add_option("--dump", dump, "output directory")->required();

    auto *bound = app.add_subcommand("bound", "bound curves over the configured SNR list");
    bound->add_option("--config", config, "configuration file")->required();
    bound->add_option("--kind", kind, "lemma3, lemma4 or crlb")
        ->required()
        ->check(CLI::IsMember({"lemma3", "lemma4", "crlb"}));
    bound->add_option("--out", out_path, "output CSV")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        // --help exits 0; any usage error is reported like a config error.
        return app.exit(e) == 0 ? exit_ok : exit_config;
    }

    try
    {
        if (*run)
            return cmd_run(config, out_path);
        if (*single)
            return cmd_single(config, snr_db, trial, dump);
        if (*bound)
            return cmd_bound(config, kind, out_path);
    }
    catch (const bench::ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    }
    catch (const bench::FailureRateError &e)
    {
        std::cerr << "failure rate exceeded: " << e.what() << '\n';
        return exit_failure_rate;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_other;
    }
    return exit_other;
}
