// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The scs-pilot authors
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

// Command-line driver for the Monte Carlo channel-estimation study.
//
//   scs_cli run --config configs/large_scale.cfg [--snr 5:30:5] [--trials 200] [--seed 7]
//               [--out results] [--algorithms ssp,sp@1,oracle] [--threads 4]
//   scs_cli report --in results/results.csv [--config results/config.txt]

#include "scs/experiments.hpp"
#include "scs/pilot_design.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>

namespace fs = std::filesystem;

namespace {

void print_table(const scs::ResultTable &table, std::ostream &os)
{
    os << std::setw(8) << "snr_db" << std::setw(9) << "alg" << std::setw(4) << "R" << std::setw(12) << "nmse_db"
       << std::setw(10) << "ci95_db" << std::setw(8) << "trials" << '\n';
    os << std::fixed << std::setprecision(2);
    for (const auto &row : table)
        os << std::setw(8) << row.snr_db << std::setw(9) << scs::algorithm_name(row.algorithm) << std::setw(4) << row.symbols
           << std::setw(12) << row.mean_nmse_db << std::setw(10) << row.ci95_db << std::setw(8) << row.trials << '\n';
}

int run_command(const std::string &config_path, const std::string &snr, int trials, const std::string &seed,
                const std::string &out, const std::string &algorithms, int threads)
{
    scs::ExperimentConfig cfg = scs::load_experiment_config(config_path);
    if (!snr.empty())
        cfg.snr_grid = scs::parse_snr_grid(snr);
    if (trials > 0)
        cfg.trials = trials;
    if (!seed.empty())
        cfg.seed = std::stoull(seed);
    if (!out.empty())
        cfg.output_dir = out;
    if (!algorithms.empty())
        cfg.algorithms = scs::parse_algorithm_list(algorithms);
    if (threads > 0)
        cfg.threads = threads;
    cfg.validate();

    const fs::path dir = cfg.output_dir;
    fs::create_directories(dir);

    const auto pilots = scs::experiment_pilots(cfg);
    std::cout << scs::format_overhead_report(scs::overhead_report(pilots, cfg.antennas, cfg.sparsity)) << '\n';

    const auto t0 = std::chrono::steady_clock::now();
    const auto table = scs::run_experiment(cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    scs::emit_csv(table, dir / "results.csv");
    scs::emit_plot_data(table, dir / "nmse.dat");
    {
        std::ofstream os(dir / "config.txt");
        os << scs::format_experiment_config(cfg);
    }
    {
        std::ofstream os(dir / "pilots.txt");
        os << scs::format_pilot_config(pilots);
    }

    print_table(table, std::cout);
    std::cout << "\n" << cfg.trials << " trials in " << std::fixed << std::setprecision(1) << secs << " s; wrote "
              << (dir / "results.csv").string() << '\n';
    return 0;
}

int report_command(const std::string &in, std::string config_path)
{
    std::ifstream is(in);
    if (!is)
        throw std::runtime_error("cannot open '" + in + "'");
    const auto table = scs::read_csv(is);

    if (config_path.empty())
    {
        const fs::path sibling = fs::path(in).parent_path() / "config.txt";
        if (fs::exists(sibling))
            config_path = sibling.string();
    }
    if (!config_path.empty())
    {
        const auto cfg = scs::load_experiment_config(config_path);
        std::cout << scs::format_overhead_report(
                         scs::overhead_report(cfg.dft_size, cfg.pilot_count, cfg.antennas, cfg.sparsity))
                  << '\n';
    }
    else
        std::cout << "(no config found next to the table, overhead report skipped)\n\n";

    print_table(table, std::cout);

    // per-curve summary
    std::map<std::pair<std::string, int>, std::pair<double, double>> range;
    for (const auto &row : table)
    {
        auto key = std::make_pair(std::string(scs::algorithm_name(row.algorithm)), row.symbols);
        auto [it, inserted] = range.try_emplace(key, row.mean_nmse_db, row.mean_nmse_db);
        if (!inserted)
        {
            it->second.first = std::min(it->second.first, row.mean_nmse_db);
            it->second.second = std::max(it->second.second, row.mean_nmse_db);
        }
    }
    std::cout << "\ncurve summary (nmse_db best .. worst)\n";
    for (const auto &[key, r] : range)
        std::cout << "  " << std::setw(6) << key.first << " R=" << key.second << ": " << std::fixed << std::setprecision(2)
                  << r.first << " .. " << r.second << '\n';
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Superimposed pilots and structured subspace pursuit channel estimation"};
    app.require_subcommand(1);

    std::string config_path, snr, seed, out, algorithms;
    int trials = 0, threads = 0;
    auto *run = app.add_subcommand("run", "Run a Monte Carlo NMSE-vs-SNR experiment");
    run->add_option("--config", config_path, "Experiment config file")->required()->check(CLI::ExistingFile);
    run->add_option("--snr", snr, "SNR grid, 'start:stop:step' or a list");
    run->add_option("--trials", trials, "Trials per SNR point")->check(CLI::PositiveNumber);
    run->add_option("--seed", seed, "Master seed");
    run->add_option("--out", out, "Output directory");
    run->add_option("--algorithms", algorithms, "Comma list of ssp, sp, oracle (optionally name@R)");
    run->add_option("--threads", threads, "Worker threads (default: all cores)");

    std::string in, report_config;
    auto *report = app.add_subcommand("report", "Print the pilot overhead and a summary of a result table");
    report->add_option("--in", in, "results.csv written by 'run'")->required();
    report->add_option("--config", report_config, "Experiment config (default: config.txt next to the table)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        return app.exit(e);
    }

    try
    {
        if (*run)
            return run_command(config_path, snr, trials, seed, out, algorithms, threads);
        return report_command(in, report_config);
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
