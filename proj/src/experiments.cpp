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

#include "scs/experiments.hpp"

#include "key_value.hpp"
#include "scs/measurement.hpp"
#include "scs/recovery.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace scs {

std::string_view algorithm_name(Algorithm a)
{
    switch (a)
    {
    case Algorithm::ssp:
        return "ssp";
    case Algorithm::sp:
        return "sp";
    case Algorithm::oracle:
        return "oracle";
    }
    return "?";
}

Algorithm parse_algorithm(std::string_view name)
{
    const std::string n = detail::to_lower(detail::trim(name));
    if (n == "ssp")
        return Algorithm::ssp;
    if (n == "sp")
        return Algorithm::sp;
    if (n == "oracle" || n == "ls" || n == "oracle-ls")
        return Algorithm::oracle;
    throw std::invalid_argument("unknown algorithm '" + std::string(name) + "' (expected ssp, sp or oracle)");
}

std::vector<AlgorithmRequest> parse_algorithm_list(std::string_view text)
{
    std::vector<AlgorithmRequest> out;
    for (const auto &item : detail::split_list(text))
    {
        AlgorithmRequest req;
        if (auto at = item.find('@'); at != std::string::npos)
        {
            req.algorithm = parse_algorithm(std::string_view(item).substr(0, at));
            req.symbols = static_cast<int>(detail::parse_int(std::string_view(item).substr(at + 1), "algorithm symbol count"));
        }
        else
            req.algorithm = parse_algorithm(item);
        out.push_back(req);
    }
    if (out.empty())
        throw std::invalid_argument("algorithm list is empty");
    return out;
}

int ExperimentConfig::block_symbols() const
{
    if (symbols.empty())
        throw std::invalid_argument("experiment: symbol list is empty");
    return *std::max_element(symbols.begin(), symbols.end());
}

std::vector<Curve> ExperimentConfig::curves() const
{
    std::vector<int> rs = symbols;
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
    std::vector<Curve> out;
    for (const auto &req : algorithms)
        for (int r : rs)
        {
            if (req.symbols && *req.symbols != r)
                continue;
            Curve c{req.algorithm, r};
            if (std::find(out.begin(), out.end(), c) == out.end())
                out.push_back(c);
        }
    return out;
}

PowerDelayProfile ExperimentConfig::profile() const
{
    if (pdp_override)
        return *pdp_override;
    return builtin_pdp(pdp);
}

void ExperimentConfig::validate() const
{
    ChannelSpec spec{antennas, max_delay, sparsity, block_symbols(), sample_rate_hz};
    spec.validate();
    for (int r : symbols)
        if (r < 1)
            throw std::invalid_argument("experiment: every R must be >= 1");
    if (dft_size < 1 || pilot_count < 1 || pilot_count > dft_size)
        throw std::invalid_argument("experiment: need 1 <= N_p <= N");
    if (max_delay > dft_size)
        throw std::invalid_argument("experiment: L must not exceed N");
    if (trials < 1)
        throw std::invalid_argument("experiment: trials must be >= 1");
    if (snr_grid.empty())
        throw std::invalid_argument("experiment: SNR grid is empty");
    for (double s : snr_grid)
        if (std::isnan(s) || (std::isinf(s) && s < 0))
            throw std::invalid_argument("experiment: SNR values must be finite or +inf");
    for (const auto &req : algorithms)
        if (req.symbols && std::find(symbols.begin(), symbols.end(), *req.symbols) == symbols.end())
            throw std::invalid_argument("experiment: algorithm requests R = " + std::to_string(*req.symbols) +
                                        " which is not in the symbol list");
    if (curves().empty())
        throw std::invalid_argument("experiment: no algorithms requested");
    if (static_cast<long long>(antennas) * sparsity > pilot_count)
        throw std::invalid_argument("experiment: M*K = " + std::to_string(static_cast<long long>(antennas) * sparsity) +
                                    " exceeds N_p = " + std::to_string(pilot_count) +
                                    "; the least-squares step on the expanded support Gamma would be underdetermined");
    if (!random_support)
    {
        const auto q = quantize_pdp(profile(), sample_rate_hz, max_delay);
        if (static_cast<int>(q.delays.size()) != sparsity)
            throw std::invalid_argument("experiment: profile quantizes to " + std::to_string(q.delays.size()) +
                                        " taps but K = " + std::to_string(sparsity));
    }
}

std::vector<double> parse_snr_grid(std::string_view text)
{
    const std::string t = detail::trim(text);
    if (t.find(':') != std::string::npos)
    {
        std::vector<std::string> parts;
        std::size_t start = 0;
        while (true)
        {
            auto c = t.find(':', start);
            parts.push_back(t.substr(start, c == std::string::npos ? std::string::npos : c - start));
            if (c == std::string::npos)
                break;
            start = c + 1;
        }
        if (parts.size() != 3)
            throw std::invalid_argument("SNR range must be 'start:stop:step'");
        const double a = detail::parse_double(parts[0], "SNR start");
        const double b = detail::parse_double(parts[1], "SNR stop");
        const double step = detail::parse_double(parts[2], "SNR step");
        if (!std::isfinite(a) || !std::isfinite(b) || !(step > 0.0) || b < a)
            throw std::invalid_argument("SNR range needs finite start <= stop and a positive step");
        std::vector<double> out;
        const auto n = static_cast<long long>(std::floor((b - a) / step + 1e-9));
        for (long long i = 0; i <= n; ++i)
            out.push_back(a + static_cast<double>(i) * step);
        return out;
    }
    auto out = detail::parse_double_list(t, "SNR");
    if (out.empty())
        throw std::invalid_argument("SNR grid is empty");
    return out;
}

ExperimentConfig parse_experiment_config(std::string_view text, const std::filesystem::path &base_dir)
{
    ExperimentConfig cfg;
    auto as_int = [](const detail::KeyValue &kv) { return static_cast<int>(detail::parse_int(kv.value, kv.key)); };
    auto as_bool = [](const detail::KeyValue &kv) {
        const std::string v = detail::to_lower(kv.value);
        if (v == "1" || v == "true" || v == "yes" || v == "on")
            return true;
        if (v == "0" || v == "false" || v == "no" || v == "off")
            return false;
        throw std::invalid_argument("line " + std::to_string(kv.line) + ": '" + kv.key + "' expects a boolean");
    };

    for (const auto &kv : detail::parse_key_values(text))
    {
        const std::string &k = kv.key;
        if (k == "antennas" || k == "m")
            cfg.antennas = as_int(kv);
        else if (k == "max_delay" || k == "l")
            cfg.max_delay = as_int(kv);
        else if (k == "sparsity" || k == "k")
            cfg.sparsity = as_int(kv);
        else if (k == "symbols" || k == "r")
            cfg.symbols = detail::parse_int_list(kv.value, k);
        else if (k == "sample_rate_hz")
            cfg.sample_rate_hz = detail::parse_double(kv.value, k);
        else if (k == "dft_size" || k == "n")
            cfg.dft_size = as_int(kv);
        else if (k == "pilot_count" || k == "n_p")
            cfg.pilot_count = as_int(kv);
        else if (k == "cyclic_prefix" || k == "n_g")
            cfg.cyclic_prefix = as_int(kv);
        else if (k == "pdp")
        {
            cfg.pdp = kv.value;
            cfg.pdp_override.reset();
        }
        else if (k == "pdp_file")
        {
            std::filesystem::path p = kv.value;
            if (p.is_relative())
                p = base_dir / p;
            cfg.pdp_override = parse_pdp(detail::read_text_file(p));
            cfg.pdp = cfg.pdp_override->name;
        }
        else if (k == "random_support")
            cfg.random_support = as_bool(kv);
        else if (k == "snr_db")
            cfg.snr_grid = parse_snr_grid(kv.value);
        else if (k == "trials")
            cfg.trials = as_int(kv);
        else if (k == "seed")
            cfg.seed = detail::parse_uint(kv.value, k);
        else if (k == "algorithms")
            cfg.algorithms = parse_algorithm_list(kv.value);
        else if (k == "max_iters")
            cfg.max_iters = as_int(kv);
        else if (k == "threads")
            cfg.threads = as_int(kv);
        else if (k == "output_dir")
            cfg.output_dir = kv.value;
        else
            throw std::invalid_argument("line " + std::to_string(kv.line) + ": unknown experiment key '" + k + "'");
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path &path)
{
    return parse_experiment_config(detail::read_text_file(path), path.parent_path());
}

std::string format_experiment_config(const ExperimentConfig &cfg)
{
    std::ostringstream os;
    auto list = [&](const auto &v) {
        for (std::size_t i = 0; i < v.size(); ++i)
        {
            os << (i ? ", " : "");
            if constexpr (std::is_floating_point_v<std::decay_t<decltype(v[i])>>)
                os << detail::format_double(v[i]);
            else
                os << v[i];
        }
    };
    os << "antennas = " << cfg.antennas << "\n";
    os << "max_delay = " << cfg.max_delay << "\n";
    os << "sparsity = " << cfg.sparsity << "\n";
    os << "symbols = ";
    list(cfg.symbols);
    os << "\nsample_rate_hz = " << detail::format_double(cfg.sample_rate_hz) << "\n";
    os << "dft_size = " << cfg.dft_size << "\n";
    os << "pilot_count = " << cfg.pilot_count << "\n";
    os << "cyclic_prefix = " << cfg.cyclic_prefix << "\n";
    if (!cfg.pdp_override)
        os << "pdp = " << cfg.pdp << "\n";
    else
        os << "# pdp loaded from file: " << cfg.pdp_override->name << "\n";
    os << "random_support = " << (cfg.random_support ? "true" : "false") << "\n";
    os << "snr_db = ";
    list(cfg.snr_grid);
    os << "\ntrials = " << cfg.trials << "\n";
    os << "seed = " << cfg.seed << "\n";
    os << "algorithms = ";
    for (std::size_t i = 0; i < cfg.algorithms.size(); ++i)
    {
        os << (i ? ", " : "") << algorithm_name(cfg.algorithms[i].algorithm);
        if (cfg.algorithms[i].symbols)
            os << '@' << *cfg.algorithms[i].symbols;
    }
    os << "\nmax_iters = " << cfg.max_iters << "\n";
    os << "threads = " << cfg.threads << "\n";
    os << "output_dir = " << cfg.output_dir << "\n";
    return os.str();
}

ResultRow aggregate_trials(double snr_db, Curve curve, std::vector<double> trial_nmse)
{
    ResultRow row;
    row.snr_db = snr_db;
    row.algorithm = curve.algorithm;
    row.symbols = curve.symbols;
    row.trials = static_cast<int>(trial_nmse.size());
    if (trial_nmse.empty())
        throw std::invalid_argument("aggregate_trials: no trials");
    const double n = static_cast<double>(trial_nmse.size());
    double sum = 0.0;
    for (double v : trial_nmse)
        sum += v;
    row.mean_nmse = sum / n;
    row.mean_nmse_db = to_db(row.mean_nmse);
    if (trial_nmse.size() > 1 && row.mean_nmse > 0.0)
    {
        double ss = 0.0;
        for (double v : trial_nmse)
            ss += (v - row.mean_nmse) * (v - row.mean_nmse);
        const double stddev = std::sqrt(ss / (n - 1.0));
        const double half = 1.96 * stddev / std::sqrt(n);
        row.ci95_db = 10.0 / std::log(10.0) * half / row.mean_nmse;
    }
    row.trial_nmse = std::move(trial_nmse);
    return row;
}

PilotConfig experiment_pilots(const ExperimentConfig &cfg)
{
    auto rng = make_stream(cfg.seed, {0});
    return design_pilots(cfg.dft_size, cfg.pilot_count, cfg.antennas, rng());
}

namespace {

enum StreamTag : std::uint64_t
{
    channel_stream = 1,
    noise_stream = 2,
};

// NMSE of every curve at every SNR point for one trial, indexed
// [snr][curve]. Each trial draws one block of max(R) symbols; a curve with
// R = r estimates from the first r symbols and is scored on symbol 0, so all
// curves of a trial share the channel and noise they are judged on.
std::vector<std::vector<double>> run_trial(const ExperimentConfig &cfg, const SensingMatrix &phi,
                                           const PowerDelayProfile &pdp, const std::vector<Curve> &curves, int trial)
{
    const ChannelSpec spec{cfg.antennas, cfg.max_delay, cfg.sparsity, cfg.block_symbols(), cfg.sample_rate_hz};
    auto ch_rng = make_stream(cfg.seed, {channel_stream, static_cast<std::uint64_t>(trial)});
    const ChannelRealization ch = cfg.random_support ? generate_channel(spec, ch_rng) : generate_channel(spec, pdp, ch_rng);
    const CMatrix h0 = ch.H.col(0);

    std::vector<std::vector<double>> out(cfg.snr_grid.size(), std::vector<double>(curves.size()));
    for (std::size_t s = 0; s < cfg.snr_grid.size(); ++s)
    {
        auto noise_rng = make_stream(cfg.seed, {noise_stream, static_cast<std::uint64_t>(trial), s});
        const double snr = cfg.snr_grid[s];
        const auto meas = simulate_measurement(phi, ch, std::isinf(snr) ? std::nullopt : std::optional<double>(snr), noise_rng);

        // SP and oracle LS act column by column, so R does not change their
        // estimate of symbol 0
        std::optional<double> sp_nmse, oracle_nmse;
        for (std::size_t c = 0; c < curves.size(); ++c)
        {
            const Curve &curve = curves[c];
            const CMatrix Y = meas.Y.leftCols(curve.symbols);
            switch (curve.algorithm)
            {
            case Algorithm::ssp:
                out[s][c] = nmse(ssp_recover(Y, phi, cfg.sparsity, cfg.max_iters).H_hat.col(0), h0);
                break;
            case Algorithm::sp:
                if (!sp_nmse)
                {
                    const int level = cfg.antennas * cfg.sparsity;
                    const int iters = cfg.max_iters > 0 ? cfg.max_iters : cfg.sparsity;
                    sp_nmse = nmse(sp_recover(Y.col(0), phi, level, iters).H_hat, h0);
                }
                out[s][c] = *sp_nmse;
                break;
            case Algorithm::oracle:
                if (!oracle_nmse)
                    oracle_nmse = nmse(oracle_ls(CMatrix(Y.col(0)), phi, ch.support), h0);
                out[s][c] = *oracle_nmse;
                break;
            }
        }
    }
    return out;
}

std::string format_fixed(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

} // namespace

ResultTable run_experiment(const ExperimentConfig &cfg)
{
    cfg.validate();
    const auto curves = cfg.curves();
    const PilotConfig pilots = experiment_pilots(cfg);
    const SensingMatrix phi = build_sensing_matrix(pilots, cfg.max_delay);
    const PowerDelayProfile pdp = cfg.random_support ? PowerDelayProfile{} : cfg.profile();

    // per_trial[t][s][c]
    std::vector<std::vector<std::vector<double>>> per_trial(cfg.trials);
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        while (true)
        {
            const int t = next.fetch_add(1);
            if (t >= cfg.trials)
                return;
            try
            {
                per_trial[t] = run_trial(cfg, phi, pdp, curves, t);
            }
            catch (...)
            {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next.store(cfg.trials);
            }
        }
    };

    int threads = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp(threads, 1, cfg.trials);
    if (threads == 1)
        worker();
    else
    {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i)
            pool.emplace_back(worker);
        for (auto &th : pool)
            th.join();
    }
    if (failure)
        std::rethrow_exception(failure);

    ResultTable table;
    for (std::size_t s = 0; s < cfg.snr_grid.size(); ++s)
        for (std::size_t c = 0; c < curves.size(); ++c)
        {
            std::vector<double> values(cfg.trials);
            for (int t = 0; t < cfg.trials; ++t)
                values[t] = per_trial[t][s][c];
            table.push_back(aggregate_trials(cfg.snr_grid[s], curves[c], std::move(values)));
        }
    return table;
}

void emit_csv(const ResultTable &table, std::ostream &os)
{
    os << "snr_db,algorithm,R,nmse_db,trials,ci95_db\n";
    for (const auto &row : table)
        os << format_fixed(row.snr_db) << ',' << algorithm_name(row.algorithm) << ',' << row.symbols << ','
           << format_fixed(row.mean_nmse_db) << ',' << row.trials << ',' << format_fixed(row.ci95_db) << '\n';
}

void emit_csv(const ResultTable &table, const std::filesystem::path &path)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    emit_csv(table, os);
    if (!os)
        throw std::runtime_error("write to '" + path.string() + "' failed");
}

ResultTable read_csv(std::istream &is)
{
    std::string line;
    if (!std::getline(is, line) || detail::trim(line) != "snr_db,algorithm,R,nmse_db,trials,ci95_db")
        throw std::invalid_argument("not a result table: unexpected header");
    ResultTable table;
    int line_no = 1;
    while (std::getline(is, line))
    {
        ++line_no;
        if (detail::trim(line).empty())
            continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            f.push_back(detail::trim(cell));
        if (f.size() != 6)
            throw std::invalid_argument("line " + std::to_string(line_no) + ": expected 6 fields");
        ResultRow row;
        row.snr_db = detail::parse_double(f[0], "snr_db");
        row.algorithm = parse_algorithm(f[1]);
        row.symbols = static_cast<int>(detail::parse_int(f[2], "R"));
        row.mean_nmse_db = detail::parse_double(f[3], "nmse_db");
        row.mean_nmse = std::pow(10.0, row.mean_nmse_db / 10.0);
        row.trials = static_cast<int>(detail::parse_int(f[4], "trials"));
        row.ci95_db = detail::parse_double(f[5], "ci95_db");
        table.push_back(std::move(row));
    }
    return table;
}

void emit_plot_data(const ResultTable &table, const std::filesystem::path &path)
{
    if (table.empty())
        throw std::invalid_argument("emit_plot_data: empty table");

    // curves in first-appearance order
    std::vector<Curve> curves;
    for (const auto &row : table)
    {
        Curve c{row.algorithm, row.symbols};
        if (std::find(curves.begin(), curves.end(), c) == curves.end())
            curves.push_back(c);
    }
    auto label = [](const Curve &c) {
        std::string s(algorithm_name(c.algorithm));
        return s + " R=" + std::to_string(c.symbols);
    };

    {
        std::ofstream os(path, std::ios::binary);
        if (!os)
            throw std::runtime_error("cannot write '" + path.string() + "'");
        for (std::size_t i = 0; i < curves.size(); ++i)
        {
            if (i)
                os << "\n\n";
            os << "# " << label(curves[i]) << "\n";
            os << "# snr_db nmse_db ci95_db\n";
            for (const auto &row : table)
                if (Curve{row.algorithm, row.symbols} == curves[i])
                    os << format_fixed(row.snr_db) << ' ' << format_fixed(row.mean_nmse_db) << ' ' << format_fixed(row.ci95_db)
                       << '\n';
        }
        if (!os)
            throw std::runtime_error("write to '" + path.string() + "' failed");
    }

    std::filesystem::path script = path;
    script.replace_extension(".gp");
    std::ofstream gp(script, std::ios::binary);
    if (!gp)
        throw std::runtime_error("cannot write '" + script.string() + "'");
    gp << "# gnuplot " << script.filename().string() << "\n";
    gp << "set terminal pngcairo size 800,600\n";
    gp << "set output '" << path.stem().string() << ".png'\n";
    gp << "set xlabel 'SNR (dB)'\n";
    gp << "set ylabel 'NMSE (dB)'\n";
    gp << "set grid\n";
    gp << "set key top right\n";
    gp << "plot";
    for (std::size_t i = 0; i < curves.size(); ++i)
        gp << (i ? ", \\\n    " : " ") << "'" << path.filename().string() << "' index " << i
           << " using 1:2 with linespoints title '" << label(curves[i]) << "'";
    gp << "\n";
    if (!gp)
        throw std::runtime_error("write to '" + script.string() + "' failed");
}

} // namespace scs
