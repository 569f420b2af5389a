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

#ifndef SCS_EXPERIMENTS_HPP
#define SCS_EXPERIMENTS_HPP

#include "scs/channel_model.hpp"
#include "scs/pilot_design.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace scs {

enum class Algorithm
{
    ssp,
    sp,
    oracle
};

std::string_view algorithm_name(Algorithm a);
Algorithm parse_algorithm(std::string_view name);

// An algorithm restricted to one symbol-group size ("sp@1"), or to every
// configured size when `symbols` is empty ("ssp").
struct AlgorithmRequest
{
    Algorithm algorithm = Algorithm::ssp;
    std::optional<int> symbols;
};

std::vector<AlgorithmRequest> parse_algorithm_list(std::string_view text);

struct Curve
{
    Algorithm algorithm = Algorithm::ssp;
    int symbols = 1; // R

    bool operator==(const Curve &) const = default;
};

// Defaults reproduce the large-scale MIMO setup: M = 64, N = 4096,
// N_p = 800, L = 200, K = 6, ITU Vehicular B at 10 MHz, R in {1, 4}.
struct ExperimentConfig
{
    int antennas = 64;
    int max_delay = 200;
    int sparsity = 6;
    std::vector<int> symbols{1, 4};
    double sample_rate_hz = 10e6;

    int dft_size = 4096;
    int pilot_count = 800;
    int cyclic_prefix = 256; // documentation only, the frequency-domain model never uses it

    std::string pdp = "itu-vehicular-b";
    std::optional<PowerDelayProfile> pdp_override; // loaded from pdp_file
    bool random_support = false;

    std::vector<double> snr_grid{5, 10, 15, 20, 25, 30}; // dB, +inf is noiseless
    int trials = 500;
    std::uint64_t seed = 1;
    std::vector<AlgorithmRequest> algorithms{{Algorithm::ssp, {}}, {Algorithm::sp, {}}, {Algorithm::oracle, {}}};
    int max_iters = 0; // <= 0: K
    int threads = 0;   // <= 0: hardware concurrency
    std::string output_dir = "out";

    void validate() const; // throws std::invalid_argument

    // Trials draw one block of max(symbols) OFDM symbols; a curve with R = r
    // estimates from the first r of them and is scored on symbol 0.
    int block_symbols() const;
    std::vector<Curve> curves() const;
    PowerDelayProfile profile() const;
};

// Documented key-value format; see README. Relative pdp_file paths resolve
// against base_dir.
ExperimentConfig parse_experiment_config(std::string_view text, const std::filesystem::path &base_dir = {});
ExperimentConfig load_experiment_config(const std::filesystem::path &path);
std::string format_experiment_config(const ExperimentConfig &cfg);

// "a:b:step" (inclusive), or a comma/space separated list.
std::vector<double> parse_snr_grid(std::string_view text);

struct ResultRow
{
    double snr_db = 0.0;
    Algorithm algorithm = Algorithm::ssp;
    int symbols = 1;
    double mean_nmse = 0.0;     // linear
    double mean_nmse_db = 0.0;  // 10 log10(mean_nmse)
    int trials = 0;
    double ci95_db = 0.0;       // half-width of the 95% interval, in dB
    std::vector<double> trial_nmse; // linear, in trial order
};

using ResultTable = std::vector<ResultRow>;

// Linear-domain mean, converted to dB afterwards. The dB half-width is the
// normal-approximation interval 1.96 s / sqrt(n) mapped through the
// derivative of 10 log10 at the mean.
ResultRow aggregate_trials(double snr_db, Curve curve, std::vector<double> trial_nmse);

// Fixed pilot pattern for an experiment, derived from the master seed.
PilotConfig experiment_pilots(const ExperimentConfig &cfg);

ResultTable run_experiment(const ExperimentConfig &cfg);

// snr_db,algorithm,R,nmse_db,trials,ci95_db with six decimals.
void emit_csv(const ResultTable &table, std::ostream &os);
void emit_csv(const ResultTable &table, const std::filesystem::path &path);
ResultTable read_csv(std::istream &is);

// Whitespace-separated "snr nmse_db ci95_db" blocks, one gnuplot index per
// curve, plus a gnuplot script next to it (same stem, ".gp").
void emit_plot_data(const ResultTable &table, const std::filesystem::path &path);

} // namespace scs

#endif
