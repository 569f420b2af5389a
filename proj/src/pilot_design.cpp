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

#include "scs/pilot_design.hpp"

#include "key_value.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace scs {

void PilotConfig::validate() const
{
    if (dft_size < 1)
        throw std::invalid_argument("pilot config: DFT size must be >= 1");
    if (pilot_count < 1 || pilot_count > dft_size)
        throw std::invalid_argument("pilot config: need 1 <= N_p <= N");
    if (static_cast<int>(pilot_indices.size()) != pilot_count)
        throw std::invalid_argument("pilot config: index list length differs from N_p");
    for (std::size_t i = 0; i < pilot_indices.size(); ++i)
    {
        if (pilot_indices[i] < 0 || pilot_indices[i] >= dft_size)
            throw std::invalid_argument("pilot config: pilot index out of range");
        if (i > 0 && pilot_indices[i] <= pilot_indices[i - 1])
            throw std::invalid_argument("pilot config: pilot indices must be sorted and distinct");
    }
    if (sequences.empty())
        throw std::invalid_argument("pilot config: no pilot sequences");
    std::set<std::vector<int>> seen;
    for (const auto &p : sequences)
    {
        if (static_cast<int>(p.size()) != pilot_count)
            throw std::invalid_argument("pilot config: sequence length differs from N_p");
        for (int v : p)
            if (v != 1 && v != -1)
                throw std::invalid_argument("pilot config: sequence entries must be +1 or -1");
        if (!seen.insert(p).second)
            throw std::invalid_argument("pilot config: pilot sequences of two antennas coincide");
    }
}

PilotConfig design_pilots(int dft_size, int pilot_count, int antennas, std::uint64_t seed)
{
    if (dft_size < 1)
        throw std::invalid_argument("design_pilots: DFT size must be >= 1");
    if (pilot_count < 1 || pilot_count > dft_size)
        throw std::invalid_argument("design_pilots: need 1 <= N_p <= N");
    if (antennas < 1)
        throw std::invalid_argument("design_pilots: need at least one antenna");
    if (pilot_count < 63 && static_cast<std::uint64_t>(antennas) > (std::uint64_t{1} << pilot_count))
        throw std::invalid_argument("design_pilots: M exceeds 2^N_p, distinct +-1 sequences are impossible");

    PilotConfig cfg;
    cfg.dft_size = dft_size;
    cfg.pilot_count = pilot_count;
    cfg.seed = seed;
    cfg.pilot_indices.resize(pilot_count);
    for (int i = 0; i < pilot_count; ++i)
        cfg.pilot_indices[i] = static_cast<int>((static_cast<long long>(i) * dft_size) / pilot_count);

    Rng rng(seed);
    std::set<std::vector<int>> seen;
    cfg.sequences.reserve(antennas);
    while (static_cast<int>(cfg.sequences.size()) < antennas)
    {
        std::vector<int> p(pilot_count);
        for (auto &v : p)
            v = (rng() >> 63) ? 1 : -1;
        if (seen.insert(p).second)
            cfg.sequences.push_back(std::move(p));
    }
    return cfg;
}

PilotConfig parse_pilot_config(std::string_view text)
{
    PilotConfig cfg;
    int antennas = -1;
    for (const auto &kv : detail::parse_key_values(text))
    {
        if (kv.key == "n")
            cfg.dft_size = static_cast<int>(detail::parse_int(kv.value, "N"));
        else if (kv.key == "n_p")
            cfg.pilot_count = static_cast<int>(detail::parse_int(kv.value, "N_p"));
        else if (kv.key == "m")
            antennas = static_cast<int>(detail::parse_int(kv.value, "M"));
        else if (kv.key == "seed")
            cfg.seed = detail::parse_uint(kv.value, "seed");
        else if (kv.key == "indices")
            cfg.pilot_indices = detail::parse_int_list(kv.value, "indices");
        else if (kv.key == "sequence")
            cfg.sequences.push_back(detail::parse_int_list(kv.value, "sequence"));
        else
            throw std::invalid_argument("line " + std::to_string(kv.line) + ": unknown pilot config key '" + kv.key + "'");
    }
    if (antennas >= 0 && antennas != cfg.antennas())
        throw std::invalid_argument("pilot config: M = " + std::to_string(antennas) + " but " +
                                    std::to_string(cfg.antennas()) + " sequences given");
    cfg.validate();
    return cfg;
}

std::string format_pilot_config(const PilotConfig &cfg)
{
    std::ostringstream os;
    os << "N = " << cfg.dft_size << "\n";
    os << "N_p = " << cfg.pilot_count << "\n";
    os << "M = " << cfg.antennas() << "\n";
    os << "seed = " << cfg.seed << "\n";
    os << "indices =";
    for (int i : cfg.pilot_indices)
        os << ' ' << i;
    os << "\n";
    for (const auto &p : cfg.sequences)
    {
        os << "sequence =";
        for (int v : p)
            os << ' ' << v;
        os << "\n";
    }
    return os.str();
}

SensingMatrix::SensingMatrix(const PilotConfig &cfg, int max_delay)
    : antennas_(cfg.antennas()), max_delay_(max_delay)
{
    cfg.validate();
    if (max_delay < 1 || max_delay > cfg.dft_size)
        throw std::invalid_argument("build_sensing_matrix: need 1 <= L <= N");

    const Eigen::Index Np = cfg.pilot_count;
    const Eigen::Index L = max_delay;
    const long long N = cfg.dft_size;

    partial_dft_.resize(Np, L);
    for (Eigen::Index q = 0; q < Np; ++q)
        for (Eigen::Index tau = 0; tau < L; ++tau)
        {
            // reduce n*k mod N in integers so the phase stays exact for large N
            const long long nk = (static_cast<long long>(cfg.pilot_indices[q]) * tau) % N;
            partial_dft_(q, tau) = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(nk) / static_cast<double>(N));
        }

    signs_.resize(Np * antennas_);
    data_.resize(Np, antennas_ * L);
    for (int m = 0; m < antennas_; ++m)
    {
        for (Eigen::Index q = 0; q < Np; ++q)
            signs_(m * Np + q) = cfg.sequences[m][q];
        data_.middleCols(m * L, L) = signs_.segment(m * Np, Np).asDiagonal() * partial_dft_;
    }
}

CMatrix SensingMatrix::adjoint_times(const CMatrix &V) const
{
    const Eigen::Index Np = pilot_count();
    const Eigen::Index R = V.cols();
    if (V.rows() != Np)
        throw std::invalid_argument("adjoint_times: row count differs from N_p");
    // Phi_m^H V = F^H (p_m .* V): stack the sign-weighted copies side by side
    CMatrix weighted(Np, antennas_ * R);
    for (int m = 0; m < antennas_; ++m)
        weighted.middleCols(m * R, R) = signs_.segment(m * Np, Np).asDiagonal() * V;
    CMatrix z = partial_dft_.adjoint() * weighted; // L x (M R)

    CMatrix out(static_cast<Eigen::Index>(antennas_) * max_delay_, R);
    for (int m = 0; m < antennas_; ++m)
        out.middleRows(m * max_delay_, max_delay_) = z.middleCols(m * R, R);
    return out;
}

CMatrix SensingMatrix::times(const CMatrix &X) const
{
    if (X.rows() != cols())
        throw std::invalid_argument("times: row count differs from M*L");
    const Eigen::Index Np = pilot_count();
    const Eigen::Index R = X.cols();
    CMatrix stacked(max_delay_, antennas_ * R);
    for (int m = 0; m < antennas_; ++m)
        stacked.middleCols(m * R, R) = X.middleRows(m * max_delay_, max_delay_);
    CMatrix t = partial_dft_ * stacked; // N_p x (M R)
    CMatrix out = CMatrix::Zero(Np, R);
    for (int m = 0; m < antennas_; ++m)
        out.noalias() += signs_.segment(m * Np, Np).asDiagonal() * t.middleCols(m * R, R);
    return out;
}

CMatrix SensingMatrix::columns(std::span<const int> cols) const
{
    CMatrix out(data_.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < cols.size(); ++i)
    {
        if (cols[i] < 0 || cols[i] >= data_.cols())
            throw std::invalid_argument("columns: index out of range");
        out.col(static_cast<Eigen::Index>(i)) = data_.col(cols[i]);
    }
    return out;
}

SensingMatrix build_sensing_matrix(const PilotConfig &cfg, int max_delay)
{
    return SensingMatrix(cfg, max_delay);
}

OverheadReport overhead_report(int dft_size, int pilot_count, int antennas, int sparsity)
{
    if (dft_size < 1 || pilot_count < 1 || antennas < 1 || sparsity < 0)
        throw std::invalid_argument("overhead_report: invalid dimensions");
    OverheadReport r;
    r.dft_size = dft_size;
    r.pilot_count = pilot_count;
    r.antennas = antennas;
    r.sparsity = sparsity;
    r.total_fraction = static_cast<double>(pilot_count) / dft_size;
    r.per_antenna_average = static_cast<double>(pilot_count) / antennas;
    r.per_antenna_fraction = r.per_antenna_average / dft_size;
    r.cs_limit = 2 * sparsity;
    r.orthogonal_total = static_cast<long long>(antennas) * pilot_count;
    return r;
}

OverheadReport overhead_report(const PilotConfig &cfg, int antennas, int sparsity)
{
    return overhead_report(cfg.dft_size, cfg.pilot_count, antennas, sparsity);
}

std::string format_overhead_report(const OverheadReport &r)
{
    std::ostringstream os;
    os << std::fixed;
    os << "pilot overhead (superimposed):  " << r.pilot_count << " of " << r.dft_size << " subcarriers = "
       << std::setprecision(2) << 100.0 * r.total_fraction << "%\n";
    os << "average pilots per antenna:     " << std::setprecision(2) << r.per_antenna_average << " ("
       << 100.0 * r.per_antenna_fraction << "% of N)\n";
    os << "structured CS limit 2K:         " << r.cs_limit << "\n";
    os << "orthogonal pilots would need:   " << r.orthogonal_total << " pilots (M * N_p)\n";
    return os.str();
}

} // namespace scs
