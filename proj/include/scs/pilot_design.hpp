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

#ifndef SCS_PILOT_DESIGN_HPP
#define SCS_PILOT_DESIGN_HPP

#include "scs/types.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scs {

// Superimposed pilot pattern: every antenna transmits on the same subcarrier
// set, antennas are told apart by their +-1 sequences.
struct PilotConfig
{
    int dft_size = 0;                 // N
    int pilot_count = 0;              // N_p
    std::vector<int> pilot_indices;   // sorted, distinct, in [0, N-1]
    std::vector<std::vector<int>> sequences; // M rows of length N_p, entries +-1
    std::uint64_t seed = 0;

    int antennas() const { return static_cast<int>(sequences.size()); }
    void validate() const; // throws std::invalid_argument
};

// pilot_indices[i] = floor(i * N / N_p); sequences i.i.d. Bernoulli +-1, any
// sequence that repeats an earlier antenna's is redrawn.
PilotConfig design_pilots(int dft_size, int pilot_count, int antennas, std::uint64_t seed);

// Text format (replayable bit-exactly):
//   N = 16
//   N_p = 4
//   M = 2
//   seed = 7
//   indices = 0 4 8 12
//   sequence = 1 -1 1 1      # one line per antenna, in antenna order
PilotConfig parse_pilot_config(std::string_view text);
std::string format_pilot_config(const PilotConfig &cfg);

// Phi = [P_1 F_L|_Omega, ..., P_M F_L|_Omega], N_p x (M L), with the
// unnormalized DFT F(n, k) = exp(-j 2 pi n k / N).
//
// Besides the dense matrix the two factors are kept (the N_p x L partial DFT
// and the N_p x M sign matrix) so that products with Phi^H can be formed as a
// single small GEMM instead of streaming the dense matrix.
class SensingMatrix
{
  public:
    SensingMatrix(const PilotConfig &cfg, int max_delay);

    const CMatrix &data() const { return data_; }
    int pilot_count() const { return static_cast<int>(data_.rows()); }
    int antennas() const { return antennas_; }
    int max_delay() const { return max_delay_; }
    Eigen::Index cols() const { return data_.cols(); }

    // Phi^H V, (M L) x R.
    CMatrix adjoint_times(const CMatrix &V) const;

    // Phi X, N_p x R.
    CMatrix times(const CMatrix &X) const;

    // Phi restricted to the given columns.
    CMatrix columns(std::span<const int> cols) const;

  private:
    int antennas_;
    int max_delay_;
    CMatrix data_;
    CMatrix partial_dft_; // N_p x L
    RVector signs_;       // N_p * M, column-major N_p x M
};

SensingMatrix build_sensing_matrix(const PilotConfig &cfg, int max_delay);

struct OverheadReport
{
    int dft_size = 0;
    int pilot_count = 0;
    int antennas = 0;
    int sparsity = 0;
    double total_fraction = 0.0;       // N_p / N
    double per_antenna_average = 0.0;  // N_p / M
    double per_antenna_fraction = 0.0; // N_p / (M N)
    int cs_limit = 0;                  // 2K
    long long orthogonal_total = 0;    // M N_p with non-overlapping pilots
};

OverheadReport overhead_report(const PilotConfig &cfg, int antennas, int sparsity);
OverheadReport overhead_report(int dft_size, int pilot_count, int antennas, int sparsity);
std::string format_overhead_report(const OverheadReport &r);

} // namespace scs

#endif
