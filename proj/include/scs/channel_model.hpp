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

#ifndef SCS_CHANNEL_MODEL_HPP
#define SCS_CHANNEL_MODEL_HPP

#include "scs/types.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace scs {

struct PdpTap
{
    double delay_s = 0.0;  // excess delay in seconds
    double power_db = 0.0; // relative power in dB
};

// Tapped-delay-line power delay profile.
// Delays must be non-negative and strictly increasing; powers are relative and
// get renormalized to unit total linear power when quantized.
struct PowerDelayProfile
{
    std::string name;
    std::vector<PdpTap> taps;

    void validate() const; // throws std::invalid_argument
};

// ITU-R M.1225 Vehicular B (six paths, 0 ... 20 us).
PowerDelayProfile itu_vehicular_b();

// Looks up a built-in profile by name ("itu-vehicular-b", "vehicular-b", "veh-b").
PowerDelayProfile builtin_pdp(std::string_view name);

// Text format:
//   name     = ITU Vehicular B
//   delay_us = 0, 0.3, 8.9, 12.9, 17.1, 20.0
//   power_db = -2.5, 0, -12.8, -10.0, -25.2, -16.0
// Lists are comma and/or whitespace separated, '#' starts a comment.
PowerDelayProfile parse_pdp(std::string_view text);
std::string format_pdp(const PowerDelayProfile &pdp);

struct QuantizedPdp
{
    std::vector<int> delays;    // strictly increasing sample indices in [0, L-1]
    std::vector<double> powers; // linear, sums to 1
};

// Rounds each delay to the nearest sample, clamps to [0, max_delay - 1] and
// merges colliding taps by summing their linear power.
QuantizedPdp quantize_pdp(const PowerDelayProfile &pdp, double sample_rate_hz, int max_delay);

struct ChannelSpec
{
    int antennas = 1;            // M, transmit antennas
    int max_delay = 1;           // L, CIR length in samples
    int sparsity = 1;            // K, nonzero taps per CIR
    int symbols = 1;             // R, adjacent OFDM symbols sharing the support
    double sample_rate_hz = 10e6;

    void validate() const; // throws std::invalid_argument
};

// H stacks the per-antenna CIRs: column r is [h_{1,r}; h_{2,r}; ...; h_{M,r}],
// so row m*L + tau holds tap tau of antenna m. All blocks and all columns share
// the same support.
struct ChannelRealization
{
    CMatrix H;
    std::vector<int> support; // sorted tap delays
    std::vector<double> tap_powers; // linear power of each support tap
    ChannelSpec spec;
};

// PDP mode: the support is fixed by the quantized profile, which must contain
// exactly spec.sparsity distinct taps.
ChannelRealization generate_channel(const ChannelSpec &spec, const PowerDelayProfile &pdp, Rng &rng);

// Random-support mode: K delays drawn uniformly without replacement from
// [0, L-1], each with power 1/K.
ChannelRealization generate_channel(const ChannelSpec &spec, Rng &rng);

// Per-(antenna, symbol) nonzero tap sets of H; used to check the common
// support property.
std::vector<std::vector<int>> extract_block_supports(const CMatrix &H, int antennas, int max_delay);

} // namespace scs

#endif
