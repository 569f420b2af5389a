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

#ifndef SCS_MEASUREMENT_HPP
#define SCS_MEASUREMENT_HPP

#include "scs/channel_model.hpp"
#include "scs/pilot_design.hpp"
#include "scs/types.hpp"

#include <optional>
#include <ostream>

namespace scs {

struct MeasurementBlock
{
    CMatrix Y;                   // N_p x R
    std::optional<double> snr_db; // empty: noiseless
    double noise_variance = 0.0;  // per complex sample
};

// Y = Phi H + W. The SNR is the received pilot power per complex sample over
// the noise variance, measured on this realization:
//   sigma^2 = ||Phi H||_F^2 / (N_p R 10^(snr_db / 10)).
// An empty snr_db (or +inf) gives Y = Phi H exactly.
MeasurementBlock simulate_measurement(const SensingMatrix &phi, const CMatrix &H, std::optional<double> snr_db, Rng &rng);
MeasurementBlock simulate_measurement(const SensingMatrix &phi, const ChannelRealization &ch, std::optional<double> snr_db,
                                      Rng &rng);

// Row-major CSV: one line per pilot, one quoted "re,im" cell per symbol.
void write_measurement_csv(const MeasurementBlock &block, std::ostream &os);

} // namespace scs

#endif
