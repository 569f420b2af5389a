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

#include "scs/measurement.hpp"

#include "key_value.hpp"

#include <cmath>
#include <stdexcept>

namespace scs {

MeasurementBlock simulate_measurement(const SensingMatrix &phi, const CMatrix &H, std::optional<double> snr_db, Rng &rng)
{
    if (H.rows() != phi.cols())
        throw std::invalid_argument("simulate_measurement: Phi has " + std::to_string(phi.cols()) +
                                    " columns but H has " + std::to_string(H.rows()) + " rows");
    if (snr_db && std::isnan(*snr_db))
        throw std::invalid_argument("simulate_measurement: SNR is NaN");
    if (snr_db && std::isinf(*snr_db) && *snr_db > 0)
        snr_db.reset();

    MeasurementBlock out;
    out.snr_db = snr_db;
    out.Y = phi.times(H);
    if (!snr_db)
        return out;

    const double samples = static_cast<double>(out.Y.rows() * out.Y.cols());
    const double signal_power = out.Y.squaredNorm() / samples;
    out.noise_variance = signal_power / std::pow(10.0, *snr_db / 10.0);
    for (Eigen::Index r = 0; r < out.Y.cols(); ++r)
        for (Eigen::Index q = 0; q < out.Y.rows(); ++q)
            out.Y(q, r) += complex_gaussian(rng, out.noise_variance);
    return out;
}

MeasurementBlock simulate_measurement(const SensingMatrix &phi, const ChannelRealization &ch, std::optional<double> snr_db,
                                      Rng &rng)
{
    return simulate_measurement(phi, ch.H, snr_db, rng);
}

void write_measurement_csv(const MeasurementBlock &block, std::ostream &os)
{
    for (Eigen::Index q = 0; q < block.Y.rows(); ++q)
    {
        for (Eigen::Index r = 0; r < block.Y.cols(); ++r)
        {
            if (r)
                os << ',';
            os << '"' << detail::format_double(block.Y(q, r).real()) << ',' << detail::format_double(block.Y(q, r).imag())
               << '"';
        }
        os << '\n';
    }
}

} // namespace scs
