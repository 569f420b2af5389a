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

#include "scs/channel_model.hpp"

#include "key_value.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace scs {

void PowerDelayProfile::validate() const
{
    if (taps.empty())
        throw std::invalid_argument("power delay profile '" + name + "' has no taps");
    for (std::size_t i = 0; i < taps.size(); ++i)
    {
        if (!std::isfinite(taps[i].delay_s) || taps[i].delay_s < 0.0)
            throw std::invalid_argument("power delay profile '" + name + "': negative or non-finite delay");
        if (!std::isfinite(taps[i].power_db))
            throw std::invalid_argument("power delay profile '" + name + "': non-finite power");
        if (i > 0 && taps[i].delay_s <= taps[i - 1].delay_s)
            throw std::invalid_argument("power delay profile '" + name + "': delays must be strictly increasing");
    }
}

PowerDelayProfile itu_vehicular_b()
{
    return {"ITU Vehicular B",
            {{0.0, -2.5}, {0.3e-6, 0.0}, {8.9e-6, -12.8}, {12.9e-6, -10.0}, {17.1e-6, -25.2}, {20.0e-6, -16.0}}};
}

PowerDelayProfile builtin_pdp(std::string_view name)
{
    const std::string n = detail::to_lower(detail::trim(name));
    if (n == "itu-vehicular-b" || n == "vehicular-b" || n == "veh-b" || n == "itu vehicular b")
        return itu_vehicular_b();
    throw std::invalid_argument("unknown built-in power delay profile '" + std::string(name) + "'");
}

PowerDelayProfile parse_pdp(std::string_view text)
{
    PowerDelayProfile pdp;
    std::vector<double> delays_us, powers_db;
    bool have_delay = false, have_power = false;
    for (const auto &kv : detail::parse_key_values(text))
    {
        if (kv.key == "name")
            pdp.name = kv.value;
        else if (kv.key == "delay_us")
        {
            delays_us = detail::parse_double_list(kv.value, "delay_us");
            have_delay = true;
        }
        else if (kv.key == "power_db")
        {
            powers_db = detail::parse_double_list(kv.value, "power_db");
            have_power = true;
        }
        else
            throw std::invalid_argument("line " + std::to_string(kv.line) + ": unknown profile key '" + kv.key + "'");
    }
    if (!have_delay || !have_power)
        throw std::invalid_argument("power delay profile needs both delay_us and power_db");
    if (delays_us.size() != powers_db.size())
        throw std::invalid_argument("delay_us and power_db lists differ in length");
    for (std::size_t i = 0; i < delays_us.size(); ++i)
        pdp.taps.push_back({delays_us[i] * 1e-6, powers_db[i]});
    pdp.validate();
    return pdp;
}

std::string format_pdp(const PowerDelayProfile &pdp)
{
    std::ostringstream os;
    os << "name = " << pdp.name << "\n";
    os << "delay_us =";
    for (std::size_t i = 0; i < pdp.taps.size(); ++i)
        os << (i ? ", " : " ") << detail::format_double(pdp.taps[i].delay_s * 1e6);
    os << "\npower_db =";
    for (std::size_t i = 0; i < pdp.taps.size(); ++i)
        os << (i ? ", " : " ") << detail::format_double(pdp.taps[i].power_db);
    os << "\n";
    return os.str();
}

QuantizedPdp quantize_pdp(const PowerDelayProfile &pdp, double sample_rate_hz, int max_delay)
{
    pdp.validate();
    if (!(sample_rate_hz > 0.0))
        throw std::invalid_argument("sample rate must be positive");
    if (max_delay < 1)
        throw std::invalid_argument("max delay must be at least one sample");

    std::map<int, double> merged;
    for (const auto &tap : pdp.taps)
    {
        // delay * rate is rounded in long double to keep e.g. 0.3us * 10MHz at 3
        const long double exact = static_cast<long double>(tap.delay_s) * sample_rate_hz;
        long long idx = std::llround(exact);
        idx = std::clamp<long long>(idx, 0, max_delay - 1);
        merged[static_cast<int>(idx)] += std::pow(10.0, tap.power_db / 10.0);
    }

    QuantizedPdp q;
    double total = 0.0;
    for (const auto &[d, p] : merged)
        total += p;
    for (const auto &[d, p] : merged)
    {
        q.delays.push_back(d);
        q.powers.push_back(p / total);
    }
    return q;
}

void ChannelSpec::validate() const
{
    if (antennas < 1)
        throw std::invalid_argument("channel spec: antenna count must be >= 1");
    if (max_delay < 1)
        throw std::invalid_argument("channel spec: max delay spread must be >= 1");
    if (sparsity < 1 || sparsity > max_delay)
        throw std::invalid_argument("channel spec: sparsity must satisfy 1 <= K <= L");
    if (symbols < 1)
        throw std::invalid_argument("channel spec: symbol count must be >= 1");
    if (!(sample_rate_hz > 0.0))
        throw std::invalid_argument("channel spec: sample rate must be positive");
}

namespace {

ChannelRealization draw_gains(const ChannelSpec &spec, std::vector<int> support, std::vector<double> powers, Rng &rng)
{
    ChannelRealization ch;
    ch.spec = spec;
    const Eigen::Index L = spec.max_delay;
    ch.H = CMatrix::Zero(static_cast<Eigen::Index>(spec.antennas) * L, spec.symbols);
    for (int r = 0; r < spec.symbols; ++r)
        for (int m = 0; m < spec.antennas; ++m)
            for (std::size_t i = 0; i < support.size(); ++i)
                ch.H(m * L + support[i], r) = complex_gaussian(rng, powers[i]);
    ch.support = std::move(support);
    ch.tap_powers = std::move(powers);
    return ch;
}

} // namespace

ChannelRealization generate_channel(const ChannelSpec &spec, const PowerDelayProfile &pdp, Rng &rng)
{
    spec.validate();
    QuantizedPdp q = quantize_pdp(pdp, spec.sample_rate_hz, spec.max_delay);
    if (static_cast<int>(q.delays.size()) != spec.sparsity)
        throw std::invalid_argument("profile '" + pdp.name + "' quantizes to " + std::to_string(q.delays.size()) +
                                    " distinct taps but the channel spec asks for K = " + std::to_string(spec.sparsity));
    return draw_gains(spec, std::move(q.delays), std::move(q.powers), rng);
}

ChannelRealization generate_channel(const ChannelSpec &spec, Rng &rng)
{
    spec.validate();
    // partial Fisher-Yates over [0, L-1]
    std::vector<int> pool(spec.max_delay);
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < spec.sparsity; ++i)
    {
        const auto span = static_cast<std::uint64_t>(spec.max_delay - i);
        const auto j = i + static_cast<int>(rng() % span);
        std::swap(pool[i], pool[j]);
    }
    std::vector<int> support(pool.begin(), pool.begin() + spec.sparsity);
    std::sort(support.begin(), support.end());
    std::vector<double> powers(support.size(), 1.0 / spec.sparsity);
    return draw_gains(spec, std::move(support), std::move(powers), rng);
}

std::vector<std::vector<int>> extract_block_supports(const CMatrix &H, int antennas, int max_delay)
{
    if (antennas < 1 || max_delay < 1 || H.rows() != static_cast<Eigen::Index>(antennas) * max_delay)
        throw std::invalid_argument("extract_block_supports: H does not have M*L rows");
    std::vector<std::vector<int>> out;
    for (Eigen::Index r = 0; r < H.cols(); ++r)
        for (int m = 0; m < antennas; ++m)
        {
            std::vector<int> s;
            for (int tau = 0; tau < max_delay; ++tau)
                if (std::abs(H(static_cast<Eigen::Index>(m) * max_delay + tau, r)) > 0.0)
                    s.push_back(tau);
            out.push_back(std::move(s));
        }
    return out;
}

} // namespace scs
