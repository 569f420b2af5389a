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

#include <doctest.h>

#include <cmath>
#include <set>

using namespace scs;

TEST_CASE("quantize_pdp maps Vehicular B onto a 10 MHz grid")
{
    const auto q = quantize_pdp(itu_vehicular_b(), 10e6, 200);
    CHECK(q.delays == std::vector<int>{0, 3, 89, 129, 171, 199}); // 20 us lands on 200, clamped to L-1

    // dB table converted to linear and renormalized (computed offline)
    const std::vector<double> expected{0.32263565, 0.57373634, 0.03011011, 0.05737363, 0.00173266, 0.01441161};
    REQUIRE(q.powers.size() == expected.size());
    double total = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i)
    {
        CHECK(q.powers[i] == doctest::Approx(expected[i]).epsilon(1e-6));
        total += q.powers[i];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("quantize_pdp identity and merge cases")
{
    SUBCASE("single tap at zero delay")
    {
        const auto q = quantize_pdp({"one", {{0.0, 7.0}}}, 1e6, 4);
        CHECK(q.delays == std::vector<int>{0});
        CHECK(q.powers[0] == doctest::Approx(1.0));
    }
    SUBCASE("two taps rounding to the same sample merge their linear power")
    {
        // 4.9 and 5.2 samples at 1 MHz, linear powers 0.3 and 0.7
        PowerDelayProfile pdp{"pair", {{4.9e-6, 10.0 * std::log10(0.3)}, {5.2e-6, 10.0 * std::log10(0.7)}}};
        const auto q = quantize_pdp(pdp, 1e6, 16);
        CHECK(q.delays == std::vector<int>{5});
        CHECK(q.powers[0] == doctest::Approx(1.0));
    }
    SUBCASE("delays beyond the grid clamp to L-1")
    {
        const auto q = quantize_pdp({"far", {{0.0, 0.0}, {1.0, 0.0}}}, 1e6, 8);
        CHECK(q.delays == std::vector<int>{0, 7});
    }
}

TEST_CASE("power delay profile validation and text format")
{
    CHECK_THROWS_AS((PowerDelayProfile{"empty", {}}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((PowerDelayProfile{"rev", {{1e-6, 0}, {0.5e-6, 0}}}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((PowerDelayProfile{"neg", {{-1e-6, 0}}}.validate()), std::invalid_argument);
    CHECK_THROWS_AS(quantize_pdp(itu_vehicular_b(), 0.0, 200), std::invalid_argument);

    const auto parsed = parse_pdp(format_pdp(itu_vehicular_b()));
    CHECK(parsed.name == "ITU Vehicular B");
    REQUIRE(parsed.taps.size() == 6);
    CHECK(parsed.taps[2].delay_s == doctest::Approx(8.9e-6));
    CHECK(parsed.taps[4].power_db == doctest::Approx(-25.2));

    const auto custom = parse_pdp("# two paths\nname = test\ndelay_us = 0 1.5\npower_db = 0, -3\n");
    CHECK(custom.taps.size() == 2);
    CHECK_THROWS_AS(parse_pdp("delay_us = 0, 1\npower_db = 0\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_pdp("delay_us = 0\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_pdp("delay_us = 0\npower_db = 0\ncolour = red\n"), std::invalid_argument);

    CHECK(builtin_pdp("veh-b").taps.size() == 6);
    CHECK_THROWS_AS(builtin_pdp("pedestrian-z"), std::invalid_argument);
}

TEST_CASE("channel spec validation")
{
    CHECK_NOTHROW(ChannelSpec{64, 200, 6, 4, 10e6}.validate());
    CHECK_THROWS_AS((ChannelSpec{0, 200, 6, 4, 10e6}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((ChannelSpec{1, 4, 5, 1, 10e6}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((ChannelSpec{1, 4, 0, 1, 10e6}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((ChannelSpec{1, 4, 2, 0, 10e6}.validate()), std::invalid_argument);
}

TEST_CASE("generate_channel with Vehicular B at the large-scale setup")
{
    auto rng = make_stream(11);
    const ChannelSpec spec{64, 200, 6, 4, 10e6};
    const auto ch = generate_channel(spec, itu_vehicular_b(), rng);
    CHECK(ch.H.rows() == 12800);
    CHECK(ch.H.cols() == 4);
    CHECK(ch.support == std::vector<int>{0, 3, 89, 129, 171, 199});
    for (const auto &s : extract_block_supports(ch.H, 64, 200))
        CHECK(s == ch.support);

    // PDP mode needs the quantized tap count to equal K
    CHECK_THROWS_AS(generate_channel(ChannelSpec{4, 200, 5, 1, 10e6}, itu_vehicular_b(), rng), std::invalid_argument);
    // at L = 100 the last three taps collapse onto sample 99
    CHECK_THROWS_AS(generate_channel(ChannelSpec{4, 100, 6, 1, 10e6}, itu_vehicular_b(), rng), std::invalid_argument);
}

TEST_CASE("random-support mode")
{
    SUBCASE("K = L forces the full support")
    {
        auto rng = make_stream(3);
        const auto ch = generate_channel(ChannelSpec{1, 4, 4, 1, 1e6}, rng);
        CHECK(ch.support == std::vector<int>{0, 1, 2, 3});
    }
    SUBCASE("common support across antennas and symbols, size K")
    {
        for (std::uint64_t seed = 0; seed < 50; ++seed)
        {
            auto rng = make_stream(seed);
            const auto ch = generate_channel(ChannelSpec{5, 30, 4, 3, 1e6}, rng);
            CHECK(ch.support.size() == 4);
            CHECK(std::set<int>(ch.support.begin(), ch.support.end()).size() == 4);
            for (const auto &s : extract_block_supports(ch.H, 5, 30))
                CHECK(s == ch.support);
        }
    }
}

TEST_CASE("same seed gives a bit-identical realization")
{
    auto a = make_stream(99, {1, 2});
    auto b = make_stream(99, {1, 2});
    const auto ha = generate_channel(ChannelSpec{8, 200, 6, 2, 10e6}, itu_vehicular_b(), a);
    const auto hb = generate_channel(ChannelSpec{8, 200, 6, 2, 10e6}, itu_vehicular_b(), b);
    CHECK(ha.H == hb.H);
    CHECK(ha.support == hb.support);

    auto c = make_stream(99, {1, 3});
    const auto hc = generate_channel(ChannelSpec{8, 200, 6, 2, 10e6}, itu_vehicular_b(), c);
    CHECK(ha.H != hc.H);
}

TEST_CASE("per-antenna power is normalized and gains are uncorrelated")
{
    // 10^4 draws of a single CIR: mean ||h||^2 in [0.97, 1.03]
    const int draws = 10000;
    auto rng = make_stream(2024);
    double power = 0.0;
    Complex cross_ant = 0.0, cross_sym = 0.0;
    double norm_a = 0.0, norm_b = 0.0, norm_c = 0.0;
    for (int d = 0; d < draws; ++d)
    {
        const auto ch = generate_channel(ChannelSpec{2, 200, 6, 2, 10e6}, itu_vehicular_b(), rng);
        power += ch.H.block(0, 0, 200, 1).squaredNorm();
        // tap 3 (strongest) of antenna 0 vs antenna 1, and symbol 0 vs symbol 1
        const Complex a = ch.H(3, 0), b = ch.H(200 + 3, 0), c = ch.H(3, 1);
        cross_ant += a * std::conj(b);
        cross_sym += a * std::conj(c);
        norm_a += std::norm(a);
        norm_b += std::norm(b);
        norm_c += std::norm(c);
    }
    const double mean_power = power / draws;
    CHECK(mean_power >= 0.97);
    CHECK(mean_power <= 1.03);
    CHECK(std::abs(cross_ant) / std::sqrt(norm_a * norm_b) < 0.05);
    CHECK(std::abs(cross_sym) / std::sqrt(norm_a * norm_c) < 0.05);
}
