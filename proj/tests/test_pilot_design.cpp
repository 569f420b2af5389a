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

#include "oracles.hpp"

#include <doctest.h>

#include <set>

using namespace scs;

TEST_CASE("design_pilots index rule")
{
    CHECK(design_pilots(16, 4, 1, 0).pilot_indices == std::vector<int>{0, 4, 8, 12});

    const auto full = design_pilots(16, 16, 3, 0);
    for (int i = 0; i < 16; ++i)
        CHECK(full.pilot_indices[i] == i);

    // non-integer spacing 5.12: floor(i * 4096 / 800)
    const auto large = design_pilots(4096, 800, 64, 5);
    CHECK(large.pilot_indices.size() == 800);
    CHECK(large.pilot_indices[1] == 5);
    CHECK(large.pilot_indices[25] == 128);
    CHECK(large.pilot_indices[799] == 4090);
    CHECK(large.antennas() == 64);
    CHECK_NOTHROW(large.validate());
    std::set<std::vector<int>> distinct(large.sequences.begin(), large.sequences.end());
    CHECK(distinct.size() == 64);
}

TEST_CASE("design_pilots errors and distinctness under pressure")
{
    CHECK_THROWS_AS(design_pilots(16, 17, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(design_pilots(16, 0, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(design_pilots(16, 3, 9, 0), std::invalid_argument); // 2^3 = 8 sequences exist

    // M = 2^N_p: every sequence must appear exactly once
    const auto all = design_pilots(16, 3, 8, 1);
    std::set<std::vector<int>> distinct(all.sequences.begin(), all.sequences.end());
    CHECK(distinct.size() == 8);
    for (const auto &p : all.sequences)
        for (int v : p)
            CHECK((v == 1 || v == -1));
}

TEST_CASE("pilot config determinism and text round trip")
{
    const auto a = design_pilots(256, 48, 4, 77);
    const auto b = design_pilots(256, 48, 4, 77);
    CHECK(a.sequences == b.sequences);
    CHECK(a.pilot_indices == b.pilot_indices);
    CHECK(design_pilots(256, 48, 4, 78).sequences != a.sequences);

    const auto back = parse_pilot_config(format_pilot_config(a));
    CHECK(back.sequences == a.sequences);
    CHECK(back.pilot_indices == a.pilot_indices);
    CHECK(back.seed == a.seed);
    CHECK(format_pilot_config(back) == format_pilot_config(a));

    CHECK_THROWS_AS(parse_pilot_config("N = 4\nN_p = 2\nindices = 0 2\nsequence = 1 2\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_pilot_config("N = 4\nN_p = 2\nindices = 2 0\nsequence = 1 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_pilot_config("N = 4\nN_p = 2\nM = 2\nindices = 0 2\nsequence = 1 1\nsequence = 1 1\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_pilot_config("N = 4\nN_p = 2\nM = 3\nindices = 0 2\nsequence = 1 1\n"), std::invalid_argument);
}

TEST_CASE("sensing matrix hand example")
{
    PilotConfig cfg;
    cfg.dft_size = 4;
    cfg.pilot_count = 2;
    cfg.pilot_indices = {0, 2};
    cfg.sequences = {{1, 1}, {1, -1}};
    const auto phi = build_sensing_matrix(cfg, 2);
    CMatrix expected(2, 4);
    expected << 1, 1, 1, 1, 1, -1, -1, 1;
    CHECK((phi.data() - expected).cwiseAbs().maxCoeff() < 1e-15);
    CHECK_THROWS_AS(build_sensing_matrix(cfg, 5), std::invalid_argument);
}

TEST_CASE("identity pilots over every subcarrier give the first L DFT columns")
{
    PilotConfig cfg = design_pilots(8, 8, 1, 0);
    cfg.sequences = {std::vector<int>(8, 1)};
    const auto phi = build_sensing_matrix(cfg, 3);
    for (int n = 0; n < 8; ++n)
        for (int k = 0; k < 3; ++k)
            CHECK(std::abs(phi.data()(n, k) - std::polar(1.0, -2.0 * std::numbers::pi * n * k / 8.0)) < 1e-14);
}

TEST_CASE("sensing matrix at the large-scale setup: shape, unit modulus, closed form")
{
    const auto cfg = design_pilots(4096, 800, 64, 9);
    const auto phi = build_sensing_matrix(cfg, 200);
    CHECK(phi.data().rows() == 800);
    CHECK(phi.data().cols() == 12800);
    CHECK((phi.data().cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-12);

    auto rng = make_stream(4);
    for (int s = 0; s < 2000; ++s)
    {
        const int q = static_cast<int>(rng() % 800);
        const int m = static_cast<int>(rng() % 64);
        const int tau = static_cast<int>(rng() % 200);
        const Complex ref = oracle::phi_entry(4096, cfg.pilot_indices[q], cfg.sequences[m][q], tau);
        CHECK(std::abs(phi.data()(q, m * 200 + tau) - ref) < 1e-12);
    }
}

TEST_CASE("structured products agree with the dense matrix")
{
    const auto cfg = design_pilots(128, 40, 6, 21);
    const auto phi = build_sensing_matrix(cfg, 20);
    auto rng = make_stream(8);
    CMatrix V(40, 3), X(120, 3);
    for (Eigen::Index i = 0; i < V.size(); ++i)
        V(i) = complex_gaussian(rng, 1.0);
    for (Eigen::Index i = 0; i < X.size(); ++i)
        X(i) = complex_gaussian(rng, 1.0);
    const CMatrix dense_adj = phi.data().adjoint() * V;
    const CMatrix dense_fwd = phi.data() * X;
    CHECK((phi.adjoint_times(V) - dense_adj).norm() < 1e-12 * dense_adj.norm());
    CHECK((phi.times(X) - dense_fwd).norm() < 1e-12 * dense_fwd.norm());

    const std::vector<int> cols{0, 5, 119};
    const CMatrix sub = phi.columns(cols);
    CHECK(sub.col(2) == phi.data().col(119));
    const std::vector<int> bad{120};
    CHECK_THROWS_AS(phi.columns(bad), std::invalid_argument);
}

TEST_CASE("overhead report")
{
    const auto large = overhead_report(4096, 800, 64, 6);
    CHECK(std::abs(100.0 * large.total_fraction - 19.53) <= 0.01);
    CHECK(large.per_antenna_average == 12.5);
    CHECK(large.cs_limit == 12);
    CHECK(large.orthogonal_total == 51200);
    CHECK(std::abs(100.0 * large.per_antenna_fraction - 0.31) <= 0.01);

    CHECK(overhead_report(4096, 800, 1, 6).per_antenna_average == 800.0);

    const auto small = overhead_report(1000, 100, 10, 6);
    CHECK(small.total_fraction == doctest::Approx(0.10));
    CHECK(small.per_antenna_average == doctest::Approx(10.0));
    CHECK(small.cs_limit == 12);

    const auto cfg = design_pilots(4096, 800, 64, 1);
    CHECK(overhead_report(cfg, 64, 6).total_fraction == large.total_fraction);
    const std::string text = format_overhead_report(large);
    CHECK(text.find("19.53%") != std::string::npos);
    CHECK(text.find("12.50") != std::string::npos);
}
