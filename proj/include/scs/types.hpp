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

#ifndef SCS_TYPES_HPP
#define SCS_TYPES_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace scs {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

using Rng = std::mt19937_64;

// Derives an independent random stream from a master seed and a list of tags
// (trial index, stream purpose, ...). Identical inputs give identical streams
// independent of the order in which streams are created.
inline Rng make_stream(std::uint64_t master_seed, std::initializer_list<std::uint64_t> tags = {})
{
    std::vector<std::uint32_t> words;
    words.reserve(2 * (tags.size() + 1));
    auto push = [&](std::uint64_t v) {
        words.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
        words.push_back(static_cast<std::uint32_t>(v >> 32));
    };
    push(master_seed);
    for (auto t : tags)
        push(t);
    std::seed_seq seq(words.begin(), words.end());
    return Rng(seq);
}

// Circularly symmetric complex Gaussian with E|z|^2 = variance.
inline Complex complex_gaussian(Rng &rng, double variance)
{
    std::normal_distribution<double> n(0.0, 1.0);
    const double s = std::sqrt(variance / 2.0);
    const double re = n(rng);
    const double im = n(rng);
    return {s * re, s * im};
}

} // namespace scs

#endif
