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

// Small parser for the line-oriented "key = value" text blocks used by the
// profile, pilot and experiment file formats. '#' starts a comment.

#ifndef SCS_KEY_VALUE_HPP
#define SCS_KEY_VALUE_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace scs::detail {

struct KeyValue
{
    std::string key;
    std::string value;
    int line = 0;
};

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);

std::vector<KeyValue> parse_key_values(std::string_view text);

// Splits on commas and/or whitespace, dropping empty items.
std::vector<std::string> split_list(std::string_view value);

double parse_double(std::string_view token, std::string_view what);
std::int64_t parse_int(std::string_view token, std::string_view what);
std::uint64_t parse_uint(std::string_view token, std::string_view what);
std::vector<double> parse_double_list(std::string_view value, std::string_view what);
std::vector<int> parse_int_list(std::string_view value, std::string_view what);

std::string read_text_file(const std::filesystem::path &path);

// Shortest round-trip decimal representation.
std::string format_double(double v);

} // namespace scs::detail

#endif
