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

#include "key_value.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace scs::detail {

std::string trim(std::string_view s)
{
    auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && is_space(s.front()))
        s.remove_prefix(1);
    while (!s.empty() && is_space(s.back()))
        s.remove_suffix(1);
    return std::string(s);
}

std::string to_lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::vector<KeyValue> parse_key_values(std::string_view text)
{
    std::vector<KeyValue> out;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size())
    {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        std::string stripped = trim(line);
        if (stripped.empty())
        {
            if (end == text.size())
                break;
            continue;
        }
        auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("line " + std::to_string(line_no) + ": expected 'key = value', got '" + stripped + "'");
        KeyValue kv;
        kv.key = to_lower(trim(std::string_view(stripped).substr(0, eq)));
        kv.value = trim(std::string_view(stripped).substr(eq + 1));
        kv.line = line_no;
        if (kv.key.empty())
            throw std::invalid_argument("line " + std::to_string(line_no) + ": empty key");
        out.push_back(std::move(kv));
        if (end == text.size())
            break;
    }
    return out;
}

std::vector<std::string> split_list(std::string_view value)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : value)
    {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c)))
        {
            if (!cur.empty())
                out.push_back(std::move(cur));
            cur.clear();
        }
        else
            cur.push_back(c);
    }
    if (!cur.empty())
        out.push_back(std::move(cur));
    return out;
}

double parse_double(std::string_view token, std::string_view what)
{
    std::string t = to_lower(trim(token));
    if (t == "inf" || t == "+inf")
        return std::numeric_limits<double>::infinity();
    if (t == "-inf")
        return -std::numeric_limits<double>::infinity();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
        throw std::invalid_argument(std::string(what) + ": not a number: '" + std::string(token) + "'");
    return v;
}

std::int64_t parse_int(std::string_view token, std::string_view what)
{
    std::string t = trim(token);
    if (!t.empty() && t.front() == '+')
        t.erase(0, 1);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
        throw std::invalid_argument(std::string(what) + ": not an integer: '" + std::string(token) + "'");
    return v;
}

std::uint64_t parse_uint(std::string_view token, std::string_view what)
{
    std::string t = trim(token);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
        throw std::invalid_argument(std::string(what) + ": not an unsigned integer: '" + std::string(token) + "'");
    return v;
}

std::vector<double> parse_double_list(std::string_view value, std::string_view what)
{
    std::vector<double> out;
    for (const auto &tok : split_list(value))
        out.push_back(parse_double(tok, what));
    return out;
}

std::vector<int> parse_int_list(std::string_view value, std::string_view what)
{
    std::vector<int> out;
    for (const auto &tok : split_list(value))
    {
        auto v = parse_int(tok, what);
        if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
            throw std::invalid_argument(std::string(what) + ": value out of range: " + tok);
        out.push_back(static_cast<int>(v));
    }
    return out;
}

std::string read_text_file(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string format_double(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc())
        throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

} // namespace scs::detail
