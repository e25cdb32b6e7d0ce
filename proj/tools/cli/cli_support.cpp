// Copyright 2026 The tomobell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli_support.hpp"

#include <cmath>
#include <cstdio>
#include <regex>

namespace tomobell::cli {

namespace {

[[noreturn]] void fail(const std::string &msg) { throw Error(ErrorCode::ParseError, msg); }

double to_double(const std::string &s) { return std::stod(s); }

}  // namespace

Complex parse_complex(std::string_view text) {
    static const std::regex kReal(R"(([+-]?(?:\d+\.?\d*|\.\d+)))");
    static const std::regex kImag(R"(([+-]?(?:\d+\.?\d*|\.\d+))i)");
    static const std::regex kFull(R"(([+-]?(?:\d+\.?\d*|\.\d+))([+-](?:\d+\.?\d*|\.\d+))i)");
    const std::string s(text);
    std::smatch m;
    if (std::regex_match(s, m, kFull)) return {to_double(m[1]), to_double(m[2])};
    if (std::regex_match(s, m, kImag)) return {0.0, to_double(m[1])};
    if (std::regex_match(s, m, kReal)) return {to_double(m[1]), 0.0};
    fail("malformed complex literal '" + s + "' (expected a, bi, a+bi or a-bi)");
}

std::vector<double> parse_grid(std::string_view text) {
    static const std::regex kNum(R"([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)");
    const std::string s(text);
    const auto number = [&](const std::string &tok) {
        if (!std::regex_match(tok, kNum)) fail("malformed grid value '" + tok + "'");
        return to_double(tok);
    };
    const auto split = [](const std::string &str, char sep) {
        std::vector<std::string> out;
        std::size_t pos = 0;
        while (true) {
            const std::size_t next = str.find(sep, pos);
            out.push_back(str.substr(pos, next - pos));
            if (next == std::string::npos) break;
            pos = next + 1;
        }
        return out;
    };
    std::vector<double> grid;
    if (s.find(':') != std::string::npos) {
        const auto parts = split(s, ':');
        if (parts.size() != 3) fail("grid range must be start:stop:step");
        const double start = number(parts[0]);
        const double stop = number(parts[1]);
        const double step = number(parts[2]);
        if (!(step > 0.0)) fail("grid step must be positive");
        const double span = (stop - start) / step;
        if (span >= 0.0) {
            const auto count = static_cast<long>(std::floor(span + 1e-9)) + 1;
            if (count > 100000) fail("grid has too many points");
            for (long i = 0; i < count; ++i) grid.push_back(start + static_cast<double>(i) * step);
        }
    } else if (!s.empty()) {
        for (const auto &tok : split(s, ',')) grid.push_back(number(tok));
    }
    if (grid.empty()) fail("empty grid '" + s + "'");
    return grid;
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::ParseError:
        case ErrorCode::InvalidParameter:
        case ErrorCode::NonPhysicalSpec:
        case ErrorCode::UnsupportedState:
            return kExitConfig;
        default:
            return kExitNumerical;
    }
}

std::string format_error(std::string_view code_name, std::string_view message) {
    std::string line = "error[" + std::string(code_name) + "]: ";
    for (char c : message) line.push_back(c == '\n' ? ' ' : c);
    return line;
}

std::string strip_code_prefix(const Error &e) {
    const std::string what = e.what();
    const std::string prefix = std::string(error_code_name(e.code())) + ": ";
    return what.rfind(prefix, 0) == 0 ? what.substr(prefix.size()) : what;
}

std::string fixed12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", v == 0.0 ? 0.0 : v);
    return buf;
}

}  // namespace tomobell::cli
