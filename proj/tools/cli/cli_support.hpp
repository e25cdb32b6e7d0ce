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

#ifndef TOMOBELL_TOOLS_CLI_SUPPORT_HPP
#define TOMOBELL_TOOLS_CLI_SUPPORT_HPP

#include <string>
#include <string_view>
#include <vector>

#include "tomobell/error.hpp"
#include "tomobell/numerics.hpp"

namespace tomobell::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Strict literal grammar: "a", "bi", "a+bi", "a-bi" with an optional leading
/// sign and decimal reals (digits with an optional fraction, no exponent, no
/// spaces). Throws ParseError.
Complex parse_complex(std::string_view text);

/// "start:stop:step" (inclusive of stop up to rounding) or "v1,v2,...".
/// Throws ParseError on malformed input, nonpositive step or an empty grid.
std::vector<double> parse_grid(std::string_view text);

/// 2 for input and configuration problems, 3 for numerical failures.
int exit_code_for(ErrorCode code);

/// "error[Code]: message" on a single line.
std::string format_error(std::string_view code_name, std::string_view message);

/// Error message without the leading "Code: " that Error::what() carries.
std::string strip_code_prefix(const Error &e);

/// Fixed 12-decimal formatting for printed values.
std::string fixed12(double v);

}  // namespace tomobell::cli

#endif
