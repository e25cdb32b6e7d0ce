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

#ifndef TOMOBELL_STATE_FILE_HPP
#define TOMOBELL_STATE_FILE_HPP

#include <memory>
#include <string>
#include <string_view>

#include "tomobell/states.hpp"

namespace tomobell {

/// Parses a JSON state description:
///
///   {"type": "cat", "gamma1": [re, im], "gamma2": [re, im]}
///   {"type": "coherent", "gamma1": [re, im], "gamma2": [re, im]}
///   {"type": "gaussian", "M": [16 reals] | [[4 reals] x 4] | [[16 reals]],
///    "mean": [4 reals], "convention": "physical" | "swapped"}
///   {"type": "gaussian_family", "k": real, "l": real, "convention": ...}
///
/// A complex amplitude may also be a bare real number. Malformed input throws
/// ParseError; a parseable but unphysical Gaussian throws NonPhysicalSpec.
/// JSON state description. Accepted forms:
///   {"type": "cat", "gamma1": [re, im], "gamma2": 1.0}
///   {"type": "coherent", "gamma1": ..., "gamma2": ...}
///   {"type": "gaussian", "M": 16 numbers or 4x4 rows, "mean": [4 numbers]}
///   {"type": "gaussian_family", "k": 0.9, "l": 0.01}
///   {"type": "squeezed_example"}
/// Gaussian types take an optional "convention": "physical" | "swapped".
std::unique_ptr<TomogramSource> parse_state(std::string_view json_text);

std::unique_ptr<TomogramSource> load_state_file(const std::string &path);

DisplacementConvention parse_convention(std::string_view name);

}  // namespace tomobell

#endif
