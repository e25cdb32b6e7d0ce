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

#ifndef TOMOBELL_ERROR_HPP
#define TOMOBELL_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace tomobell {

enum class ErrorCode {
    SingularMatrix,
    InvalidStochasticMatrix,
    AsymmetricR,
    OrderOverflow,
    NumericalNegativity,
    UnsupportedState,
    DegenerateGaussian,
    NonPhysicalSpec,
    InvalidParameter,
    TailTooLarge,
    InvalidBellNumber,
    ParseError,
};

std::string_view error_code_name(ErrorCode code);

/// Every failure raised by the library. The code is stable and is what the CLI
/// prints as its machine-readable prefix.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message);

    ErrorCode code() const noexcept { return code_; }

   private:
    ErrorCode code_;
};

/// Raised by truncated portraits when the mass outside the photon-number box
/// exceeds the caller's tolerance.
class TailTooLargeError : public Error {
   public:
    TailTooLargeError(double deficit, double tolerance);

    double deficit() const noexcept { return deficit_; }

   private:
    double deficit_;
};

}  // namespace tomobell

#endif
