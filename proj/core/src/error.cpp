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

#include "tomobell/error.hpp"

#include <cstdio>

namespace tomobell {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::SingularMatrix:
            return "SingularMatrix";
        case ErrorCode::InvalidStochasticMatrix:
            return "InvalidStochasticMatrix";
        case ErrorCode::AsymmetricR:
            return "AsymmetricR";
        case ErrorCode::OrderOverflow:
            return "OrderOverflow";
        case ErrorCode::NumericalNegativity:
            return "NumericalNegativity";
        case ErrorCode::UnsupportedState:
            return "UnsupportedState";
        case ErrorCode::DegenerateGaussian:
            return "DegenerateGaussian";
        case ErrorCode::NonPhysicalSpec:
            return "NonPhysicalSpec";
        case ErrorCode::InvalidParameter:
            return "InvalidParameter";
        case ErrorCode::TailTooLarge:
            return "TailTooLarge";
        case ErrorCode::InvalidBellNumber:
            return "InvalidBellNumber";
        case ErrorCode::ParseError:
            return "ParseError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

namespace {
std::string tail_message(double deficit, double tolerance) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "truncation deficit %.3e exceeds tolerance %.3e", deficit,
                  tolerance);
    return buf;
}
}  // namespace

TailTooLargeError::TailTooLargeError(double deficit, double tolerance)
    : Error(ErrorCode::TailTooLarge, tail_message(deficit, tolerance)), deficit_(deficit) {}

}  // namespace tomobell
