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

#include <gtest/gtest.h>

#include "cli_support.hpp"

namespace tomobell::cli {
namespace {

TEST(ComplexLiteral, AcceptedForms) {
    EXPECT_EQ(parse_complex("1.5"), Complex(1.5, 0));
    EXPECT_EQ(parse_complex("-2"), Complex(-2, 0));
    EXPECT_EQ(parse_complex("0.25i"), Complex(0, 0.25));
    EXPECT_EQ(parse_complex("-0.12i"), Complex(0, -0.12));
    EXPECT_EQ(parse_complex("1+2i"), Complex(1, 2));
    EXPECT_EQ(parse_complex("-1.5-.5i"), Complex(-1.5, -0.5));
    EXPECT_EQ(parse_complex("+3."), Complex(3, 0));
}

TEST(ComplexLiteral, RejectedForms) {
    for (const char *bad : {"1+i2", "i", "", "1 + 2i", "1e3", "2j", "1+2", "--1", "0x10", "nan"}) {
        try {
            parse_complex(bad);
            ADD_FAILURE() << "accepted '" << bad << "'";
        } catch (const Error &e) {
            EXPECT_EQ(e.code(), ErrorCode::ParseError);
        }
    }
}

TEST(Grid, RangesAndLists) {
    EXPECT_EQ(parse_grid("0:1:0.5"), (std::vector<double>{0, 0.5, 1}));
    EXPECT_EQ(parse_grid("0.6,0.9,1.2"), (std::vector<double>{0.6, 0.9, 1.2}));
    EXPECT_EQ(parse_grid("0:0.07:0.01").size(), 8u);
    EXPECT_THROW(parse_grid("1:0:0.5"), Error);
    EXPECT_THROW(parse_grid("0:1:0"), Error);
    EXPECT_THROW(parse_grid(""), Error);
    EXPECT_THROW(parse_grid("0,,1"), Error);
}

TEST(ExitCodes, Mapping) {
    EXPECT_EQ(exit_code_for(ErrorCode::ParseError), kExitConfig);
    EXPECT_EQ(exit_code_for(ErrorCode::InvalidParameter), kExitConfig);
    EXPECT_EQ(exit_code_for(ErrorCode::TailTooLarge), kExitNumerical);
    EXPECT_EQ(exit_code_for(ErrorCode::NumericalNegativity), kExitNumerical);
    EXPECT_EQ(format_error("TailTooLarge", "a\nb"), "error[TailTooLarge]: a b");
    EXPECT_EQ(fixed12(1.0), "1.000000000000");
    EXPECT_EQ(fixed12(-0.0), "0.000000000000");
}

}  // namespace
}  // namespace tomobell::cli
