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

#include <algorithm>
#include <array>
#include <random>

#include "test_support.hpp"
#include "tomobell/error.hpp"
#include "tomobell/hermite.hpp"

namespace tomobell {
namespace {

using testing::close_rel;
using testing::random_complex;
using testing::uniform;

HermiteParams random_params(std::mt19937_64 &rng, bool complex_entries) {
    HermiteParams p;
    for (int i = 0; i < 4; ++i) {
        for (int j = i; j < 4; ++j) {
            const Complex v = complex_entries ? random_complex(rng, 1.0) : Complex(uniform(rng, -1, 1), 0);
            p.r[i][j] = p.r[j][i] = v;
        }
        p.x[i] = complex_entries ? random_complex(rng, 1.0) : Complex(uniform(rng, -1, 1), 0);
    }
    return p;
}

HermiteIndex random_index(std::mt19937_64 &rng, int max_total) {
    HermiteIndex k{};
    const int total = std::uniform_int_distribution<int>(0, max_total)(rng);
    for (int t = 0; t < total; ++t) ++k[std::uniform_int_distribution<int>(0, 3)(rng)];
    return k;
}

TEST(Hermite, LowOrderValues) {
    std::mt19937_64 rng(1);
    const HermiteParams p = random_params(rng, true);
    EXPECT_EQ(hermite_eval(p, {0, 0, 0, 0}), Complex(1.0, 0.0));
    Complex rx0 = 0;
    for (int j = 0; j < 4; ++j) rx0 += p.r[0][j] * p.x[j];
    EXPECT_TRUE(close_rel(hermite_eval(p, {1, 0, 0, 0}), rx0, 1e-14, 1e-15));
    EXPECT_TRUE(close_rel(hermite_eval(p, {2, 0, 0, 0}), rx0 * rx0 - p.r[0][0], 1e-13, 1e-15));
}

TEST(Hermite, OneDimensionalReduction) {
    HermiteParams p;
    p.r[0][0] = 1.0;
    p.x[0] = 2.0;
    // x^3 - 3x at x = 2
    EXPECT_NEAR(std::abs(hermite_oracle(p, {3, 0, 0, 0}) - Complex(2.0, 0.0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(hermite_eval(p, {3, 0, 0, 0}) - Complex(2.0, 0.0)), 0.0, 1e-14);
    EXPECT_EQ(hermite_oracle(p, {0, 0, 0, 0}), Complex(1.0, 0.0));
}

TEST(Hermite, RecursionMatchesSymbolicOracle) {
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 200; ++t) {
        const HermiteParams p = random_params(rng, t % 2 == 1);
        const HermiteIndex k = random_index(rng, 6);
        const Complex a = hermite_eval(p, k), b = hermite_oracle(p, k);
        EXPECT_TRUE(close_rel(a, b, 1e-10, 1e-12)) << "case " << t << ": " << a << " vs " << b;
    }
}

TEST(Hermite, PermutationSymmetry) {
    std::mt19937_64 rng(99);
    std::array<int, 4> perm{0, 1, 2, 3};
    for (int t = 0; t < 50; ++t) {
        const HermiteParams p = random_params(rng, true);
        const HermiteIndex k = random_index(rng, 10);
        std::shuffle(perm.begin(), perm.end(), rng);
        HermiteParams q;
        HermiteIndex kp{};
        for (int i = 0; i < 4; ++i) {
            q.x[i] = p.x[perm[i]];
            kp[i] = k[perm[i]];
            for (int j = 0; j < 4; ++j) q.r[i][j] = p.r[perm[i]][perm[j]];
        }
        EXPECT_TRUE(close_rel(hermite_eval(p, k), hermite_eval(q, kp), 1e-12, 1e-14));
    }
}

TEST(Hermite, MemoizedAndOneShotPathsAgreeBitForBit) {
    std::mt19937_64 rng(5);
    const HermiteParams p = random_params(rng, true);
    const HermiteLattice lattice(p, {6, 6, 6, 6});
    for (int t = 0; t < 100; ++t) {
        HermiteIndex k{};
        for (int &c : k) c = std::uniform_int_distribution<int>(0, 6)(rng);
        const Complex a = lattice.value(k), b = hermite_eval(p, k);
        EXPECT_EQ(a.real(), b.real());
        EXPECT_EQ(a.imag(), b.imag());
    }
}

TEST(Hermite, ExtendedPrecisionAgreesWithDouble) {
    std::mt19937_64 rng(8);
    const HermiteParams p = random_params(rng, true);
    const HermiteLattice d(p, {5, 5, 5, 5});
    const HermiteLattice dd(p, {5, 5, 5, 5}, kDefaultMaxHermiteOrder, HermitePrecision::kDoubleDouble);
    for (int a = 0; a <= 5; ++a)
        for (int b = 0; b <= 5; ++b) {
            const HermiteIndex k{a, b, 5 - a, 5 - b};
            EXPECT_TRUE(close_rel(d.normalized(k), dd.normalized(k), 1e-11, 1e-13));
        }
}

TEST(Hermite, RejectsAsymmetricR) {
    HermiteParams p;
    p.r[0][1] = 1.0;
    try {
        hermite_eval(p, {1, 1, 0, 0});
        FAIL() << "expected AsymmetricR";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::AsymmetricR);
    }
}

TEST(Hermite, OrderLimits) {
    HermiteParams p;
    try {
        hermite_eval(p, {10, 10, 0, 0}, 12);
        FAIL() << "expected OrderOverflow";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::OrderOverflow);
    }
    try {
        hermite_oracle(p, {3, 3, 3, 0});
        FAIL() << "expected OrderOverflow";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::OrderOverflow);
    }
}

}  // namespace
}  // namespace tomobell
