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

#include <cmath>
#include <random>

#include "test_support.hpp"
#include "tomobell/bell.hpp"
#include "tomobell/error.hpp"

namespace tomobell {
namespace {

using testing::random_complex;
using testing::uniform;

const double kReferenceMG[4][4] = {{0.6199, 0.5907, 0.6083, 0.4678},
                                 {0.0222, 0.0515, 0.0291, 0.1696},
                                 {0.0241, 0.0395, 0.0357, 0.1624},
                                 {0.3335, 0.3181, 0.3266, 0.2000}};

BellSettings random_settings(std::mt19937_64 &rng, double box) {
    return {random_complex(rng, box), random_complex(rng, box), random_complex(rng, box), random_complex(rng, box)};
}

TEST(SignMatrix, Reference) {
    const int expected[4][4] = {{1, -1, -1, 1}, {1, -1, -1, 1}, {1, -1, -1, 1}, {-1, 1, 1, -1}};
    const auto &s = chsh_sign_matrix();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) EXPECT_EQ(s[i][j], expected[i][j]);
}

TEST(BellMatrix, ConstantAndUniformPortraits) {
    const PortraitFn first = [](const DisplacementPair &) { return PortraitVector{{1, 0, 0, 0}, 0}; };
    const BellMatrix m = bell_matrix(first, {});
    for (int j = 0; j < 4; ++j) {
        EXPECT_EQ(m.m[0][j], 1.0);
        for (int i = 1; i < 4; ++i) EXPECT_EQ(m.m[i][j], 0.0);
    }
    const PortraitFn uniform_fn = [](const DisplacementPair &) {
        return PortraitVector{{0.25, 0.25, 0.25, 0.25}, 0};
    };
    EXPECT_EQ(bell_number(bell_matrix(uniform_fn, {})), 0.0);
}

TEST(BellMatrix, RejectsNonStochasticColumns) {
    const PortraitFn bad = [](const DisplacementPair &) { return PortraitVector{{0.5, 0.6, 0, 0}, 0}; };
    EXPECT_THROW(bell_matrix(bad, {}), Error);
}

TEST(BellMatrix, ColumnOrderAndSwap) {
    const CatSource src({0.8, {0.3, 0.1}});
    const PortraitFn fn = make_portrait_fn(src, PartitionScheme::even_odd());
    const BellSettings s{{0.1, 0.2}, {-0.3, 0.0}, {0.0, 0.4}, {0.25, -0.1}};
    const BellSettings swapped{s.beta1, s.beta2, s.alpha1, s.alpha2};
    const BellMatrix a = bell_matrix(fn, s), b = bell_matrix(fn, swapped);
    const int perm[4] = {3, 2, 1, 0};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) EXPECT_EQ(a.m[i][j], b.m[i][perm[j]]);
    const PortraitVector col2 = fn({s.alpha1, s.beta2});
    for (int i = 0; i < 4; ++i) EXPECT_EQ(a.m[i][1], col2.w[i]);
}

TEST(BellMatrix, ReferenceSqueezedExample) {
    const GaussianSource src(squeezed_example_spec(), DisplacementConvention::kSwapped);
    const BellSettings s{{0, -0.12}, {0, 0.04}, {0, 0.22}, {0, -0.32}};
    const BellMatrix m = bell_matrix(make_portrait_fn(src, PartitionScheme::even_odd()), s);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) EXPECT_NEAR(m.m[i][j], kReferenceMG[i][j], 5e-3);
    EXPECT_NEAR(bell_number(m), 2.26, 0.02);
}

TEST(BellNumber, TraceConventionOnReferenceMatrix) {
    // Tr(M I) = sum_ij M_ij I_ji reproduces the quoted 2.26; the elementwise
    // sum M_ij I_ij does not.
    BellMatrix m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m.m[i][j] = kReferenceMG[i][j];
    EXPECT_NEAR(bell_number(m), 2.2592, 1e-4);
    double elementwise = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) elementwise += kReferenceMG[i][j] * chsh_sign_matrix()[i][j];
    EXPECT_GT(std::abs(std::abs(elementwise) - 2.26), 1.0);
}

TEST(ChshCheck, Verdicts) {
    EXPECT_EQ(chsh_check(1.9).verdict, ChshVerdict::kSeparableConsistent);
    const ChshCheck c = chsh_check(2.26);
    EXPECT_EQ(c.verdict, ChshVerdict::kEntangledWitnessed);
    EXPECT_NEAR(c.margin, 0.26, 1e-12);
    EXPECT_EQ(chsh_check(2.0).verdict, ChshVerdict::kSeparableConsistent);
    EXPECT_EQ(verdict_name(ChshVerdict::kEntangledWitnessed), "ENTANGLED-WITNESSED");
    EXPECT_EQ(verdict_name(ChshVerdict::kSeparableConsistent), "SEPARABLE-CONSISTENT");
    try {
        chsh_check(kCirelsonBound + 0.01);
        FAIL() << "expected InvalidBellNumber";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidBellNumber);
    }
}

TEST(BellNumber, CirelsonCeiling) {
    std::mt19937_64 rng(73);
    for (int t = 0; t < 500; ++t) {
        const CatSource src({random_complex(rng, 2.0), random_complex(rng, 2.0)});
        const PartitionScheme p = t % 2 ? PartitionScheme::even_odd() : PartitionScheme::zero_nonzero();
        const double b = bell_number(bell_matrix(make_portrait_fn(src, p), random_settings(rng, 2.0)));
        EXPECT_LE(b, kCirelsonBound + 1e-6);
    }
}

TEST(BellNumber, ProductStatesNeverExceedTwo) {
    std::mt19937_64 rng(79);
    for (int t = 0; t < 200; ++t) {
        const CoherentProductSource src({random_complex(rng, 1.5), random_complex(rng, 1.5)});
        const PartitionScheme p = t % 2 ? PartitionScheme::even_odd() : PartitionScheme::zero_nonzero();
        const PortraitFn fn = make_portrait_fn(src, p, {PortraitMode::kTruncated, 40, 1e-6});
        EXPECT_LE(bell_number(bell_matrix(fn, random_settings(rng, 1.0))), 2.0 + 1e-9);
    }
}

TEST(BellSettings, RealsRoundTrip) {
    const BellSettings s{{1, 2}, {3, 4}, {5, 6}, {7, 8}};
    const auto x = s.to_reals();
    for (int i = 0; i < 8; ++i) EXPECT_EQ(x[i], i + 1.0);
    const BellSettings back = BellSettings::from_reals(x.data());
    EXPECT_EQ(back.beta2, s.beta2);
}

TEST(Maximize, StartsArePrefixStableAndInBox) {
    MaximizeConfig a, b;
    a.starts = 8;
    b.starts = 16;
    b.box = a.box = 1.5;
    const auto sa = maximize_starts(a), sb = maximize_starts(b);
    for (int i = 0; i < 8; ++i) EXPECT_EQ(sa[i], sb[i]);
    for (const auto &x : sb)
        for (double v : x) EXPECT_LE(std::abs(v), 1.5);
}

TEST(Maximize, ProductStateStaysSeparable) {
    const CoherentProductSource src({0.5, 0.5});
    MaximizeConfig cfg;
    cfg.starts = 16;
    for (const auto &p : {PartitionScheme::zero_nonzero(), PartitionScheme::even_odd()}) {
        const MaximizeResult r = maximize_bell(src, p, cfg);
        EXPECT_LE(r.f, 2.0 + 1e-6);
    }
}

TEST(Maximize, CatWitnessesEntanglement) {
    const CatSource src({1.0, 1.0});
    MaximizeConfig cfg;
    const MaximizeResult r = maximize_bell(src, PartitionScheme::even_odd(), cfg);
    EXPECT_GT(r.f, 2.0);
    EXPECT_EQ(chsh_check(r.f).verdict, ChshVerdict::kEntangledWitnessed);
    // re-evaluation consistency
    const double again = bell_number(bell_matrix(make_portrait_fn(src, PartitionScheme::even_odd()), r.argmax));
    EXPECT_NEAR(again, r.f, 1e-12);
    for (double v : r.argmax.to_reals()) EXPECT_LE(std::abs(v), cfg.box);
}

TEST(Maximize, DeterministicAndMonotoneInStarts) {
    const CatSource src({0.8, 1.1});
    MaximizeConfig cfg;
    cfg.starts = 8;
    const auto p = PartitionScheme::zero_nonzero();
    const MaximizeResult a = maximize_bell(src, p, cfg);
    const MaximizeResult b = maximize_bell(src, p, cfg);
    EXPECT_EQ(a.f, b.f);
    EXPECT_EQ(a.evaluations, b.evaluations);
    cfg.jobs = 3;
    EXPECT_EQ(maximize_bell(src, p, cfg).f, a.f);
    cfg.jobs = 1;
    cfg.starts = 16;
    const MaximizeResult c = maximize_bell(src, p, cfg);
    EXPECT_GE(c.f, a.f);
    for (int i = 0; i < 8; ++i) EXPECT_EQ(c.per_start_best[i], a.per_start_best[i]);
}

TEST(Maximize, FailingStartsAreReported) {
    // Evaluations with Re alpha1 > 1 fail; the search fails only when every
    // start fails.
    int calls = 0;
    const PortraitFn flaky = [&calls](const DisplacementPair &a) {
        ++calls;
        if (a.mode1.real() > 1.0) throw TailTooLargeError(0.1, 1e-4);
        return PortraitVector{{0.25, 0.25, 0.25, 0.25}, 0};
    };
    MaximizeConfig cfg;
    cfg.starts = 8;
    cfg.box = 0.4;
    const MaximizeResult ok = maximize_bell(flaky, cfg);
    EXPECT_EQ(ok.f, 0.0);
    cfg.box = 2.0;
    cfg.starts = 64;
    const MaximizeResult partial = maximize_bell(flaky, cfg);
    int failed = 0;
    for (const auto &e : partial.per_start_error) failed += !e.empty();
    EXPECT_GT(failed, 0);
    EXPECT_LT(failed, 64);
    const PortraitFn broken = [](const DisplacementPair &) -> PortraitVector {
        throw Error(ErrorCode::NumericalNegativity, "always");
    };
    EXPECT_THROW(maximize_bell(broken, cfg), Error);
}

}  // namespace
}  // namespace tomobell
