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
#include "tomobell/error.hpp"
#include "tomobell/states.hpp"

namespace tomobell {
namespace {

using testing::close_rel;
using testing::random_pair;
using testing::uniform;

const double kS35 = std::sqrt(35.0);
const double kS3 = std::sqrt(3.0);

template <typename F>
void expect_error(ErrorCode code, F &&f) {
    try {
        f();
        FAIL() << "expected " << error_code_name(code);
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), code) << e.what();
    }
}

TEST(GaussianSpec, RejectsNonPhysicalInput) {
    Mat4R m = identity4<double>();
    m[0][1] = 0.1;
    expect_error(ErrorCode::NonPhysicalSpec, [&] { GaussianSpec(m, {}); });
    Mat4R indefinite = identity4<double>();
    indefinite[3][3] = -1.0;
    expect_error(ErrorCode::NonPhysicalSpec, [&] { GaussianSpec(indefinite, {}); });
    expect_error(ErrorCode::NonPhysicalSpec, [&] { GaussianSpec(0.2 * identity4<double>(), {}); });
    EXPECT_NO_THROW(GaussianSpec(0.5 * identity4<double>(), {}));
}

TEST(GaussianShiftedMean, Examples) {
    const GaussianSpec g(0.5 * identity4<double>(), {0.1, 0.2, 0.3, 0.4});
    const Vec4R same = gaussian_shifted_mean(g, {});
    for (int i = 0; i < 4; ++i) EXPECT_EQ(same[i], g.mean()[i]);
    const GaussianSpec z(0.5 * identity4<double>(), {});
    const double r2 = std::sqrt(2.0);
    const Vec4R a = gaussian_shifted_mean(z, {{0.0, 1.0}, 0.0});
    const Vec4R b = gaussian_shifted_mean(z, {{1.0, 1.0}, 2.0});
    const Vec4R ea{r2, 0, 0, 0}, eb{r2, 0, r2, 2 * r2};
    for (int i = 0; i < 4; ++i) {
        EXPECT_NEAR(a[i], ea[i], 1e-15);
        EXPECT_NEAR(b[i], eb[i], 1e-15);
    }
}

TEST(GaussianR, VacuumGivesZero) {
    const Mat4C r = gaussian_R(0.5 * identity4<double>());
    for (const auto &row : r)
        for (Complex x : row) EXPECT_EQ(std::abs(x), 0.0);
}

TEST(GaussianR, ReferenceSqueezedExampleMatrix) {
    const double a = (3 * kS35 - 7 * kS3) / 42, b = (-3 * kS35 - 7 * kS3) / 42;
    const double expected[4][4] = {{0, a, 0, b}, {a, 0, b, 0}, {0, b, 0, a}, {b, 0, a, 0}};
    const Mat4C r = gaussian_R(squeezed_example_spec().dispersion());
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) EXPECT_NEAR(std::abs(r[i][j] - expected[i][j]), 0.0, 1e-10);
}

TEST(GaussianR, SymmetricForRandomStates) {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 50; ++t) {
        const Mat4C r = gaussian_R(testing::random_physical_gaussian(rng).dispersion());
        EXPECT_LE(asymmetry(r), 1e-14);
    }
}

TEST(GaussianY, ZeroMeanAndDegenerateState) {
    const Vec4C y = gaussian_y(squeezed_example_spec().dispersion(), {});
    for (Complex v : y) EXPECT_EQ(std::abs(v), 0.0);
    expect_error(ErrorCode::DegenerateGaussian,
                 [] { gaussian_y(0.5 * identity4<double>(), {1.0, 0.0, 0.0, 0.0}); });
}

// The reference y expression for the squeezed example, written in terms of the
// complex settings.
Vec4C reference_y(Complex a1, Complex a2) {
    const Complex i(0, 1);
    const double s75 = std::sqrt(7.0 / 5.0);
    return {-i * (a1 - s75 * a2.real()) - kS3 * a2.imag(), -i * (a2 - s75 * a1.real()) - kS3 * a1.imag(),
            i * (std::conj(a1) - s75 * a2.real()) - kS3 * a2.imag(),
            i * (std::conj(a2) - s75 * a1.real()) - kS3 * a1.imag()};
}

TEST(GaussianY, ReferenceExampleUnderSwappedConvention) {
    const GaussianSpec g = squeezed_example_spec();
    const DisplacementPair alpha{{0.0, 1.0}, 0.0};
    const Vec4R mu = gaussian_shifted_mean(g, to_physical(alpha, DisplacementConvention::kSwapped));
    const Vec4C y = gaussian_y(g.dispersion(), mu);
    const Vec4C expected{1.0, -kS3, 1.0, -kS3};
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(y[i] - expected[i]), 0.0, 1e-12);
}

TEST(GaussianY, ReferenceFormulaForImaginarySettings) {
    // The reference expression matches the computed y for purely imaginary
    // settings (the ones tabulated with it) under the swapped convention.
    const GaussianSpec g = squeezed_example_spec();
    std::mt19937_64 rng(43);
    for (int t = 0; t < 20; ++t) {
        const DisplacementPair alpha{{0.0, uniform(rng, -2, 2)}, {0.0, uniform(rng, -2, 2)}};
        const Vec4C y = gaussian_y(
            g.dispersion(),
            gaussian_shifted_mean(g, to_physical(alpha, DisplacementConvention::kSwapped)));
        const Vec4C expected = reference_y(alpha.mode1, alpha.mode2);
        for (int i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(y[i] - expected[i]), 0.0, 1e-12);
    }
}

TEST(GaussianTomogram, ThermalStateIsGeometric) {
    for (double nbar : {0.3, 1.0, 2.5}) {
        const GaussianSpec g((nbar + 0.5) * identity4<double>(), {});
        const GaussianSource src(g);
        const RealMatrix t = src.table({}, 15);
        for (int a = 0; a <= 15; ++a)
            for (int b = 0; b <= 15; ++b) {
                const double expected = std::pow(nbar, a + b) / std::pow(nbar + 1, a + b + 2);
                EXPECT_TRUE(close_rel(t(a, b), expected, 1e-10, 1e-300)) << nbar << " " << a << " " << b;
            }
    }
    const GaussianSpec one(1.5 * identity4<double>(), {});
    EXPECT_NEAR(gaussian_tomogram(one, {0, 0}, {}), 0.25, 1e-15);
}

struct FockReference {
    DisplacementPair alpha;
    PhotonCounts n;
    double w;
};

TEST(GaussianTomogram, MatchesFockSpaceReference) {
    const FockReference cases[] = {
        {{{0.3, 0.2}, {-0.25, 0.15}}, {0, 0}, 0.502599973668917},
        {{{0.3, 0.2}, {-0.25, 0.15}}, {1, 0}, 0.212305978023863},
        {{{0.3, 0.2}, {-0.25, 0.15}}, {0, 1}, 0.166047569530147},
        {{{0.3, 0.2}, {-0.25, 0.15}}, {2, 1}, 0.0105567456573897},
        {{{0.3, 0.2}, {-0.25, 0.15}}, {3, 2}, 0.000953352948548458},
        {{{0.3, 0.2}, {-0.25, 0.15}}, {5, 4}, 1.84599357798868e-05},
        {{{-0.4, 0.1}, {0.2, -0.35}}, {0, 0}, 0.773519988688889},
        {{{-0.4, 0.1}, {0.2, -0.35}}, {2, 1}, 0.0134591300657358},
        {{{-0.4, 0.1}, {0.2, -0.35}}, {5, 4}, 4.53114788560558e-06},
    };
    const GaussianSource src(testing::fock_reference_gaussian());
    for (const auto &c : cases) {
        EXPECT_TRUE(close_rel(src.probability(c.n, c.alpha), c.w, 1e-8, 1e-12))
            << c.n.mode1 << "," << c.n.mode2 << ": " << src.probability(c.n, c.alpha) << " vs " << c.w;
    }
}

TEST(GaussianTomogram, ProbabilityMatchesTable) {
    const GaussianSource src(testing::fock_reference_gaussian());
    const DisplacementPair a{{0.1, -0.7}, {1.2, 0.4}};
    const RealMatrix t = src.table(a, 8);
    for (int i = 0; i <= 8; ++i)
        for (int j = 0; j <= 8; ++j) EXPECT_TRUE(close_rel(src.probability({i, j}, a), t(i, j), 1e-12, 1e-16));
}

TEST(GaussianTomogram, PhysicalStatesAreNormalizedAndNonnegative) {
    std::mt19937_64 rng(47);
    for (int t = 0; t < 20; ++t) {
        const GaussianSource src(testing::random_physical_gaussian(rng));
        const RealMatrix table = src.table(random_pair(rng, 2.0), 40);
        for (double w : table.data()) {
            EXPECT_GE(w, 0.0);
            EXPECT_LE(w, 1.0);
        }
        EXPECT_NEAR(table.sum(), 1.0, 1e-4);
    }
}

TEST(GaussianTomogram, ConventionsAreRelatedBySettingMap) {
    const GaussianSource phys(squeezed_example_spec());
    const GaussianSource swapped(squeezed_example_spec(), DisplacementConvention::kSwapped);
    const DisplacementPair a{{0.0, -0.12}, {0.0, 0.04}};
    const DisplacementPair mapped{-0.12, 0.04};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) EXPECT_DOUBLE_EQ(swapped.probability({i, j}, a), phys.probability({i, j}, mapped));
}

TEST(PurityFamily, DeterminantAndPreconditions) {
    for (double k : {1.0, 2.0})
        for (double l : {0.0, 0.04})
            EXPECT_NEAR(mat4_det(gaussian_purity_family(k, l).dispersion()), (1 + 4 * l) / 16, 1e-12);
    const Mat4R half = gaussian_purity_family(0.5, 0.0).dispersion();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) EXPECT_NEAR(half[i][j], i == j ? 0.5 : 0.0, 1e-15);
    expect_error(ErrorCode::InvalidParameter, [] { gaussian_purity_family(0.4, 0.0); });
    expect_error(ErrorCode::InvalidParameter, [] { gaussian_purity_family(1.0, -0.01); });
}

TEST(SymplecticEigenvalues, PhysicalAndExampleStates) {
    const auto vac = symplectic_eigenvalues(0.5 * identity4<double>());
    EXPECT_NEAR(vac[0], 0.5, 1e-15);
    EXPECT_NEAR(vac[1], 0.5, 1e-15);
    std::mt19937_64 rng(53);
    for (int t = 0; t < 20; ++t) EXPECT_GE(symplectic_eigenvalues(testing::random_physical_gaussian(rng).dispersion())[1], 0.5 - 1e-12);
    // The squeezed example passes det M >= 1/16 but not the full uncertainty relation.
    const auto sq = symplectic_eigenvalues(squeezed_example_spec().dispersion());
    EXPECT_NEAR(sq[0] * sq[1], 0.25, 1e-12);
    EXPECT_LT(sq[1], 0.5);
}

TEST(SqueezedExample, NegativeQuasiProbabilityIsGenuine) {
    // Phase-space quadrature of the Gaussian Wigner function against the Fock
    // Wigner functions (56-point Gauss-Hermite per axis) gives -0.0343315.
    const GaussianSource src(squeezed_example_spec());
    const DisplacementPair a{{0.0, 0.5}, {0.0, -0.4}};
    const RealMatrix q = src.quasi_table(a, 2);
    EXPECT_NEAR(q(1, 1), -0.0343315, 2e-6);
    EXPECT_NEAR(q(0, 0), 0.2065576, 2e-6);
    expect_error(ErrorCode::NumericalNegativity, [&] { src.table(a, 2); });
    expect_error(ErrorCode::NumericalNegativity, [&] { src.probability({1, 1}, a); });
}

TEST(SqueezedExample, ExtendedPrecisionTailMass) {
    // 50-digit recursion at this setting: mass 0.9950437751 for n <= 30.
    const GaussianSource src(squeezed_example_spec());
    const DisplacementPair a{{0.36234003010643168, 1.5648755427824539},
                             {1.8054717304377448, -1.9187312238446814}};
    EXPECT_NEAR(src.quasi_table(a, 30).sum(), 0.9950437751, 1e-9);
}

}  // namespace
}  // namespace tomobell
