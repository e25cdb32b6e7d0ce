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

#ifndef TOMOBELL_HERMITE_HPP
#define TOMOBELL_HERMITE_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "tomobell/numerics.hpp"

namespace tomobell {

/// Derivative orders (k1, k2, k3, k4).
using HermiteIndex = std::array<int, 4>;

/// Complex symmetric R and the polynomial argument x.
struct HermiteParams {
    Mat4C r{};
    Vec4C x{};
};

inline constexpr int kDefaultMaxHermiteOrder = 128;
inline constexpr int kHermiteOracleMaxOrder = 8;
inline constexpr double kHermiteSymmetryTol = 1e-12;

int total_order(const HermiteIndex &k);

/// Arithmetic used to fill a lattice. kDoubleDouble carries about 32
/// significant digits (unevaluated sums of two doubles) and runs roughly two
/// orders of magnitude slower; it exists for parameter sets on which the
/// double recursion loses accuracy at high order.
enum class HermitePrecision { kDouble, kDoubleDouble };

/// Four-dimensional Hermite polynomials
///
///   H_k(x) = (-1)^|k| exp(x R x / 2) d^k/dx^k exp(-x R x / 2)
///
/// tabulated on the whole box 0 <= k_i <= bounds_i. The table is filled in
/// lexicographic order with the generating-function recursion
///
///   H_{k+e_i} = (R x)_i H_k - sum_j R_ij k_j H_{k-e_j},
///
/// always stepping the first nonzero coordinate. Entries are stored divided by
/// sqrt(k1! k2! k3! k4!) so that the orders needed by photon-number tomograms
/// (up to (30,30,30,30)) stay well inside double range.
///
/// A lattice is one evaluation context: it belongs to a single (R, x) pair.
/// reset() rebinds it to new parameters and reuses the storage.
class HermiteLattice {
   public:
    HermiteLattice() = default;
    HermiteLattice(const HermiteParams &params, const HermiteIndex &bounds,
                   int max_order = kDefaultMaxHermiteOrder,
                   HermitePrecision precision = HermitePrecision::kDouble);

    void reset(const HermiteParams &params, const HermiteIndex &bounds,
               int max_order = kDefaultMaxHermiteOrder,
               HermitePrecision precision = HermitePrecision::kDouble);

    const HermiteIndex &bounds() const noexcept { return bounds_; }

    /// H_k(x). k must lie inside bounds().
    Complex value(const HermiteIndex &k) const;

    /// H_k(x) / sqrt(k1! k2! k3! k4!).
    Complex normalized(const HermiteIndex &k) const;

   private:
    std::size_t offset(const HermiteIndex &k) const;
    void fill(const HermiteParams &params);
    void fill_double_double(const HermiteParams &params);

    HermiteIndex bounds_{};
    std::array<std::size_t, 4> stride_{};
    std::vector<double> re_;
    std::vector<double> im_;
};

/// Single value through a lattice sized exactly to k. Throws AsymmetricR or
/// OrderOverflow (|k| > max_order).
Complex hermite_eval(const HermiteParams &params, const HermiteIndex &k,
                     int max_order = kDefaultMaxHermiteOrder);

/// Reference evaluation straight from the derivative definition: the
/// polynomial prefactor of d^k exp(-x R x / 2) is built by symbolic
/// product-rule differentiation over monomials and evaluated at x.
/// Exponential in |k|; throws OrderOverflow above |k| = 8.
Complex hermite_oracle(const HermiteParams &params, const HermiteIndex &k);

}  // namespace tomobell

#endif
