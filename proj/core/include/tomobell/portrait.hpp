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

#ifndef TOMOBELL_PORTRAIT_HPP
#define TOMOBELL_PORTRAIT_HPP

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "tomobell/numerics.hpp"
#include "tomobell/states.hpp"

namespace tomobell {

inline constexpr int kDefaultNMax = 30;
inline constexpr double kDefaultTailEps = 1e-4;

/// Membership set A over photon counts for one mode.
class ModeSubset {
   public:
    enum class Kind { kZero, kEven, kThreshold, kCustom };

    /// A = {0}.
    static ModeSubset zero();
    /// A = {0, 2, 4, ...}.
    static ModeSubset even();
    /// A = {0, 1, ..., threshold - 1}.
    static ModeSubset below(int threshold);
    static ModeSubset custom(std::function<bool(int)> predicate, std::string name);

    bool contains(int n) const;
    Kind kind() const noexcept { return kind_; }
    const std::string &name() const noexcept { return name_; }

   private:
    ModeSubset(Kind kind, int threshold, std::function<bool(int)> predicate, std::string name);

    Kind kind_;
    int threshold_;
    std::function<bool(int)> predicate_;
    std::string name_;
};

/// Product partition A1 x A2 of the photon-count lattice. Cells are ordered
/// (A1 x A2, A1 x notA2, notA1 x A2, notA1 x notA2), i.e. (++, +-, -+, --).
class PartitionScheme {
   public:
    enum class Canonical { kZeroNonzero, kEvenOdd };

    PartitionScheme(ModeSubset mode1, ModeSubset mode2);

    static PartitionScheme zero_nonzero();
    static PartitionScheme even_odd();
    /// "zero-nonzero" or "even-odd"; throws ParseError otherwise.
    static PartitionScheme parse(std::string_view name);

    int cell(int n1, int n2) const;
    std::optional<Canonical> canonical() const;
    std::string name() const;

    const ModeSubset &mode1() const noexcept { return mode1_; }
    const ModeSubset &mode2() const noexcept { return mode2_; }

   private:
    ModeSubset mode1_;
    ModeSubset mode2_;
};

struct PortraitVector {
    std::array<double, 4> w{};  // (++, +-, -+, --)
    double tail_deficit = 0.0;

    double total() const { return w[0] + w[1] + w[2] + w[3]; }
};

/// Cell sums over 0 <= n1, n2 <= n_max. Components are not renormalized; the
/// missing mass is reported as tail_deficit and must not exceed eps_tail.
PortraitVector portrait_truncated(const TomogramSource &src, const PartitionScheme &p,
                                  const DisplacementPair &alpha, int n_max = kDefaultNMax,
                                  double eps_tail = kDefaultTailEps);

/// Same reduction applied to an already computed table.
PortraitVector portrait_from_table(const RealMatrix &table, const PartitionScheme &p,
                                   double eps_tail = kDefaultTailEps);

PortraitVector cat_portrait_zero_nonzero(const CatState &s, const DisplacementPair &alpha);
PortraitVector cat_portrait_even_odd(const CatState &s, const DisplacementPair &alpha);

/// Exact (untruncated) Gaussian portraits from mode parities and vacuum
/// probabilities: <(-1)^n> over a mode subset is exp(-mu m^-1 mu / 2) /
/// (2^modes sqrt(det m)) and P(vacuum) is exp(-mu (2m + I)^-1 mu) /
/// sqrt(det(m + I/2)), with m, mu the restricted dispersion and mean. Settings
/// are interpreted through the given convention.
/// Product of single-mode portraits; canonical partitions only.
PortraitVector coherent_portrait(const CoherentProduct &s, const PartitionScheme &p,
                                 const DisplacementPair &alpha);

PortraitVector gaussian_portrait_even_odd(const GaussianSpec &g, const DisplacementPair &alpha,
                                          DisplacementConvention convention =
                                              DisplacementConvention::kPhysical);
PortraitVector gaussian_portrait_zero_nonzero(const GaussianSpec &g,
                                              const DisplacementPair &alpha,
                                              DisplacementConvention convention =
                                                  DisplacementConvention::kPhysical);

using PortraitFn = std::function<PortraitVector(const DisplacementPair &)>;

enum class PortraitMode {
    kAuto,       // closed form when one exists for (source, partition)
    kTruncated,  // always sum the truncated table
};

struct PortraitOptions {
    PortraitMode mode = PortraitMode::kAuto;
    int n_max = kDefaultNMax;
    double eps_tail = kDefaultTailEps;
};

/// Binds source and partition. The source must outlive the returned function.
PortraitFn make_portrait_fn(const TomogramSource &src, const PartitionScheme &p,
                            const PortraitOptions &options = {});

/// True when make_portrait_fn would use a closed form.
bool has_closed_form(const TomogramSource &src, const PartitionScheme &p);

/// Exact Gaussian portrait for (source, partition) when the source is a
/// GaussianSource and the partition canonical; empty otherwise. Used by the
/// maximizer to steer its search.
std::optional<PortraitFn> gaussian_exact_portrait_fn(const TomogramSource &src,
                                                     const PartitionScheme &p);

namespace debug {

/// Four cell sums for an arbitrary assignment n -> cell in [0, 4). Only for
/// demonstrating that non-product partitions do not factorize; such vectors
/// are not two-qubit portraits.
std::array<double, 4> arbitrary_cell_sums(const RealMatrix &table,
                                          const std::function<int(int, int)> &cell);

}  // namespace debug

}  // namespace tomobell

#endif
