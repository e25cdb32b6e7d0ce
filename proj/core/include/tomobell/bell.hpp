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

#ifndef TOMOBELL_BELL_HPP
#define TOMOBELL_BELL_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tomobell/numerics.hpp"
#include "tomobell/portrait.hpp"
#include "tomobell/states.hpp"

namespace tomobell {

inline const double kCirelsonBound = 2.0 * 1.4142135623730951;

struct BellSettings {
    Complex alpha1{};
    Complex alpha2{};
    Complex beta1{};
    Complex beta2{};

    /// (Re a1, Im a1, Re a2, Im a2, Re b1, Im b1, Re b2, Im b2).
    std::array<double, 8> to_reals() const;
    static BellSettings from_reals(const double *x);
};

/// Column j is the portrait at (a1,a2), (a1,b2), (b1,a2), (b1,b2); rows are
/// (++, +-, -+, --).
struct BellMatrix {
    std::array<std::array<double, 4>, 4> m{};
    std::array<double, 4> tail_deficit{};
};

/// The fixed CHSH sign matrix.
const std::array<std::array<int, 4>, 4> &chsh_sign_matrix();

BellMatrix bell_matrix(const PortraitFn &portrait, const BellSettings &s);

/// |Tr(M I)| = |sum_ij M_ij I_ji|.
double bell_number(const BellMatrix &m);

enum class ChshVerdict { kSeparableConsistent, kEntangledWitnessed };

struct ChshCheck {
    ChshVerdict verdict;
    double margin;  // b - 2
};

/// Throws InvalidBellNumber when b exceeds 2 sqrt2 by more than 1e-6.
/// ENTANGLED-WITNESSED when b > 2 + 1e-9; InvalidBellNumber above the
/// Cirelson bound plus 1e-6.
ChshCheck chsh_check(double b);

std::string verdict_name(ChshVerdict v);

struct MaximizeConfig {
    double box = 2.0;
    int starts = 64;
    std::uint64_t seed = 42;
    int max_iters = 2000;
    double xtol = 1e-8;
    double ftol = 1e-9;
    double initial_step = 0.1;
    int n_max = kDefaultNMax;
    double eps_tail = kDefaultTailEps;
    PortraitMode portrait_mode = PortraitMode::kAuto;
    int jobs = 1;
};

struct MaximizeResult {
    double f = 0.0;
    BellSettings argmax;
    long long evaluations = 0;
    /// Best Bell number of each start; NaN for a start that failed.
    std::vector<double> per_start_best;
    /// Error message for each failed start, empty otherwise.
    std::vector<std::string> per_start_error;
    int best_start = -1;
};

/// Starting points, drawn uniformly from [-box, box]^8. The sequence for a
/// given seed is prefix-stable in the number of starts.
std::vector<std::array<double, 8>> maximize_starts(const MaximizeConfig &cfg);

/// Multi-start simplex maximization of the Bell number. Failed starts are
/// recorded and skipped; throws the first start's error if all starts fail.
///
/// In PortraitMode::kAuto a Gaussian source with a canonical partition is
/// searched with the exact parity / vacuum portraits, and each start's
/// endpoint is then scored with the truncated Hermite sum (n_max, eps_tail),
/// so reported values are truncated-sum values.
MaximizeResult maximize_bell(const TomogramSource &src, const PartitionScheme &p,
                             const MaximizeConfig &cfg);

/// Same, for an already bound portrait function.
MaximizeResult maximize_bell(const PortraitFn &portrait, const MaximizeConfig &cfg);

}  // namespace tomobell

#endif
