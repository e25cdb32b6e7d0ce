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

#ifndef TOMOBELL_NELDER_MEAD_HPP
#define TOMOBELL_NELDER_MEAD_HPP

#include <functional>
#include <vector>

namespace tomobell {

struct NelderMeadOptions {
    double lower = -1.0;  // box applied to every coordinate
    double upper = 1.0;
    double initial_step = 0.1;
    int max_iters = 2000;
    double xtol = 1e-8;
    double ftol = 1e-9;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
};

/// Minimizes f over a box with the adaptive-coefficient simplex method
/// (reflection 1, expansion 1 + 2/n, contraction 3/4 - 1/(2n), shrink
/// 1 - 1/n). Every trial point is clamped into the box before evaluation.
/// Stops when both the simplex diameter (max-norm around the best vertex) is
/// at most xtol and the spread of values is at most ftol, or after max_iters.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double> &)> &f,
                             std::vector<double> x0, const NelderMeadOptions &options);

}  // namespace tomobell

#endif
