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

#include "tomobell/bell.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <thread>

#include "tomobell/error.hpp"
#include "tomobell/nelder_mead.hpp"

namespace tomobell {

namespace {

constexpr double kColumnSumTol = 1e-9;
constexpr double kEntryTol = 1e-9;
constexpr double kCirelsonTol = 1e-6;
constexpr double kSeparableTol = 1e-9;

}  // namespace

std::array<double, 8> BellSettings::to_reals() const {
    return {alpha1.real(), alpha1.imag(), alpha2.real(), alpha2.imag(),
            beta1.real(),  beta1.imag(),  beta2.real(),  beta2.imag()};
}

BellSettings BellSettings::from_reals(const double *x) {
    return {{x[0], x[1]}, {x[2], x[3]}, {x[4], x[5]}, {x[6], x[7]}};
}

const std::array<std::array<int, 4>, 4> &chsh_sign_matrix() {
    static const std::array<std::array<int, 4>, 4> i{{
        {1, -1, -1, 1},
        {1, -1, -1, 1},
        {1, -1, -1, 1},
        {-1, 1, 1, -1},
    }};
    return i;
}

BellMatrix bell_matrix(const PortraitFn &portrait, const BellSettings &s) {
    const DisplacementPair cols[4] = {
        {s.alpha1, s.alpha2}, {s.alpha1, s.beta2}, {s.beta1, s.alpha2}, {s.beta1, s.beta2}};
    BellMatrix out;
    for (int j = 0; j < 4; ++j) {
        const PortraitVector v = portrait(cols[j]);
        double sum = v.tail_deficit;
        for (int i = 0; i < 4; ++i) {
            if (!(v.w[i] >= -kEntryTol && v.w[i] <= 1.0 + kEntryTol)) {
                throw Error(ErrorCode::InvalidStochasticMatrix,
                            "Bell matrix entry " + std::to_string(v.w[i]) + " outside [0, 1]");
            }
            out.m[i][j] = v.w[i];
            sum += v.w[i];
        }
        if (std::abs(sum - 1.0) > kColumnSumTol) {
            throw Error(ErrorCode::InvalidStochasticMatrix,
                        "Bell matrix column " + std::to_string(j) + " sums to " +
                            std::to_string(sum));
        }
        out.tail_deficit[j] = v.tail_deficit;
    }
    return out;
}

double bell_number(const BellMatrix &m) {
    const auto &sign = chsh_sign_matrix();
    double tr = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) tr += m.m[i][j] * sign[j][i];
    return std::abs(tr);
}

ChshCheck chsh_check(double b) {
    if (!(b >= 0.0)) throw Error(ErrorCode::InvalidParameter, "Bell number must be >= 0");
    if (b > kCirelsonBound + kCirelsonTol) {
        throw Error(ErrorCode::InvalidBellNumber,
                    "Bell number " + std::to_string(b) + " exceeds the Cirelson bound");
    }
    // Separable states reach exactly 2; rounding can push them past it.
    if (b > 2.0 + kSeparableTol) return {ChshVerdict::kEntangledWitnessed, b - 2.0};
    return {ChshVerdict::kSeparableConsistent, b - 2.0};
}

std::string verdict_name(ChshVerdict v) {
    return v == ChshVerdict::kEntangledWitnessed ? "ENTANGLED-WITNESSED" : "SEPARABLE-CONSISTENT";
}

std::vector<std::array<double, 8>> maximize_starts(const MaximizeConfig &cfg) {
    std::mt19937_64 rng(cfg.seed);
    std::vector<std::array<double, 8>> out(static_cast<std::size_t>(std::max(cfg.starts, 0)));
    for (auto &x : out) {
        for (double &v : x) {
            // 53 random bits mapped to [0, 1); fixed so results do not depend on
            // the standard library's distribution implementation.
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            v = -cfg.box + 2.0 * cfg.box * u;
        }
    }
    return out;
}

namespace {

// The simplex climbs `search`; each start's endpoint is then scored with
// `score` when the two differ.
MaximizeResult maximize_impl(const PortraitFn &search, const PortraitFn *score,
                             const MaximizeConfig &cfg) {
    const PortraitFn &portrait = search;
    if (!(cfg.box > 0.0) || cfg.starts < 1 || cfg.max_iters < 0 || cfg.jobs < 1 ||
        !(cfg.initial_step > 0.0)) {
        throw Error(ErrorCode::InvalidParameter,
                    "maximize needs box > 0, starts >= 1, max_iters >= 0, jobs >= 1");
    }
    const auto starts = maximize_starts(cfg);
    const std::size_t count = starts.size();

    struct StartOutcome {
        NelderMeadResult nm;
        std::exception_ptr error;
        std::string message;
    };
    std::vector<StartOutcome> outcomes(count);

    NelderMeadOptions opt;
    opt.lower = -cfg.box;
    opt.upper = cfg.box;
    opt.initial_step = cfg.initial_step;
    opt.max_iters = cfg.max_iters;
    opt.xtol = cfg.xtol;
    opt.ftol = cfg.ftol;

    auto objective = [&portrait](const std::vector<double> &x) {
        return -bell_number(bell_matrix(portrait, BellSettings::from_reals(x.data())));
    };
    auto run_start = [&](std::size_t i) {
        try {
            outcomes[i].nm = nelder_mead(objective, {starts[i].begin(), starts[i].end()}, opt);
            if (score != nullptr) {
                outcomes[i].nm.value =
                    -bell_number(bell_matrix(*score, BellSettings::from_reals(outcomes[i].nm.x.data())));
                outcomes[i].nm.evaluations += 1;
            }
        } catch (const std::exception &e) {
            outcomes[i].error = std::current_exception();
            outcomes[i].message = e.what();
        }
    };

    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(cfg.jobs), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) run_start(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) run_start(i);
            });
        }
        for (auto &t : pool) t.join();
    }

    MaximizeResult res;
    res.per_start_best.resize(count, std::numeric_limits<double>::quiet_NaN());
    res.per_start_error.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        const auto &o = outcomes[i];
        res.evaluations += o.nm.evaluations;
        if (o.error) {
            res.per_start_error[i] = o.message;
            continue;
        }
        const double f = -o.nm.value;
        res.per_start_best[i] = f;
        // Strict comparison keeps the lowest index on ties.
        if (res.best_start < 0 || f > res.f) {
            res.f = f;
            res.best_start = static_cast<int>(i);
            res.argmax = BellSettings::from_reals(o.nm.x.data());
        }
    }
    if (res.best_start < 0) std::rethrow_exception(outcomes.front().error);
    chsh_check(res.f);
    return res;
}

}  // namespace

MaximizeResult maximize_bell(const PortraitFn &portrait, const MaximizeConfig &cfg) {
    return maximize_impl(portrait, nullptr, cfg);
}

MaximizeResult maximize_bell(const TomogramSource &src, const PartitionScheme &p,
                             const MaximizeConfig &cfg) {
    const PortraitFn fn = make_portrait_fn(src, p, {cfg.portrait_mode, cfg.n_max, cfg.eps_tail});
    if (cfg.portrait_mode == PortraitMode::kAuto) {
        if (auto exact = gaussian_exact_portrait_fn(src, p)) return maximize_impl(*exact, &fn, cfg);
    }
    return maximize_impl(fn, nullptr, cfg);
}

}  // namespace tomobell
