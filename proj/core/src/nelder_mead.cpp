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

#include "tomobell/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tomobell/error.hpp"

namespace tomobell {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double> &)> &f,
                             std::vector<double> x0, const NelderMeadOptions &opt) {
    const std::size_t n = x0.size();
    if (n == 0) throw Error(ErrorCode::InvalidParameter, "empty parameter vector");
    if (!(opt.upper > opt.lower)) throw Error(ErrorCode::InvalidParameter, "empty box");
    if (opt.max_iters < 0) throw Error(ErrorCode::InvalidParameter, "max_iters must be >= 0");

    const double dim = static_cast<double>(n);
    const double rho = 1.0;
    const double chi = 1.0 + 2.0 / dim;
    const double psi = 0.75 - 0.5 / dim;
    const double sigma = 1.0 - 1.0 / dim;

    NelderMeadResult res;
    auto clamp = [&](std::vector<double> &x) {
        for (double &v : x) v = std::clamp(v, opt.lower, opt.upper);
    };
    auto eval = [&](const std::vector<double> &x) {
        ++res.evaluations;
        return f(x);
    };

    clamp(x0);
    std::vector<std::vector<double>> sim(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) {
        // Step away from the nearer wall so the vertex stays distinct after clamping.
        const double step = (x0[i] + opt.initial_step <= opt.upper) ? opt.initial_step : -opt.initial_step;
        sim[i + 1][i] += step;
        clamp(sim[i + 1]);
    }
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fv[i] = eval(sim[i]);

    std::vector<std::size_t> order(n + 1);
    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        std::vector<std::vector<double>> s2(n + 1);
        std::vector<double> f2(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            s2[i] = std::move(sim[order[i]]);
            f2[i] = fv[order[i]];
        }
        sim = std::move(s2);
        fv = std::move(f2);
    };
    sort_simplex();

    std::vector<double> centroid(n), xr(n), xe(n), xc(n);
    auto blend = [&](double t, std::vector<double> &out) {
        // out = centroid + t (centroid - worst)
        for (std::size_t j = 0; j < n; ++j) out[j] = centroid[j] + t * (centroid[j] - sim[n][j]);
        clamp(out);
    };

    while (res.iterations < opt.max_iters) {
        double xspread = 0.0, fspread = 0.0;
        for (std::size_t i = 1; i <= n; ++i) {
            fspread = std::max(fspread, std::abs(fv[i] - fv[0]));
            for (std::size_t j = 0; j < n; ++j) xspread = std::max(xspread, std::abs(sim[i][j] - sim[0][j]));
        }
        if (xspread <= opt.xtol && fspread <= opt.ftol) {
            res.converged = true;
            break;
        }
        ++res.iterations;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) centroid[j] += sim[i][j];
        for (double &c : centroid) c /= dim;

        blend(rho, xr);
        const double fr = eval(xr);
        bool shrink = false;
        if (fr < fv[0]) {
            blend(rho * chi, xe);
            const double fe = eval(xe);
            if (fe < fr) {
                sim[n] = xe;
                fv[n] = fe;
            } else {
                sim[n] = xr;
                fv[n] = fr;
            }
        } else if (fr < fv[n - 1]) {
            sim[n] = xr;
            fv[n] = fr;
        } else if (fr < fv[n]) {
            blend(psi * rho, xc);
            const double fc = eval(xc);
            if (fc <= fr) {
                sim[n] = xc;
                fv[n] = fc;
            } else {
                shrink = true;
            }
        } else {
            blend(-psi, xc);
            const double fc = eval(xc);
            if (fc < fv[n]) {
                sim[n] = xc;
                fv[n] = fc;
            } else {
                shrink = true;
            }
        }
        if (shrink) {
            for (std::size_t i = 1; i <= n; ++i) {
                for (std::size_t j = 0; j < n; ++j) sim[i][j] = sim[0][j] + sigma * (sim[i][j] - sim[0][j]);
                clamp(sim[i]);
                fv[i] = eval(sim[i]);
            }
        }
        sort_simplex();
    }

    res.x = sim[0];
    res.value = fv[0];
    return res;
}

}  // namespace tomobell
