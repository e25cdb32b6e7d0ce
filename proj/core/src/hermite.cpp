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

#include "tomobell/hermite.hpp"

#include <cmath>
#include <map>
#include <string>

#include "tomobell/error.hpp"

namespace tomobell {

namespace {

void check_params(const HermiteParams &params) {
    if (asymmetry(params.r) > kHermiteSymmetryTol) {
        throw Error(ErrorCode::AsymmetricR, "Hermite matrix R is not symmetric");
    }
}

void check_order(int order, int max_order) {
    if (order > max_order) {
        throw Error(ErrorCode::OrderOverflow, "Hermite order " + std::to_string(order) +
                                                  " exceeds the limit " +
                                                  std::to_string(max_order));
    }
}

double log_sqrt_factorials(const HermiteIndex &k) {
    double s = 0.0;
    for (int v : k) s += std::lgamma(v + 1.0);
    return 0.5 * s;
}

// Double-double arithmetic (Dekker splitting, no FMA dependence).
struct DD {
    double hi = 0.0;
    double lo = 0.0;
};

inline DD quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline void split(double a, double &hi, double &lo) {
    const double c = 134217729.0 * a;  // 2^27 + 1
    hi = c - (c - a);
    lo = a - hi;
}

inline DD two_prod(double a, double b) {
    const double p = a * b;
    double ah, al, bh, bl;
    split(a, ah, al);
    split(b, bh, bl);
    return {p, ((ah * bh - p) + ah * bl + al * bh) + al * bl};
}

inline DD operator+(DD x, DD y) {
    DD s = two_sum(x.hi, y.hi);
    s.lo += x.lo + y.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD operator-(DD x) { return {-x.hi, -x.lo}; }
inline DD operator-(DD x, DD y) { return x + (-y); }

inline DD operator*(DD x, DD y) {
    DD p = two_prod(x.hi, y.hi);
    p.lo += x.hi * y.lo + x.lo * y.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline DD dd_sqrt(int k) {
    if (k == 0) return {};
    const double s = std::sqrt(static_cast<double>(k));
    const DD sq = two_prod(s, s);
    const double corr = ((static_cast<double>(k) - sq.hi) - sq.lo) / (2.0 * s);
    return quick_two_sum(s, corr);
}

inline DD dd_inv_sqrt(int k) {
    // 1/sqrt(k) with one Newton step on y = 1/sqrt(k).
    const double y0 = 1.0 / std::sqrt(static_cast<double>(k));
    const DD y{y0, 0.0};
    const DD kk{static_cast<double>(k), 0.0};
    const DD t = DD{1.0, 0.0} - kk * y * y;  // ~ 2 * relative error
    return y + y * DD{0.5 * t.hi, 0.5 * t.lo};
}

struct CDD {
    DD re, im;
};

inline CDD operator*(const CDD &a, const CDD &b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline CDD operator-(const CDD &a, const CDD &b) { return {a.re - b.re, a.im - b.im}; }
inline CDD scale(const CDD &a, DD s) { return {a.re * s, a.im * s}; }

}  // namespace

int total_order(const HermiteIndex &k) { return k[0] + k[1] + k[2] + k[3]; }

HermiteLattice::HermiteLattice(const HermiteParams &params, const HermiteIndex &bounds,
                               int max_order, HermitePrecision precision) {
    reset(params, bounds, max_order, precision);
}

void HermiteLattice::reset(const HermiteParams &params, const HermiteIndex &bounds,
                           int max_order, HermitePrecision precision) {
    for (int b : bounds) {
        if (b < 0) throw Error(ErrorCode::InvalidParameter, "negative Hermite index");
    }
    check_params(params);
    check_order(total_order(bounds), max_order);

    bounds_ = bounds;
    stride_[3] = 1;
    for (int i = 2; i >= 0; --i) stride_[i] = stride_[i + 1] * static_cast<std::size_t>(bounds_[i + 1] + 1);
    const std::size_t size = stride_[0] * static_cast<std::size_t>(bounds_[0] + 1);
    re_.resize(size);
    im_.resize(size);
    if (precision == HermitePrecision::kDoubleDouble) {
        fill_double_double(params);
    } else {
        fill(params);
    }
}

std::size_t HermiteLattice::offset(const HermiteIndex &k) const {
    for (int i = 0; i < 4; ++i) {
        if (k[i] < 0 || k[i] > bounds_[i]) {
            throw Error(ErrorCode::InvalidParameter, "Hermite index outside the lattice");
        }
    }
    return k[0] * stride_[0] + k[1] * stride_[1] + k[2] * stride_[2] + static_cast<std::size_t>(k[3]);
}

Complex HermiteLattice::normalized(const HermiteIndex &k) const {
    const std::size_t o = offset(k);
    return {re_[o], im_[o]};
}

Complex HermiteLattice::value(const HermiteIndex &k) const {
    return normalized(k) * std::exp(log_sqrt_factorials(k));
}

void HermiteLattice::fill(const HermiteParams &params) {
    const Mat4C &r = params.r;
    const Vec4C rx = r * params.x;

    const int n3 = bounds_[3];
    const int longest = std::max(std::max(bounds_[0], bounds_[1]), std::max(bounds_[2], bounds_[3]));
    std::vector<double> sq(longest + 1), inv_sq(longest + 1, 0.0);
    for (int i = 0; i <= longest; ++i) {
        sq[i] = std::sqrt(static_cast<double>(i));
        if (i > 0) inv_sq[i] = 1.0 / sq[i];
    }

    double *re = re_.data();
    double *im = im_.data();
    re[0] = 1.0;
    im[0] = 0.0;

    // k = (0,0,0,k4): one-dimensional recurrence along the last axis.
    {
        const double rxr = rx[3].real(), rxi = rx[3].imag();
        const double rr = r[3][3].real(), ri = r[3][3].imag();
        for (int k = 1; k <= n3; ++k) {
            const double gr = re[k - 1], gi = im[k - 1];
            double vr = rxr * gr - rxi * gi;
            double vi = rxr * gi + rxi * gr;
            if (k >= 2 && (rr != 0.0 || ri != 0.0)) {
                const double cr = rr * sq[k - 1], ci = ri * sq[k - 1];
                const double pr = re[k - 2], pi = im[k - 2];
                vr -= cr * pr - ci * pi;
                vi -= cr * pi + ci * pr;
            }
            re[k] = vr * inv_sq[k];
            im[k] = vi * inv_sq[k];
        }
    }

    // Regions where axis a is the first nonzero coordinate, in lexicographic
    // order: (0,0,k3>0,*), then (0,k2>0,*,*), then (k1>0,*,*,*).
    for (int a = 2; a >= 0; --a) {
        const double rxr = rx[a].real(), rxi = rx[a].imag();
        const std::size_t sa = stride_[a];
        int lo[3], hi[3];
        for (int c = 0; c < 3; ++c) {
            if (c < a) {
                lo[c] = 0;
                hi[c] = 0;
            } else if (c == a) {
                lo[c] = 1;
                hi[c] = bounds_[c];
            } else {
                lo[c] = 0;
                hi[c] = bounds_[c];
            }
        }
        const double r3r = r[a][3].real(), r3i = r[a][3].imag();
        const bool has_last = r3r != 0.0 || r3i != 0.0;

        for (int k0 = lo[0]; k0 <= hi[0]; ++k0) {
            for (int k1 = lo[1]; k1 <= hi[1]; ++k1) {
                for (int k2 = lo[2]; k2 <= hi[2]; ++k2) {
                    const int head[3] = {k0, k1, k2};
                    const std::size_t base = k0 * stride_[0] + k1 * stride_[1] + k2 * stride_[2];
                    const std::size_t prev = base - sa;
                    double *__restrict out_r = re + base;
                    double *__restrict out_i = im + base;
                    const double *gr = re + prev;
                    const double *gi = im + prev;
                    const double scale = inv_sq[head[a]];

                    for (int k3 = 0; k3 <= n3; ++k3) {
                        out_r[k3] = rxr * gr[k3] - rxi * gi[k3];
                        out_i[k3] = rxr * gi[k3] + rxi * gr[k3];
                    }
                    // j over the leading three axes, with (k - e_a)_j > 0.
                    for (int j = a; j < 3; ++j) {
                        const int kmj = head[j] - (j == a ? 1 : 0);
                        if (kmj <= 0) continue;
                        const double cr = r[a][j].real() * sq[kmj];
                        const double ci = r[a][j].imag() * sq[kmj];
                        if (cr == 0.0 && ci == 0.0) continue;
                        const double *qr = gr - stride_[j];
                        const double *qi = gi - stride_[j];
                        for (int k3 = 0; k3 <= n3; ++k3) {
                            out_r[k3] -= cr * qr[k3] - ci * qi[k3];
                            out_i[k3] -= cr * qi[k3] + ci * qr[k3];
                        }
                    }
                    if (has_last) {
                        for (int k3 = 1; k3 <= n3; ++k3) {
                            const double cr = r3r * sq[k3], ci = r3i * sq[k3];
                            out_r[k3] -= cr * gr[k3 - 1] - ci * gi[k3 - 1];
                            out_i[k3] -= cr * gi[k3 - 1] + ci * gr[k3 - 1];
                        }
                    }
                    for (int k3 = 0; k3 <= n3; ++k3) {
                        out_r[k3] *= scale;
                        out_i[k3] *= scale;
                    }
                }
            }
        }
    }
}

void HermiteLattice::fill_double_double(const HermiteParams &params) {
    // Same recursion and visiting order as fill(), stepping the first nonzero
    // coordinate, in double-double arithmetic.
    CDD r[4][4], x[4], rx[4];
    for (int i = 0; i < 4; ++i) {
        x[i] = {{params.x[i].real(), 0.0}, {params.x[i].imag(), 0.0}};
        for (int j = 0; j < 4; ++j) r[i][j] = {{params.r[i][j].real(), 0.0}, {params.r[i][j].imag(), 0.0}};
    }
    for (int i = 0; i < 4; ++i) {
        rx[i] = {};
        for (int j = 0; j < 4; ++j) {
            const CDD t = r[i][j] * x[j];
            rx[i] = {rx[i].re + t.re, rx[i].im + t.im};
        }
    }
    const int longest = std::max(std::max(bounds_[0], bounds_[1]), std::max(bounds_[2], bounds_[3]));
    std::vector<DD> sq(longest + 1), inv_sq(longest + 1);
    for (int i = 1; i <= longest; ++i) {
        sq[i] = dd_sqrt(i);
        inv_sq[i] = dd_inv_sqrt(i);
    }

    std::vector<CDD> g(re_.size());
    g[0] = {{1.0, 0.0}, {0.0, 0.0}};
    HermiteIndex k{};
    for (std::size_t o = 1; o < g.size(); ++o) {
        std::size_t rem = o;
        for (int a = 0; a < 4; ++a) {
            k[a] = static_cast<int>(rem / stride_[a]);
            rem %= stride_[a];
        }
        int a = 0;
        while (k[a] == 0) ++a;
        const std::size_t prev = o - stride_[a];
        CDD v = rx[a] * g[prev];
        for (int j = 0; j < 4; ++j) {
            const int kmj = k[j] - (j == a ? 1 : 0);
            if (kmj <= 0) continue;
            v = v - scale(r[a][j] * g[prev - stride_[j]], sq[kmj]);
        }
        g[o] = scale(v, inv_sq[k[a]]);
    }
    for (std::size_t o = 0; o < g.size(); ++o) {
        re_[o] = g[o].re.hi + g[o].re.lo;
        im_[o] = g[o].im.hi + g[o].im.lo;
    }
}

Complex hermite_eval(const HermiteParams &params, const HermiteIndex &k, int max_order) {
    for (int v : k) {
        if (v < 0) throw Error(ErrorCode::InvalidParameter, "negative Hermite index");
    }
    check_params(params);
    check_order(total_order(k), max_order);
    HermiteLattice lattice(params, k, max_order);
    return lattice.value(k);
}

Complex hermite_oracle(const HermiteParams &params, const HermiteIndex &k) {
    for (int v : k) {
        if (v < 0) throw Error(ErrorCode::InvalidParameter, "negative Hermite index");
    }
    check_params(params);
    check_order(total_order(k), kHermiteOracleMaxOrder);

    // d/dx_i [P e^{-xRx/2}] = (dP/dx_i - (Rx)_i P) e^{-xRx/2}
    using Monomial = std::array<int, 4>;
    using Polynomial = std::map<Monomial, Complex>;
    Polynomial poly{{Monomial{0, 0, 0, 0}, Complex(1.0)}};
    const Mat4C &r = params.r;

    for (int axis = 0; axis < 4; ++axis) {
        for (int step = 0; step < k[axis]; ++step) {
            Polynomial next;
            for (const auto &[mono, coeff] : poly) {
                if (mono[axis] > 0) {
                    Monomial d = mono;
                    d[axis] -= 1;
                    next[d] += coeff * static_cast<double>(mono[axis]);
                }
                for (int j = 0; j < 4; ++j) {
                    if (r[axis][j] == Complex(0.0)) continue;
                    Monomial m = mono;
                    m[j] += 1;
                    next[m] -= coeff * r[axis][j];
                }
            }
            poly = std::move(next);
        }
    }

    Complex total(0.0);
    for (const auto &[mono, coeff] : poly) {
        Complex term = coeff;
        for (int j = 0; j < 4; ++j) {
            for (int p = 0; p < mono[j]; ++p) term *= params.x[j];
        }
        total += term;
    }
    return (total_order(k) % 2 == 0) ? total : -total;
}

}  // namespace tomobell
