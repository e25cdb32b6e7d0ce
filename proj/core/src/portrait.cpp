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

#include "tomobell/portrait.hpp"

#include <cmath>
#include <utility>

#include "tomobell/error.hpp"

namespace tomobell {

namespace {

constexpr double kLogDomainThreshold = 30.0;
constexpr double kZeroNonzeroNegTol = 1e-12;
constexpr double kEvenOddNegTol = 1e-9;
constexpr double kOvershootTol = 1e-9;

void clamp_components(PortraitVector &v, double tol, const char *what) {
    for (double &x : v.w) {
        if (x < 0.0) {
            if (x < -tol) {
                throw Error(ErrorCode::NumericalNegativity,
                            std::string(what) + " component " + std::to_string(x));
            }
            x = 0.0;
        }
    }
}

}  // namespace

ModeSubset::ModeSubset(Kind kind, int threshold, std::function<bool(int)> predicate,
                       std::string name)
    : kind_(kind), threshold_(threshold), predicate_(std::move(predicate)), name_(std::move(name)) {}

ModeSubset ModeSubset::zero() { return ModeSubset(Kind::kZero, 1, nullptr, "zero"); }

ModeSubset ModeSubset::even() { return ModeSubset(Kind::kEven, 0, nullptr, "even"); }

ModeSubset ModeSubset::below(int threshold) {
    if (threshold < 1) throw Error(ErrorCode::InvalidParameter, "threshold must be >= 1");
    return ModeSubset(Kind::kThreshold, threshold, nullptr, "below" + std::to_string(threshold));
}

ModeSubset ModeSubset::custom(std::function<bool(int)> predicate, std::string name) {
    if (!predicate) throw Error(ErrorCode::InvalidParameter, "empty subset predicate");
    return ModeSubset(Kind::kCustom, 0, std::move(predicate), std::move(name));
}

bool ModeSubset::contains(int n) const {
    switch (kind_) {
        case Kind::kZero:
            return n == 0;
        case Kind::kEven:
            return n % 2 == 0;
        case Kind::kThreshold:
            return n < threshold_;
        case Kind::kCustom:
            return predicate_(n);
    }
    return false;
}

PartitionScheme::PartitionScheme(ModeSubset mode1, ModeSubset mode2)
    : mode1_(std::move(mode1)), mode2_(std::move(mode2)) {}

PartitionScheme PartitionScheme::zero_nonzero() {
    return {ModeSubset::zero(), ModeSubset::zero()};
}

PartitionScheme PartitionScheme::even_odd() { return {ModeSubset::even(), ModeSubset::even()}; }

PartitionScheme PartitionScheme::parse(std::string_view name) {
    if (name == "zero-nonzero") return zero_nonzero();
    if (name == "even-odd") return even_odd();
    throw Error(ErrorCode::ParseError, "unknown partition '" + std::string(name) +
                                           "' (expected zero-nonzero or even-odd)");
}

int PartitionScheme::cell(int n1, int n2) const {
    return (mode1_.contains(n1) ? 0 : 2) + (mode2_.contains(n2) ? 0 : 1);
}

std::optional<PartitionScheme::Canonical> PartitionScheme::canonical() const {
    using K = ModeSubset::Kind;
    const bool zero1 = mode1_.kind() == K::kZero ||
                       (mode1_.kind() == K::kThreshold && mode1_.contains(0) && !mode1_.contains(1));
    const bool zero2 = mode2_.kind() == K::kZero ||
                       (mode2_.kind() == K::kThreshold && mode2_.contains(0) && !mode2_.contains(1));
    if (zero1 && zero2) return Canonical::kZeroNonzero;
    if (mode1_.kind() == K::kEven && mode2_.kind() == K::kEven) return Canonical::kEvenOdd;
    return std::nullopt;
}

std::string PartitionScheme::name() const {
    const auto c = canonical();
    if (c == Canonical::kZeroNonzero) return "zero-nonzero";
    if (c == Canonical::kEvenOdd) return "even-odd";
    return mode1_.name() + "x" + mode2_.name();
}

PortraitVector portrait_from_table(const RealMatrix &table, const PartitionScheme &p,
                                   double eps_tail) {
    if (!(eps_tail > 0.0)) throw Error(ErrorCode::InvalidParameter, "tail tolerance must be > 0");
    PortraitVector out;
    for (std::size_t a = 0; a < table.rows(); ++a)
        for (std::size_t b = 0; b < table.cols(); ++b)
            out.w[p.cell(static_cast<int>(a), static_cast<int>(b))] += table(a, b);
    double deficit = 1.0 - out.total();
    if (deficit < 0.0) {
        if (deficit < -kOvershootTol) {
            throw Error(ErrorCode::NumericalNegativity,
                        "truncated tomogram mass exceeds 1 by " + std::to_string(-deficit));
        }
        deficit = 0.0;
    }
    if (deficit > eps_tail) throw TailTooLargeError(deficit, eps_tail);
    out.tail_deficit = deficit;
    return out;
}

PortraitVector portrait_truncated(const TomogramSource &src, const PartitionScheme &p,
                                  const DisplacementPair &alpha, int n_max, double eps_tail) {
    if (n_max < 1) throw Error(ErrorCode::InvalidParameter, "nMax must be >= 1");
    if (!(eps_tail > 0.0)) throw Error(ErrorCode::InvalidParameter, "tail tolerance must be > 0");
    return portrait_from_table(src.table(alpha, n_max), p, eps_tail);
}

PortraitVector cat_portrait_zero_nonzero(const CatState &s, const DisplacementPair &alpha) {
    const Complex a1 = alpha.mode1, a2 = alpha.mode2;
    const Complex g1 = s.amplitude1, g2 = s.amplitude2;
    const double sum_g = std::norm(g1) + std::norm(g2);
    const Complex z1 = std::conj(a1) * g1;
    const Complex z2 = std::conj(a2) * g2;
    const Complex z = z1 + z2;
    const double na1 = std::norm(a1), na2 = std::norm(a2);
    const double ng1 = std::norm(g1), ng2 = std::norm(g2);

    PortraitVector out;
    if (sum_g <= kLogDomainThreshold) {
        const double pre = std::exp(-na1 - na2) / (2.0 * std::cosh(sum_g));
        const double both = std::cosh(2.0 * z.real()) + std::cos(2.0 * z.imag());
        out.w[0] = pre * both;
        out.w[1] = pre * (std::exp(na2 + ng2) * std::cosh(2.0 * z1.real()) +
                          std::exp(na2 - ng2) * std::cos(2.0 * z1.imag()) - both);
        out.w[2] = pre * (std::exp(na1 + ng1) * std::cosh(2.0 * z2.real()) +
                          std::exp(na1 - ng1) * std::cos(2.0 * z2.imag()) - both);
    } else {
        const double log_pre = -na1 - na2 - std::log(2.0) - log_cosh(sum_g);
        const SignedLog ch = SignedLog::cosh(2.0 * z.real());
        const SignedLog co = SignedLog::from_value(std::cos(2.0 * z.imag()));
        auto eval = [&](std::initializer_list<SignedLog> terms) {
            const SignedLog v = signed_log_sum({terms.begin(), terms.size()});
            if (v.sign == 0) return 0.0;
            return v.sign * std::exp(v.log_magnitude + log_pre);
        };
        out.w[0] = eval({ch, co});
        out.w[1] = eval({SignedLog::exp(na2 + ng2) * SignedLog::cosh(2.0 * z1.real()),
                         SignedLog::exp(na2 - ng2) * SignedLog::from_value(std::cos(2.0 * z1.imag())),
                         -ch, -co});
        out.w[2] = eval({SignedLog::exp(na1 + ng1) * SignedLog::cosh(2.0 * z2.real()),
                         SignedLog::exp(na1 - ng1) * SignedLog::from_value(std::cos(2.0 * z2.imag())),
                         -ch, -co});
    }
    out.w[3] = 1.0 - out.w[0] - out.w[1] - out.w[2];
    clamp_components(out, kZeroNonzeroNegTol, "zero-nonzero cat portrait");
    return out;
}

PortraitVector cat_portrait_even_odd(const CatState &s, const DisplacementPair &alpha) {
    const Complex a1 = alpha.mode1, a2 = alpha.mode2;
    const Complex g1 = s.amplitude1, g2 = s.amplitude2;
    const double sum_g = std::norm(g1) + std::norm(g2);
    const Complex z1 = std::conj(a1) * g1;
    const Complex z2 = std::conj(a2) * g2;
    const Complex z = z1 + z2;
    const double plus1 = std::norm(a1 + g1), plus2 = std::norm(a2 + g2);
    const double minus1 = std::norm(a1 - g1), minus2 = std::norm(a2 - g2);
    const double d1 = std::norm(a1) - std::norm(g1);
    const double d2 = std::norm(a2) - std::norm(g2);
    const double t1 = 2.0 * z1.imag(), t2 = 2.0 * z2.imag();
    const double log_pre = -std::norm(a1) - std::norm(a2) - std::log(4.0) - log_cosh(sum_g);

    // Even parity on a mode takes cosh, odd takes sinh; "other" is the swap.
    auto f = [](bool even, double x) { return even ? SignedLog::cosh(x) : SignedLog::sinh(x); };
    auto v = [](double x) { return SignedLog::from_value(x); };

    PortraitVector out;
    for (int c = 0; c < 4; ++c) {
        const bool e1 = c < 2, e2 = c % 2 == 0;
        const SignedLog terms[6] = {
            SignedLog::exp(-2.0 * z.real()) * f(e1, plus1) * f(e2, plus2),
            SignedLog::exp(2.0 * z.real()) * f(e1, minus1) * f(e2, minus2),
            v(2.0 * std::cos(2.0 * z.imag())) * f(e1, d1) * f(e2, d2) * v(std::cos(t1) * std::cos(t2)),
            -(v(2.0 * std::cos(2.0 * z.imag())) * f(!e1, d1) * f(!e2, d2) * v(std::sin(t1) * std::sin(t2))),
            v(2.0 * std::sin(2.0 * z.imag())) * f(e1, d1) * f(!e2, d2) * v(std::cos(t1) * std::sin(t2)),
            v(2.0 * std::sin(2.0 * z.imag())) * f(!e1, d1) * f(e2, d2) * v(std::sin(t1) * std::cos(t2)),
        };
        if (sum_g <= kLogDomainThreshold) {
            double acc = 0.0;
            for (const auto &t : terms) acc += t.value();
            out.w[c] = std::exp(log_pre) * acc;
        } else {
            const SignedLog total = signed_log_sum(terms);
            out.w[c] = total.sign == 0 ? 0.0 : total.sign * std::exp(total.log_magnitude + log_pre);
        }
    }
    clamp_components(out, kEvenOddNegTol, "even-odd cat portrait");
    return out;
}

namespace {

struct Sub2 {
    double a, b, c, d;  // [[a, b], [c, d]]
    double det() const { return a * d - b * c; }
};

Sub2 restrict(const Mat4R &m, int i, int j) { return {m[i][i], m[i][j], m[j][i], m[j][j]}; }

// u^T m^-1 u for a 2x2 block.
double inv_form(const Sub2 &m, double u0, double u1) {
    return (m.d * u0 * u0 - (m.b + m.c) * u0 * u1 + m.a * u1 * u1) / m.det();
}

double vacuum_single(const Sub2 &m, double u0, double u1) {
    const Sub2 two_m_plus_i{2.0 * m.a + 1.0, 2.0 * m.b, 2.0 * m.c, 2.0 * m.d + 1.0};
    const Sub2 m_plus_half{m.a + 0.5, m.b, m.c, m.d + 0.5};
    return std::exp(-inv_form(two_m_plus_i, u0, u1)) / std::sqrt(m_plus_half.det());
}

double parity_single(const Sub2 &m, double u0, double u1) {
    return std::exp(-0.5 * inv_form(m, u0, u1)) / (2.0 * std::sqrt(m.det()));
}

}  // namespace

// Mode 1 occupies quadrature indices (p1, q1) = (0, 2), mode 2 (p2, q2) = (1, 3).
PortraitVector gaussian_portrait_even_odd(const GaussianSpec &g, const DisplacementPair &alpha,
                                          DisplacementConvention convention) {
    const Mat4R &m = g.dispersion();
    const Vec4R mu = gaussian_shifted_mean(g, to_physical(alpha, convention));
    const double pi1 = parity_single(restrict(m, 0, 2), mu[0], mu[2]);
    const double pi2 = parity_single(restrict(m, 1, 3), mu[1], mu[3]);
    const double pi12 =
        std::exp(-0.5 * quadratic_form(mat4_inverse(m), mu)) / (4.0 * std::sqrt(mat4_det(m)));
    PortraitVector out;
    out.w = {0.25 * (1.0 + pi1 + pi2 + pi12), 0.25 * (1.0 + pi1 - pi2 - pi12),
             0.25 * (1.0 - pi1 + pi2 - pi12), 0.25 * (1.0 - pi1 - pi2 + pi12)};
    return out;
}

PortraitVector gaussian_portrait_zero_nonzero(const GaussianSpec &g,
                                              const DisplacementPair &alpha,
                                              DisplacementConvention convention) {
    const Mat4R &m = g.dispersion();
    const Mat4R id = identity4<double>();
    const Vec4R mu = gaussian_shifted_mean(g, to_physical(alpha, convention));
    const double both = std::exp(-quadratic_form(mat4_inverse(2.0 * m + id), mu)) /
                        std::sqrt(mat4_det(m + 0.5 * id));
    const double p1 = vacuum_single(restrict(m, 0, 2), mu[0], mu[2]);
    const double p2 = vacuum_single(restrict(m, 1, 3), mu[1], mu[3]);
    PortraitVector out;
    out.w = {both, p1 - both, p2 - both, 1.0 - p1 - p2 + both};
    return out;
}

std::optional<PortraitFn> gaussian_exact_portrait_fn(const TomogramSource &src,
                                                     const PartitionScheme &p) {
    const auto *g = dynamic_cast<const GaussianSource *>(&src);
    const auto c = p.canonical();
    if (g == nullptr || !c) return std::nullopt;
    const GaussianSpec spec = g->spec();
    const DisplacementConvention conv = g->convention();
    if (*c == PartitionScheme::Canonical::kZeroNonzero) {
        return PortraitFn([spec, conv](const DisplacementPair &a) {
            return gaussian_portrait_zero_nonzero(spec, a, conv);
        });
    }
    return PortraitFn([spec, conv](const DisplacementPair &a) {
        return gaussian_portrait_even_odd(spec, a, conv);
    });
}

PortraitVector coherent_portrait(const CoherentProduct &s, const PartitionScheme &p,
                                 const DisplacementPair &alpha) {
    const auto canonical = p.canonical();
    if (!canonical) throw Error(ErrorCode::UnsupportedState, "coherent closed form needs a canonical partition");
    const bool zero = *canonical == PartitionScheme::Canonical::kZeroNonzero;
    const auto in_a = [zero](Complex z) {
        const double mean = std::norm(z);
        return zero ? std::exp(-mean) : 0.5 * (1.0 + std::exp(-2.0 * mean));
    };
    const double a1 = in_a(alpha.mode1 + s.amplitude1);
    const double a2 = in_a(alpha.mode2 + s.amplitude2);
    PortraitVector v;
    v.w = {a1 * a2, a1 * (1.0 - a2), (1.0 - a1) * a2, (1.0 - a1) * (1.0 - a2)};
    return v;
}

bool has_closed_form(const TomogramSource &src, const PartitionScheme &p) {
    if (!p.canonical()) return false;
    return dynamic_cast<const CatSource *>(&src) != nullptr ||
           dynamic_cast<const CoherentProductSource *>(&src) != nullptr;
}

PortraitFn make_portrait_fn(const TomogramSource &src, const PartitionScheme &p,
                            const PortraitOptions &options) {
    if (options.n_max < 1) throw Error(ErrorCode::InvalidParameter, "nMax must be >= 1");
    if (!(options.eps_tail > 0.0)) {
        throw Error(ErrorCode::InvalidParameter, "tail tolerance must be > 0");
    }
    if (options.mode == PortraitMode::kAuto && has_closed_form(src, p)) {
        if (const auto *c = dynamic_cast<const CoherentProductSource *>(&src)) {
            const CoherentProduct state = c->state();
            return [state, p](const DisplacementPair &a) { return coherent_portrait(state, p, a); };
        }
        const CatState state = static_cast<const CatSource &>(src).state();
        if (*p.canonical() == PartitionScheme::Canonical::kZeroNonzero) {
            return [state](const DisplacementPair &a) { return cat_portrait_zero_nonzero(state, a); };
        }
        return [state](const DisplacementPair &a) { return cat_portrait_even_odd(state, a); };
    }
    const TomogramSource *source = &src;
    return [source, p, options](const DisplacementPair &a) {
        return portrait_truncated(*source, p, a, options.n_max, options.eps_tail);
    };
}

namespace debug {

std::array<double, 4> arbitrary_cell_sums(const RealMatrix &table,
                                          const std::function<int(int, int)> &cell) {
    std::array<double, 4> out{};
    for (std::size_t a = 0; a < table.rows(); ++a)
        for (std::size_t b = 0; b < table.cols(); ++b) {
            const int c = cell(static_cast<int>(a), static_cast<int>(b));
            if (c < 0 || c > 3) throw Error(ErrorCode::InvalidParameter, "cell index out of range");
            out[c] += table(a, b);
        }
    return out;
}

}  // namespace debug

}  // namespace tomobell
