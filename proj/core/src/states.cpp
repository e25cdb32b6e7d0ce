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

#include "tomobell/states.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "tomobell/error.hpp"
#include "tomobell/hermite.hpp"

namespace tomobell {

namespace {

constexpr double kLogDomainThreshold = 30.0;
constexpr double kNormalizationLogThreshold = 600.0;
constexpr double kClosedFormNegTol = 1e-12;
constexpr double kHermiteNegTol = 1e-9;
constexpr double kHermiteImagTol = 1e-8;

void check_counts(const PhotonCounts &n) {
    if (n.mode1 < 0 || n.mode2 < 0) {
        throw Error(ErrorCode::InvalidParameter, "photon counts must be nonnegative");
    }
}

Complex ipow(Complex base, int n) {
    Complex r(1.0);
    for (int i = 0; i < n; ++i) r *= base;
    return r;
}

double clamp_closed_form(double w, const char *what) {
    if (w < 0.0) {
        if (w < -kClosedFormNegTol) {
            throw Error(ErrorCode::NumericalNegativity,
                        std::string(what) + " returned " + std::to_string(w));
        }
        return 0.0;
    }
    return w;
}

// log of |<n|delta>| amplitude factor delta^n e^{-|delta|^2/2}/sqrt(n!), complex.
// Returns false when the amplitude is exactly zero.
bool log_fock_amplitude(Complex delta, int n, Complex &out) {
    const double mag2 = std::norm(delta);
    if (delta == Complex(0.0)) {
        if (n > 0) return false;
        out = 0.0;
        return true;
    }
    out = Complex(-0.5 * mag2 - 0.5 * std::lgamma(n + 1.0), 0.0) +
          static_cast<double>(n) * std::log(delta);
    return true;
}

std::string complex_str(Complex z) {
    std::ostringstream os;
    os.precision(6);
    os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return os.str();
}

}  // namespace

CoherentSuperposition CoherentSuperposition::from_cat(const CatState &s) {
    const double nrm = cat_normalization(s.amplitude1, s.amplitude2).value;
    return {{{Complex(nrm), s.amplitude1, s.amplitude2},
             {Complex(nrm), -s.amplitude1, -s.amplitude2}}};
}

CoherentSuperposition CoherentSuperposition::from_product(const CoherentProduct &s) {
    return {{{Complex(1.0), s.amplitude1, s.amplitude2}}};
}

GaussianSpec::GaussianSpec(const Mat4R &dispersion, const Vec4R &mean)
    : dispersion_(dispersion), mean_(mean) {
    for (int i = 0; i < 4; ++i) {
        if (!std::isfinite(mean[i])) throw Error(ErrorCode::NonPhysicalSpec, "non-finite mean");
        for (int j = 0; j < 4; ++j) {
            if (!std::isfinite(dispersion[i][j])) {
                throw Error(ErrorCode::NonPhysicalSpec, "non-finite dispersion entry");
            }
        }
    }
    if (asymmetry(dispersion) > 1e-12) {
        throw Error(ErrorCode::NonPhysicalSpec, "dispersion matrix is not symmetric");
    }
    // Cholesky as the positive-definiteness test.
    Mat4R l{};
    for (int j = 0; j < 4; ++j) {
        double d = dispersion[j][j];
        for (int k = 0; k < j; ++k) d -= l[j][k] * l[j][k];
        if (!(d > 0.0)) {
            throw Error(ErrorCode::NonPhysicalSpec, "dispersion matrix is not positive definite");
        }
        l[j][j] = std::sqrt(d);
        for (int i = j + 1; i < 4; ++i) {
            double v = dispersion[i][j];
            for (int k = 0; k < j; ++k) v -= l[i][k] * l[j][k];
            l[i][j] = v / l[j][j];
        }
    }
    const double det = mat4_det(dispersion);
    if (det < 1.0 / 16.0 - 1e-8) {
        throw Error(ErrorCode::NonPhysicalSpec,
                    "det M = " + std::to_string(det) + " violates det M >= 1/16");
    }
}

std::array<double, 2> symplectic_eigenvalues(const Mat4R &m) {
    // Mode j occupies rows (j, j + 2) in the (p1, p2, q1, q2) order.
    const auto det2 = [&](int r0, int r1, int c0, int c1) {
        return m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    };
    const double delta = det2(0, 2, 0, 2) + det2(1, 3, 1, 3) + 2.0 * det2(0, 2, 1, 3);
    const double det = mat4_det(m);
    const double disc = std::sqrt(std::max(0.0, delta * delta - 4.0 * det));
    const double hi = 0.5 * (delta + disc);
    const double lo = det / hi;
    return {std::sqrt(hi), std::sqrt(std::max(0.0, lo))};
}

DisplacementPair to_physical(const DisplacementPair &alpha, DisplacementConvention convention) {
    if (convention == DisplacementConvention::kPhysical) return alpha;
    const Complex i(0.0, 1.0);
    return {i * std::conj(alpha.mode1), i * std::conj(alpha.mode2)};
}

RealMatrix TomogramSource::table(const DisplacementPair &alpha, int n_max) const {
    if (n_max < 0) throw Error(ErrorCode::InvalidParameter, "nMax must be nonnegative");
    RealMatrix t(n_max + 1, n_max + 1);
    for (int a = 0; a <= n_max; ++a)
        for (int b = 0; b <= n_max; ++b) t(a, b) = probability({a, b}, alpha);
    return t;
}

double CatSource::probability(const PhotonCounts &n, const DisplacementPair &alpha) const {
    return cat_tomogram(state_, n, alpha);
}

std::optional<CoherentSuperposition> CatSource::coherent_expansion() const {
    return CoherentSuperposition::from_cat(state_);
}

std::string CatSource::describe() const {
    return "cat(gamma1=" + complex_str(state_.amplitude1) +
           ", gamma2=" + complex_str(state_.amplitude2) + ")";
}

double CoherentProductSource::probability(const PhotonCounts &n,
                                          const DisplacementPair &alpha) const {
    return coherent_tomogram(state_, n, alpha);
}

std::optional<CoherentSuperposition> CoherentProductSource::coherent_expansion() const {
    return CoherentSuperposition::from_product(state_);
}

std::string CoherentProductSource::describe() const {
    return "coherent(gamma1=" + complex_str(state_.amplitude1) +
           ", gamma2=" + complex_str(state_.amplitude2) + ")";
}

SuperpositionSource::SuperpositionSource(CoherentSuperposition state) : state_(std::move(state)) {
    if (state_.terms.empty()) {
        throw Error(ErrorCode::UnsupportedState, "empty coherent superposition");
    }
}

double SuperpositionSource::probability(const PhotonCounts &n,
                                        const DisplacementPair &alpha) const {
    return fock_oracle_tomogram(state_, n, alpha);
}

std::string SuperpositionSource::describe() const {
    return "superposition(" + std::to_string(state_.terms.size()) + " terms)";
}

CatNormalization cat_normalization(Complex amplitude1, Complex amplitude2) {
    const double s = std::norm(amplitude1) + std::norm(amplitude2);
    CatNormalization out;
    if (s > kNormalizationLogThreshold) {
        out.log_value = 0.5 * s - std::log(2.0) - 0.5 * log_cosh(s);
        out.value = std::exp(out.log_value);
    } else {
        out.value = std::exp(0.5 * s) / (2.0 * std::sqrt(std::cosh(s)));
        out.log_value = std::log(out.value);
    }
    return out;
}

double cat_tomogram(const CatState &st, const PhotonCounts &n, const DisplacementPair &alpha) {
    check_counts(n);
    const Complex a1 = alpha.mode1, a2 = alpha.mode2;
    const Complex g1 = st.amplitude1, g2 = st.amplitude2;
    const double s = std::norm(g1) + std::norm(g2);
    const Complex z = std::conj(a1) * g1 + std::conj(a2) * g2;
    const double log_pre = -(std::norm(a1) + std::norm(a2)) - std::log(4.0) -
                           std::lgamma(n.mode1 + 1.0) - std::lgamma(n.mode2 + 1.0) - log_cosh(s);

    double w;
    if (s <= kLogDomainThreshold) {
        const Complex t = std::exp(-z) * ipow(a1 + g1, n.mode1) * ipow(a2 + g2, n.mode2) +
                          std::exp(z) * ipow(a1 - g1, n.mode1) * ipow(a2 - g2, n.mode2);
        w = std::exp(log_pre) * std::norm(t);
    } else {
        // Each term as a complex logarithm; a zero base with positive power kills the term.
        auto log_term = [&](Complex sign_z, Complex b1, Complex b2, Complex &out) {
            if ((b1 == Complex(0.0) && n.mode1 > 0) || (b2 == Complex(0.0) && n.mode2 > 0)) {
                return false;
            }
            out = sign_z;
            if (n.mode1 > 0) out += static_cast<double>(n.mode1) * std::log(b1);
            if (n.mode2 > 0) out += static_cast<double>(n.mode2) * std::log(b2);
            return true;
        };
        Complex la, lb;
        const bool has_a = log_term(-z, a1 + g1, a2 + g2, la);
        const bool has_b = log_term(z, a1 - g1, a2 - g2, lb);
        if (!has_a && !has_b) return 0.0;
        double log_mod2;
        if (has_a && has_b) {
            if (lb.real() > la.real()) std::swap(la, lb);
            log_mod2 = 2.0 * la.real() + std::log(std::norm(1.0 + std::exp(lb - la)));
        } else {
            log_mod2 = 2.0 * (has_a ? la : lb).real();
        }
        w = std::exp(log_pre + log_mod2);
    }
    return clamp_closed_form(w, "cat tomogram");
}

double coherent_tomogram(const CoherentProduct &st, const PhotonCounts &n,
                         const DisplacementPair &alpha) {
    check_counts(n);
    auto poisson = [](double lambda, int k) {
        if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
        return std::exp(-lambda + k * std::log(lambda) - std::lgamma(k + 1.0));
    };
    return poisson(std::norm(alpha.mode1 + st.amplitude1), n.mode1) *
           poisson(std::norm(alpha.mode2 + st.amplitude2), n.mode2);
}

double fock_oracle_tomogram(const CoherentSuperposition &st, const PhotonCounts &n,
                            const DisplacementPair &alpha) {
    check_counts(n);
    if (st.terms.empty()) {
        throw Error(ErrorCode::UnsupportedState, "empty coherent superposition");
    }
    // D(a)|d> = exp((a d^* - a^* d)/2) |a + d> per mode.
    auto phase = [](Complex a, Complex d) { return 0.5 * (a * std::conj(d) - std::conj(a) * d); };
    Complex amp(0.0);
    for (const auto &t : st.terms) {
        if (!std::isfinite(std::abs(t.weight)) || !std::isfinite(std::abs(t.amplitude1)) ||
            !std::isfinite(std::abs(t.amplitude2))) {
            throw Error(ErrorCode::UnsupportedState, "non-finite superposition term");
        }
        Complex l1, l2;
        if (!log_fock_amplitude(alpha.mode1 + t.amplitude1, n.mode1, l1)) continue;
        if (!log_fock_amplitude(alpha.mode2 + t.amplitude2, n.mode2, l2)) continue;
        amp += t.weight * std::exp(phase(alpha.mode1, t.amplitude1) +
                                   phase(alpha.mode2, t.amplitude2) + l1 + l2);
    }
    return std::norm(amp);
}

double fock_oracle_tomogram(const TomogramSource &src, const PhotonCounts &n,
                            const DisplacementPair &alpha) {
    const auto expansion = src.coherent_expansion();
    if (!expansion) {
        throw Error(ErrorCode::UnsupportedState,
                    src.describe() + " has no coherent-state expansion");
    }
    return fock_oracle_tomogram(*expansion, n, alpha);
}

const Mat4C &quadrature_transform() {
    static const Mat4C u = [] {
        const double h = 1.0 / std::sqrt(2.0);
        const Complex i(0.0, h);
        return Mat4C{{{-i, 0.0, i, 0.0},
                      {0.0, -i, 0.0, i},
                      {h, 0.0, h, 0.0},
                      {0.0, h, 0.0, h}}};
    }();
    return u;
}

Vec4R gaussian_shifted_mean(const GaussianSpec &g, const DisplacementPair &alpha) {
    const double r2 = std::sqrt(2.0);
    Vec4R m = g.mean();
    m[0] += r2 * alpha.mode1.imag();
    m[1] += r2 * alpha.mode2.imag();
    m[2] += r2 * alpha.mode1.real();
    m[3] += r2 * alpha.mode2.real();
    return m;
}

Mat4C gaussian_R(const Mat4R &dispersion) {
    const Mat4R id = identity4<double>();
    const Mat4R two_m = 2.0 * dispersion;
    const Mat4R core = (id - two_m) * mat4_inverse(id + two_m);
    const Mat4C &u = quadrature_transform();
    Mat4C r = adjoint(u) * to_complex(core) * conjugate(u);
    if (asymmetry(r) > 1e-10) {
        throw Error(ErrorCode::AsymmetricR, "R is not symmetric; dispersion matrix is inconsistent");
    }
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            const Complex avg = 0.5 * (r[i][j] + r[j][i]);
            r[i][j] = avg;
            r[j][i] = avg;
        }
    return r;
}

namespace {

Mat4C y_map_for(const Mat4R &dispersion) {
    const Mat4R id = identity4<double>();
    Mat4R inv;
    try {
        inv = mat4_inverse(id - 2.0 * dispersion);
    } catch (const Error &e) {
        if (e.code() != ErrorCode::SingularMatrix) throw;
        throw Error(ErrorCode::DegenerateGaussian,
                    "I - 2M is singular; use the coherent-state closed form");
    }
    return Complex(2.0) * transpose(quadrature_transform()) * to_complex(inv);
}

}  // namespace

Vec4C gaussian_y(const Mat4R &dispersion, const Vec4R &shifted_mean) {
    return y_map_for(dispersion) * to_complex(shifted_mean);
}

GaussianSource::GaussianSource(GaussianSpec spec, DisplacementConvention convention)
    : spec_(std::move(spec)), convention_(convention) {
    const Mat4R &m = spec_.dispersion();
    const Mat4R id = identity4<double>();
    y_map_ = y_map_for(m);
    r_ = gaussian_R(m);
    quad_ = mat4_inverse(2.0 * m + id);
    log_sqrt_det_ = 0.5 * std::log(mat4_det(m + 0.5 * id));
}

GaussianSource::Prepared GaussianSource::prepare(const DisplacementPair &alpha) const {
    const Vec4R mu = gaussian_shifted_mean(spec_, to_physical(alpha, convention_));
    return {y_map_ * to_complex(mu), -quadratic_form(quad_, mu) - log_sqrt_det_};
}

namespace {

// g = H / (n1! n2!). The residue passes when it is small on the scale of H
// or negligible on the probability scale (pre * g).
constexpr double kProbabilityImagTol = 1e-13;

bool residue_ok(Complex g, int n1, int n2, double pre) {
    const double f = std::exp(std::lgamma(n1 + 1.0) + std::lgamma(n2 + 1.0));
    if (std::abs(g.imag()) * f <= kHermiteImagTol * (1.0 + std::abs(g.real()) * f)) return true;
    return pre * std::abs(g.imag()) <= kProbabilityImagTol;
}

[[noreturn]] void throw_residue(Complex g, int n1, int n2) {
    throw Error(ErrorCode::NumericalNegativity,
                "Hermite value has imaginary residue " + std::to_string(g.imag()) +
                    " at n = (" + std::to_string(n1) + ", " + std::to_string(n2) +
                    ") even in extended precision");
}

double clamp_hermite(double w, int n1, int n2) {
    if (w < 0.0) {
        if (w < -kHermiteNegTol) {
            throw Error(ErrorCode::NumericalNegativity,
                        "Gaussian tomogram " + std::to_string(w) + " at n = (" +
                            std::to_string(n1) + ", " + std::to_string(n2) + ")");
        }
        return 0.0;
    }
    return w;
}

bool diagonal_ok(const HermiteLattice &lattice, int n_max, double pre) {
    for (int a = 0; a <= n_max; ++a)
        for (int b = 0; b <= n_max; ++b)
            if (!residue_ok(lattice.normalized({a, b, a, b}), a, b, pre)) return false;
    return true;
}

}  // namespace

double GaussianSource::probability(const PhotonCounts &n, const DisplacementPair &alpha) const {
    check_counts(n);
    const Prepared p = prepare(alpha);
    const HermiteIndex k{n.mode1, n.mode2, n.mode1, n.mode2};
    const int max_order = std::max(kDefaultMaxHermiteOrder, total_order(k));
    HermiteLattice lattice({r_, p.y}, k, max_order);
    const double pre = std::exp(p.log_prefactor);
    Complex g = lattice.normalized(k);
    if (!residue_ok(g, n.mode1, n.mode2, pre)) {
        lattice.reset({r_, p.y}, k, max_order, HermitePrecision::kDoubleDouble);
        g = lattice.normalized(k);
        if (!residue_ok(g, n.mode1, n.mode2, pre)) throw_residue(g, n.mode1, n.mode2);
    }
    // normalized() is H / sqrt(n1! n2! n1! n2!) = H / (n1! n2!).
    return clamp_hermite(pre * g.real(), n.mode1, n.mode2);
}

RealMatrix GaussianSource::quasi_table(const DisplacementPair &alpha, int n_max) const {
    if (n_max < 0) throw Error(ErrorCode::InvalidParameter, "nMax must be nonnegative");
    const Prepared p = prepare(alpha);
    thread_local HermiteLattice lattice;
    const HermiteIndex bounds{n_max, n_max, n_max, n_max};
    const double pre = std::exp(p.log_prefactor);
    lattice.reset({r_, p.y}, bounds, 4 * n_max);
    if (!diagonal_ok(lattice, n_max, pre)) {
        // The double recursion loses digits on some inputs (large settings
        // for dispersion matrices that violate the uncertainty relation).
        lattice.reset({r_, p.y}, bounds, 4 * n_max, HermitePrecision::kDoubleDouble);
    }
    RealMatrix t(n_max + 1, n_max + 1);
    for (int a = 0; a <= n_max; ++a)
        for (int b = 0; b <= n_max; ++b) {
            const Complex g = lattice.normalized({a, b, a, b});
            if (!residue_ok(g, a, b, pre)) throw_residue(g, a, b);
            t(a, b) = pre * g.real();
        }
    return t;
}

RealMatrix GaussianSource::table(const DisplacementPair &alpha, int n_max) const {
    RealMatrix t = quasi_table(alpha, n_max);
    for (std::size_t a = 0; a < t.rows(); ++a)
        for (std::size_t b = 0; b < t.cols(); ++b)
            t(a, b) = clamp_hermite(t(a, b), static_cast<int>(a), static_cast<int>(b));
    return t;
}

std::string GaussianSource::describe() const {
    std::ostringstream os;
    os.precision(6);
    os << "gaussian(M=[";
    const Mat4R &m = spec_.dispersion();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) os << (i || j ? "," : "") << m[i][j];
    os << "], mean=[";
    for (int i = 0; i < 4; ++i) os << (i ? "," : "") << spec_.mean()[i];
    os << "])";
    return os.str();
}

double gaussian_tomogram(const GaussianSpec &g, const PhotonCounts &n,
                         const DisplacementPair &alpha) {
    return GaussianSource(g).probability(n, alpha);
}

GaussianSpec gaussian_purity_family(double k, double l) {
    if (!(k >= 0.5) || !(l >= 0.0) || !std::isfinite(k) || !std::isfinite(l)) {
        throw Error(ErrorCode::InvalidParameter, "purity family needs k >= 1/2 and l >= 0");
    }
    const double c = std::sqrt(k * k - 0.25);
    Mat4R m{};
    m[0][0] = k + l / k;
    m[1][1] = k;
    m[0][1] = m[1][0] = c;
    m[2][2] = k;
    m[3][3] = k;
    m[2][3] = m[3][2] = c;
    return GaussianSpec(m, {0.0, 0.0, 0.0, 0.0});
}

GaussianSpec squeezed_example_spec() {
    Mat4R m{};
    m[0][0] = m[1][1] = 3.0;
    m[0][1] = m[1][0] = std::sqrt(35.0) / 2.0;
    m[2][2] = m[3][3] = 1.0;
    m[2][3] = m[3][2] = std::sqrt(3.0) / 2.0;
    return GaussianSpec(m, {0.0, 0.0, 0.0, 0.0});
}

}  // namespace tomobell
