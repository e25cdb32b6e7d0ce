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

#ifndef TOMOBELL_STATES_HPP
#define TOMOBELL_STATES_HPP

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tomobell/numerics.hpp"

namespace tomobell {

/// Complex displacement applied to each mode before photon counting.
struct DisplacementPair {
    Complex mode1{};
    Complex mode2{};
};

struct PhotonCounts {
    int mode1 = 0;
    int mode2 = 0;
};

/// N (|g1, g2> + |-g1, -g2>) with coherent amplitudes g1, g2.
struct CatState {
    Complex amplitude1{};
    Complex amplitude2{};
};

/// |g1> |g2>.
struct CoherentProduct {
    Complex amplitude1{};
    Complex amplitude2{};
};

/// Finite superposition sum_t weight_t |a_t^(1)> |a_t^(2)> of two-mode
/// coherent states. Weights must already include the normalization.
struct CoherentSuperposition {
    struct Term {
        Complex weight{};
        Complex amplitude1{};
        Complex amplitude2{};
    };
    std::vector<Term> terms;

    static CoherentSuperposition from_cat(const CatState &s);
    static CoherentSuperposition from_product(const CoherentProduct &s);
};

/// Gaussian state given by its dispersion matrix and mean vector, both in the
/// quadrature order (p1, p2, q1, q2) with p = -i(a - a^+)/sqrt2 and
/// q = (a + a^+)/sqrt2.
///
/// Construction rejects (NonPhysicalSpec) a matrix that is not symmetric
/// within 1e-12, not positive definite, or has det < 1/16 - 1e-8.
class GaussianSpec {
   public:
    GaussianSpec(const Mat4R &dispersion, const Vec4R &mean);

    const Mat4R &dispersion() const noexcept { return dispersion_; }
    const Vec4R &mean() const noexcept { return mean_; }

   private:
    Mat4R dispersion_;
    Vec4R mean_;
};

/// Symplectic eigenvalues of a dispersion matrix, larger first. The full
/// uncertainty relation holds iff the smaller one is >= 1/2; det M >= 1/16
/// alone does not imply it.
std::array<double, 2> symplectic_eigenvalues(const Mat4R &dispersion);

/// How the complex settings handed to a Gaussian source map onto physical
/// displacements.
///
/// kPhysical: <p_j> += sqrt2 Im(alpha_j), <q_j> += sqrt2 Re(alpha_j).
/// kSwapped: the same with Re and Im exchanged, i.e. alpha is replaced
/// by i * conj(alpha). The reference Bell matrix for the squeezed two-mode
/// example uses this labelling.
enum class DisplacementConvention { kPhysical, kSwapped };

DisplacementPair to_physical(const DisplacementPair &alpha, DisplacementConvention convention);

/// Two-mode photon-number tomogram w(n1, n2, alpha1, alpha2).
class TomogramSource {
   public:
    virtual ~TomogramSource() = default;

    virtual double probability(const PhotonCounts &n, const DisplacementPair &alpha) const = 0;

    /// w(n1, n2) for 0 <= n1, n2 <= n_max; rows index mode 1.
    virtual RealMatrix table(const DisplacementPair &alpha, int n_max) const;

    /// Exact coherent-state expansion when the state has one.
    virtual std::optional<CoherentSuperposition> coherent_expansion() const { return std::nullopt; }

    virtual std::string describe() const = 0;
};

class CatSource final : public TomogramSource {
   public:
    explicit CatSource(const CatState &state) : state_(state) {}

    double probability(const PhotonCounts &n, const DisplacementPair &alpha) const override;
    std::optional<CoherentSuperposition> coherent_expansion() const override;
    std::string describe() const override;

    const CatState &state() const noexcept { return state_; }

   private:
    CatState state_;
};

class CoherentProductSource final : public TomogramSource {
   public:
    explicit CoherentProductSource(const CoherentProduct &state) : state_(state) {}

    double probability(const PhotonCounts &n, const DisplacementPair &alpha) const override;
    std::optional<CoherentSuperposition> coherent_expansion() const override;
    std::string describe() const override;

    const CoherentProduct &state() const noexcept { return state_; }

   private:
    CoherentProduct state_;
};

/// Brute-force source: sums Fock amplitudes of a coherent superposition.
class SuperpositionSource final : public TomogramSource {
   public:
    explicit SuperpositionSource(CoherentSuperposition state);

    double probability(const PhotonCounts &n, const DisplacementPair &alpha) const override;
    std::optional<CoherentSuperposition> coherent_expansion() const override { return state_; }
    std::string describe() const override;

   private:
    CoherentSuperposition state_;
};

/// Gaussian tomogram through four-dimensional Hermite polynomials. The
/// alpha-independent pieces (R, (I - 2M)^-1, (2M + I)^-1, det(M + I/2)) are
/// computed once; each table() call builds one Hermite lattice, reusing a
/// per-thread buffer.
class GaussianSource final : public TomogramSource {
   public:
    explicit GaussianSource(GaussianSpec spec,
                            DisplacementConvention convention = DisplacementConvention::kPhysical);

    double probability(const PhotonCounts &n, const DisplacementPair &alpha) const override;
    RealMatrix table(const DisplacementPair &alpha, int n_max) const override;
    std::string describe() const override;

    /// Real parts of the diagonal Hermite values times the prefactor, before
    /// any sign check. For a dispersion matrix violating the uncertainty
    /// relation these are quasi-probabilities and may be negative; table()
    /// applies the clamp / NumericalNegativity policy on top.
    RealMatrix quasi_table(const DisplacementPair &alpha, int n_max) const;

    const GaussianSpec &spec() const noexcept { return spec_; }
    DisplacementConvention convention() const noexcept { return convention_; }
    const Mat4C &r() const noexcept { return r_; }

   private:
    struct Prepared {
        Vec4C y;
        double log_prefactor;
    };
    Prepared prepare(const DisplacementPair &alpha) const;

    GaussianSpec spec_;
    DisplacementConvention convention_;
    Mat4C r_;
    Mat4C y_map_;  // 2 U^T (I - 2M)^-1
    Mat4R quad_;   // (2M + I)^-1
    double log_sqrt_det_ = 0.0;
};

/// Normalization factor of the cat state. Above a squared-amplitude sum of
/// 600 it is evaluated from its logarithm; the factor tends to 1/sqrt2 and
/// stays representable.
struct CatNormalization {
    double log_value = 0.0;
    double value = 0.0;
};

CatNormalization cat_normalization(Complex amplitude1, Complex amplitude2);

/// Closed-form cat tomogram. Switches to log-domain factors when
/// |g1|^2 + |g2|^2 > 30.
double cat_tomogram(const CatState &s, const PhotonCounts &n, const DisplacementPair &alpha);

/// Product of Poisson weights with means |alpha_i + g_i|^2.
double coherent_tomogram(const CoherentProduct &s, const PhotonCounts &n,
                         const DisplacementPair &alpha);

/// |<n1 n2| D(alpha1, alpha2) |psi>|^2 summed term by term in the Fock basis.
double fock_oracle_tomogram(const CoherentSuperposition &s, const PhotonCounts &n,
                            const DisplacementPair &alpha);

/// Same as above for any source; throws UnsupportedState when the source has
/// no coherent-state expansion.
double fock_oracle_tomogram(const TomogramSource &src, const PhotonCounts &n,
                            const DisplacementPair &alpha);

/// Mean vector after displacement (physical convention).
Vec4R gaussian_shifted_mean(const GaussianSpec &g, const DisplacementPair &alpha);

/// R = U^+ (I - 2M)(I + 2M)^-1 U^*, symmetrized.
Mat4C gaussian_R(const Mat4R &dispersion);

/// y = 2 U^T (I - 2M)^-1 <Q>. Throws DegenerateGaussian if I - 2M is singular.
Vec4C gaussian_y(const Mat4R &dispersion, const Vec4R &shifted_mean);

double gaussian_tomogram(const GaussianSpec &g, const PhotonCounts &n,
                         const DisplacementPair &alpha);

/// Zero-mean family with det M = (1 + 4l)/16; pure for l = 0.
GaussianSpec gaussian_purity_family(double k, double l);

/// The squeezed two-mode state with M = [[3, sqrt35/2], [sqrt35/2, 3]] (+)
/// [[1, sqrt3/2], [sqrt3/2, 1]] and zero mean.
GaussianSpec squeezed_example_spec();

/// The fixed quadrature-to-mode transform U.
const Mat4C &quadrature_transform();

}  // namespace tomobell

#endif
