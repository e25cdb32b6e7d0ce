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

#ifndef TOMOBELL_NUMERICS_HPP
#define TOMOBELL_NUMERICS_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace tomobell {

using Complex = std::complex<double>;

template <typename T>
using Vec4 = std::array<T, 4>;

template <typename T>
using Mat4 = std::array<std::array<T, 4>, 4>;

using Vec4R = Vec4<double>;
using Vec4C = Vec4<Complex>;
using Mat4R = Mat4<double>;
using Mat4C = Mat4<Complex>;

template <typename T>
constexpr Mat4<T> identity4() {
    Mat4<T> m{};
    for (int i = 0; i < 4; ++i) {
        m[i][i] = T(1);
    }
    return m;
}

template <typename T>
Mat4<T> operator+(const Mat4<T> &a, const Mat4<T> &b) {
    Mat4<T> r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = a[i][j] + b[i][j];
    return r;
}

template <typename T>
Mat4<T> operator-(const Mat4<T> &a, const Mat4<T> &b) {
    Mat4<T> r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = a[i][j] - b[i][j];
    return r;
}

template <typename T>
Mat4<T> operator*(const Mat4<T> &a, const Mat4<T> &b) {
    Mat4<T> r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            T acc{};
            for (int k = 0; k < 4; ++k) acc += a[i][k] * b[k][j];
            r[i][j] = acc;
        }
    return r;
}

template <typename T>
Mat4<T> operator*(T s, const Mat4<T> &a) {
    Mat4<T> r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = s * a[i][j];
    return r;
}

template <typename T>
Vec4<T> operator*(const Mat4<T> &a, const Vec4<T> &v) {
    Vec4<T> r{};
    for (int i = 0; i < 4; ++i) {
        T acc{};
        for (int k = 0; k < 4; ++k) acc += a[i][k] * v[k];
        r[i] = acc;
    }
    return r;
}

template <typename T>
Mat4<T> transpose(const Mat4<T> &a) {
    Mat4<T> r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = a[j][i];
    return r;
}

Mat4C to_complex(const Mat4R &a);
Vec4C to_complex(const Vec4R &v);
Mat4C conjugate(const Mat4C &a);
Mat4C adjoint(const Mat4C &a);

/// v^T m v (no conjugation).
double quadratic_form(const Mat4R &m, const Vec4R &v);

/// Frobenius norm.
double frobenius_norm(const Mat4R &m);
double frobenius_norm(const Mat4C &m);

/// Largest componentwise |a_ij - a_ji|.
double asymmetry(const Mat4R &m);
double asymmetry(const Mat4C &m);

/// Determinant by LU factorization with partial pivoting.
double mat4_det(const Mat4R &m);
Complex mat4_det(const Mat4C &m);

/// Gauss-Jordan inverse with partial pivoting. Throws SingularMatrix when
/// |det m| <= 1e-12 * ||m||_F^4.
Mat4R mat4_inverse(const Mat4R &m);
Mat4C mat4_inverse(const Mat4C &m);

/// Dense row-major real matrix for probability tables of arbitrary shape.
class RealMatrix {
   public:
    RealMatrix() = default;
    RealMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    RealMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const double> data() const noexcept { return data_; }
    double sum() const;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

using Block2 = std::array<std::array<double, 2>, 2>;

/// Collapses a probability table to a 2x2 block with two stochastic maps:
/// returns row_map * table * col_map^T.
///
/// table must be nonnegative and sum to 1 within 1e-9 (InvalidParameter
/// otherwise). row_map is 2 x rows, col_map is 2 x cols; each of their columns
/// must lie in [0,1] and sum to 1 within 1e-9 (InvalidStochasticMatrix).
Block2 stochastic_reduce(const RealMatrix &table, const RealMatrix &row_map,
                         const RealMatrix &col_map);

/// A real number stored as sign and log-magnitude so that products of
/// cosh/sinh/exp factors with huge arguments stay representable.
struct SignedLog {
    int sign = 0;  // -1, 0 or +1; zero means the value is exactly 0
    double log_magnitude = 0.0;

    static SignedLog from_value(double v);
    static SignedLog exp(double x) { return {1, x}; }
    static SignedLog cosh(double x);
    static SignedLog sinh(double x);

    double value() const;
    SignedLog operator*(const SignedLog &o) const;
    SignedLog operator-() const { return {-sign, log_magnitude}; }
};

/// Sum of signed log values, accumulated by log-sum-exp separately over the
/// positive and negative terms.
SignedLog signed_log_sum(std::span<const SignedLog> terms);

/// log(cosh x) without overflow.
double log_cosh(double x);

}  // namespace tomobell

#endif
