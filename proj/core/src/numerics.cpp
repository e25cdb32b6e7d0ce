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

#include "tomobell/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "tomobell/error.hpp"

namespace tomobell {

namespace {

double magnitude(double v) { return std::abs(v); }
double magnitude(const Complex &v) { return std::abs(v); }

template <typename T>
T lu_det(Mat4<T> a) {
    T det(1);
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 4; ++r) {
            if (magnitude(a[r][col]) > magnitude(a[pivot][col])) pivot = r;
        }
        if (magnitude(a[pivot][col]) == 0.0) return T(0);
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (int r = col + 1; r < 4; ++r) {
            T f = a[r][col] / a[col][col];
            for (int c = col; c < 4; ++c) a[r][c] -= f * a[col][c];
        }
    }
    return det;
}

template <typename T>
double frob(const Mat4<T> &m) {
    double s = 0.0;
    for (const auto &row : m)
        for (const auto &v : row) s += magnitude(v) * magnitude(v);
    return std::sqrt(s);
}

template <typename T>
Mat4<T> gauss_jordan(Mat4<T> a) {
    const double norm = frob(a);
    const double det = magnitude(lu_det(a));
    if (!(det > 1e-12 * norm * norm * norm * norm)) {
        throw Error(ErrorCode::SingularMatrix,
                    "4x4 matrix is singular (|det| = " + std::to_string(det) + ")");
    }
    Mat4<T> inv = identity4<T>();
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 4; ++r) {
            if (magnitude(a[r][col]) > magnitude(a[pivot][col])) pivot = r;
        }
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        T p = a[col][col];
        for (int c = 0; c < 4; ++c) {
            a[col][c] /= p;
            inv[col][c] /= p;
        }
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            T f = a[r][col];
            if (f == T(0)) continue;
            for (int c = 0; c < 4; ++c) {
                a[r][c] -= f * a[col][c];
                inv[r][c] -= f * inv[col][c];
            }
        }
    }
    return inv;
}

template <typename T>
double asym(const Mat4<T> &m) {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) worst = std::max(worst, magnitude(m[i][j] - m[j][i]));
    return worst;
}

constexpr double kStochasticTol = 1e-9;

void check_stochastic_map(const RealMatrix &map, std::size_t expected_cols, const char *name) {
    if (map.rows() != 2 || map.cols() != expected_cols) {
        throw Error(ErrorCode::InvalidStochasticMatrix,
                    std::string(name) + " must be 2 x " + std::to_string(expected_cols));
    }
    for (std::size_t c = 0; c < map.cols(); ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < 2; ++r) {
            double v = map(r, c);
            if (!(v >= -kStochasticTol && v <= 1.0 + kStochasticTol)) {
                throw Error(ErrorCode::InvalidStochasticMatrix,
                            std::string(name) + " has an entry outside [0,1]");
            }
            s += v;
        }
        if (std::abs(s - 1.0) > kStochasticTol) {
            throw Error(ErrorCode::InvalidStochasticMatrix,
                        std::string(name) + " column " + std::to_string(c) + " sums to " +
                            std::to_string(s));
        }
    }
}

}  // namespace

Mat4C to_complex(const Mat4R &a) {
    Mat4C r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = a[i][j];
    return r;
}

Vec4C to_complex(const Vec4R &v) { return {v[0], v[1], v[2], v[3]}; }

Mat4C conjugate(const Mat4C &a) {
    Mat4C r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = std::conj(a[i][j]);
    return r;
}

Mat4C adjoint(const Mat4C &a) { return transpose(conjugate(a)); }

double quadratic_form(const Mat4R &m, const Vec4R &v) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s += v[i] * m[i][j] * v[j];
    return s;
}

double frobenius_norm(const Mat4R &m) { return frob(m); }
double frobenius_norm(const Mat4C &m) { return frob(m); }
double asymmetry(const Mat4R &m) { return asym(m); }
double asymmetry(const Mat4C &m) { return asym(m); }

double mat4_det(const Mat4R &m) { return lu_det(m); }
Complex mat4_det(const Mat4C &m) { return lu_det(m); }

Mat4R mat4_inverse(const Mat4R &m) { return gauss_jordan(m); }
Mat4C mat4_inverse(const Mat4C &m) { return gauss_jordan(m); }

RealMatrix::RealMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

RealMatrix::RealMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
    if (data_.size() != rows * cols) {
        throw Error(ErrorCode::InvalidParameter, "RealMatrix data size does not match shape");
    }
}

double RealMatrix::sum() const {
    double s = 0.0;
    for (double v : data_) s += v;
    return s;
}

Block2 stochastic_reduce(const RealMatrix &table, const RealMatrix &row_map,
                         const RealMatrix &col_map) {
    for (double v : table.data()) {
        if (!(v >= 0.0)) {
            throw Error(ErrorCode::InvalidParameter, "probability table has a negative entry");
        }
    }
    if (std::abs(table.sum() - 1.0) > kStochasticTol) {
        throw Error(ErrorCode::InvalidParameter,
                    "probability table sums to " + std::to_string(table.sum()));
    }
    check_stochastic_map(row_map, table.rows(), "row map");
    check_stochastic_map(col_map, table.cols(), "column map");

    Block2 out{};
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            double s = 0.0;
            for (std::size_t r = 0; r < table.rows(); ++r) {
                const double ra = row_map(a, r);
                if (ra == 0.0) continue;
                for (std::size_t c = 0; c < table.cols(); ++c) {
                    s += ra * table(r, c) * col_map(b, c);
                }
            }
            out[a][b] = s;
        }
    }
    return out;
}

double log_cosh(double x) {
    const double ax = std::abs(x);
    return ax + std::log1p(std::exp(-2.0 * ax)) - std::log(2.0);
}

SignedLog SignedLog::from_value(double v) {
    if (v == 0.0) return {0, 0.0};
    return {v > 0 ? 1 : -1, std::log(std::abs(v))};
}

SignedLog SignedLog::cosh(double x) { return {1, log_cosh(x)}; }

SignedLog SignedLog::sinh(double x) {
    if (x == 0.0) return {0, 0.0};
    const double ax = std::abs(x);
    return {x > 0 ? 1 : -1, ax + std::log1p(-std::exp(-2.0 * ax)) - std::log(2.0)};
}

double SignedLog::value() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(log_magnitude);
}

SignedLog SignedLog::operator*(const SignedLog &o) const {
    if (sign == 0 || o.sign == 0) return {0, 0.0};
    return {sign * o.sign, log_magnitude + o.log_magnitude};
}

SignedLog signed_log_sum(std::span<const SignedLog> terms) {
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    double max_pos = kNegInf;
    double max_neg = kNegInf;
    for (const auto &t : terms) {
        if (t.sign > 0) max_pos = std::max(max_pos, t.log_magnitude);
        if (t.sign < 0) max_neg = std::max(max_neg, t.log_magnitude);
    }
    double acc_pos = 0.0;
    double acc_neg = 0.0;
    for (const auto &t : terms) {
        if (t.sign > 0) acc_pos += std::exp(t.log_magnitude - max_pos);
        if (t.sign < 0) acc_neg += std::exp(t.log_magnitude - max_neg);
    }
    const double log_pos = acc_pos > 0 ? max_pos + std::log(acc_pos) : kNegInf;
    const double log_neg = acc_neg > 0 ? max_neg + std::log(acc_neg) : kNegInf;
    if (log_pos == log_neg) return {0, 0.0};
    if (log_pos > log_neg) {
        return {1, log_pos + std::log1p(-std::exp(log_neg - log_pos))};
    }
    return {-1, log_neg + std::log1p(-std::exp(log_pos - log_neg))};
}

}  // namespace tomobell
