// SPDX-License-Identifier: Apache-2.0
//
// tsdce: transformed spatial domain channel estimation for analog mmWave links
// Copyright (C) 2026 The tsdce authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef TSDCE_NUMKIT_MATRIX_HPP
#define TSDCE_NUMKIT_MATRIX_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tsdce::numkit
{

using cplx = std::complex<double>;

// Dense row-major matrix. Always at least 1x1.
template <typename T>
class Matrix
{
public:
    Matrix() : Matrix(1, 1) {}

    Matrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill)
    {
        if (rows == 0 || cols == 0)
            throw std::invalid_argument("Matrix dimensions must be at least 1x1.");
    }

    Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries))
    {
        if (rows == 0 || cols == 0)
            throw std::invalid_argument("Matrix dimensions must be at least 1x1.");
        if (data_.size() != rows * cols)
            throw std::invalid_argument("Matrix entry count " + std::to_string(data_.size()) +
                                        " does not match " + std::to_string(rows) + "x" + std::to_string(cols) + ".");
    }

    Matrix(std::initializer_list<std::initializer_list<T>> init)
        : rows_(init.size()), cols_(init.size() ? init.begin()->size() : 0)
    {
        if (rows_ == 0 || cols_ == 0)
            throw std::invalid_argument("Matrix dimensions must be at least 1x1.");
        data_.reserve(rows_ * cols_);
        for (const auto &row : init)
        {
            if (row.size() != cols_)
                throw std::invalid_argument("Ragged matrix initializer.");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }

    T &operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    const T &operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<T> entries() noexcept { return data_; }
    std::span<const T> entries() const noexcept { return data_; }

    std::span<T> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const T> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

    bool same_shape(const Matrix &o) const noexcept { return rows_ == o.rows_ && cols_ == o.cols_; }

    Matrix &operator+=(const Matrix &o)
    {
        require_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i)
            data_[i] += o.data_[i];
        return *this;
    }

    Matrix &operator-=(const Matrix &o)
    {
        require_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i)
            data_[i] -= o.data_[i];
        return *this;
    }

    template <typename S>
    Matrix &operator*=(S s)
    {
        for (auto &x : data_)
            x *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix &b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix &b) { return a -= b; }
    template <typename S>
    friend Matrix operator*(Matrix a, S s) { return a *= s; }
    template <typename S>
    friend Matrix operator*(S s, Matrix a) { return a *= s; }

    friend bool operator==(const Matrix &, const Matrix &) = default;

    // Top-left rows x cols block.
    Matrix crop(std::size_t rows, std::size_t cols) const
    {
        if (rows > rows_ || cols > cols_)
            throw std::invalid_argument("Crop exceeds matrix dimensions.");
        Matrix out(rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            std::copy_n(data_.begin() + r * cols_, cols, out.data_.begin() + r * cols);
        return out;
    }

    Matrix transpose() const
    {
        Matrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                out(c, r) = (*this)(r, c);
        return out;
    }

private:
    void require_same_shape(const Matrix &o) const
    {
        if (!same_shape(o))
            throw std::invalid_argument("Matrix shape mismatch.");
    }

    std::size_t rows_;
    std::size_t cols_;
    std::vector<T> data_;
};

using ComplexMatrix = Matrix<cplx>;
using RealMatrix = Matrix<double>;

inline ComplexMatrix adjoint(const ComplexMatrix &m)
{
    ComplexMatrix out(m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            out(c, r) = std::conj(m(r, c));
    return out;
}

template <typename T>
Matrix<T> matmul(const Matrix<T> &a, const Matrix<T> &b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("matmul: inner dimensions differ.");
    Matrix<T> out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
        {
            const T aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j)
                out(i, j) += aik * b(k, j);
        }
    return out;
}

template <typename T>
double frobenius_norm_sq(const Matrix<T> &m)
{
    double acc = 0.0;
    for (const auto &x : m.entries())
        acc += std::norm(x);
    return acc;
}

template <typename T>
double frobenius_norm(const Matrix<T> &m)
{
    return std::sqrt(frobenius_norm_sq(m));
}

// Column vector helpers (std::vector<cplx> as column).
using ComplexVector = std::vector<cplx>;

inline double norm2(std::span<const cplx> v)
{
    double acc = 0.0;
    for (const auto &x : v)
        acc += std::norm(x);
    return std::sqrt(acc);
}

inline ComplexVector apply(const ComplexMatrix &m, std::span<const cplx> v)
{
    ComplexVector out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
    {
        cplx acc = 0.0;
        const auto row = m.row(r);
        for (std::size_t c = 0; c < m.cols(); ++c)
            acc += row[c] * v[c];
        out[r] = acc;
    }
    return out;
}

// m^H v
inline ComplexVector apply_adjoint(const ComplexMatrix &m, std::span<const cplx> v)
{
    ComplexVector out(m.cols(), cplx{0.0, 0.0});
    for (std::size_t r = 0; r < m.rows(); ++r)
    {
        const auto row = m.row(r);
        for (std::size_t c = 0; c < m.cols(); ++c)
            out[c] += std::conj(row[c]) * v[r];
    }
    return out;
}

// s * u * v^H
inline ComplexMatrix outer(cplx s, std::span<const cplx> u, std::span<const cplx> v)
{
    ComplexMatrix out(u.size(), v.size());
    for (std::size_t r = 0; r < u.size(); ++r)
        for (std::size_t c = 0; c < v.size(); ++c)
            out(r, c) = s * u[r] * std::conj(v[c]);
    return out;
}

} // namespace tsdce::numkit

#endif
