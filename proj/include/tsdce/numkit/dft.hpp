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

#ifndef TSDCE_NUMKIT_DFT_HPP
#define TSDCE_NUMKIT_DFT_HPP

#include "tsdce/numkit/matrix.hpp"

#include <bit>
#include <numbers>
#include <vector>

namespace tsdce::numkit
{

enum class DftDirection
{
    forward,
    inverse
};

namespace detail
{

// exp(sign * j 2 pi k / n), k = 0..n-1
inline std::vector<cplx> twiddles(std::size_t n, double sign)
{
    std::vector<cplx> w(n);
    for (std::size_t k = 0; k < n; ++k)
        w[k] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
    return w;
}

} // namespace detail

// 2D DFT by direct separable sums.
//   forward: out[q,p] = sum_{m,n} M[m,n] exp(-j2pi(qm/Q + pn/P))      (no scaling)
//   inverse: out[m,n] = 1/(QP) sum_{q,p} M[q,p] exp(+j2pi(qm/Q + pn/P))
// With this pair, the inverse of i.i.d. noise of variance s has element variance s/(QP).
inline ComplexMatrix dft2d(const ComplexMatrix &m, DftDirection dir)
{
    const std::size_t rows = m.rows(), cols = m.cols();
    const double sign = dir == DftDirection::forward ? -1.0 : 1.0;
    const auto wr = detail::twiddles(rows, sign);
    const auto wc = detail::twiddles(cols, sign);

    // Along columns index (n -> p) for every row.
    ComplexMatrix tmp(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
    {
        const auto in = m.row(r);
        auto out = tmp.row(r);
        for (std::size_t p = 0; p < cols; ++p)
        {
            cplx acc = 0.0;
            std::size_t idx = 0;
            for (std::size_t n = 0; n < cols; ++n)
            {
                acc += in[n] * wc[idx];
                idx += p;
                if (idx >= cols)
                    idx -= cols;
            }
            out[p] = acc;
        }
    }

    ComplexMatrix out(rows, cols);
    for (std::size_t q = 0; q < rows; ++q)
    {
        std::size_t idx = 0;
        for (std::size_t r = 0; r < rows; ++r)
        {
            const cplx w = wr[idx];
            const auto in = tmp.row(r);
            auto dst = out.row(q);
            for (std::size_t c = 0; c < cols; ++c)
                dst[c] += in[c] * w;
            idx += q;
            if (idx >= rows)
                idx -= rows;
        }
    }

    if (dir == DftDirection::inverse)
        out *= 1.0 / static_cast<double>(rows * cols);
    return out;
}

// In-place iterative radix-2 FFT, forward sign, no scaling. Size must be a power of two.
inline void fft_inplace(std::span<cplx> x)
{
    const std::size_t n = x.size();
    if (!std::has_single_bit(n))
        throw std::invalid_argument("fft_inplace: length must be a power of two.");

    for (std::size_t i = 1, j = 0; i < n; ++i)
    {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(x[i], x[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1)
    {
        const cplx wlen = std::polar(1.0, -2.0 * std::numbers::pi / static_cast<double>(len));
        for (std::size_t i = 0; i < n; i += len)
        {
            cplx w = 1.0;
            for (std::size_t k = 0; k < len / 2; ++k)
            {
                const cplx u = x[i + k];
                const cplx v = x[i + k + len / 2] * w;
                x[i + k] = u + v;
                x[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

// Forward 2D DFT of m zero-padded to n x n (n a power of two, n >= rows, cols).
inline ComplexMatrix zero_padded_fft2d(const ComplexMatrix &m, std::size_t n)
{
    if (!std::has_single_bit(n) || n < m.rows() || n < m.cols())
        throw std::invalid_argument("zero_padded_fft2d: size must be a power of two covering the input.");

    // Rows first; only the first m.rows() rows are non-zero.
    ComplexMatrix out(n, n);
    for (std::size_t r = 0; r < m.rows(); ++r)
    {
        auto dst = out.row(r);
        std::copy(m.row(r).begin(), m.row(r).end(), dst.begin());
        fft_inplace(dst);
    }

    std::vector<cplx> col(n);
    for (std::size_t c = 0; c < n; ++c)
    {
        std::fill(col.begin(), col.end(), cplx{});
        for (std::size_t r = 0; r < m.rows(); ++r)
            col[r] = out(r, c);
        fft_inplace(col);
        for (std::size_t r = 0; r < n; ++r)
            out(r, c) = col[r];
    }
    return out;
}

} // namespace tsdce::numkit

#endif
