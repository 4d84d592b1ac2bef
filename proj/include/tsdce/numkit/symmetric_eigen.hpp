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

#ifndef TSDCE_NUMKIT_SYMMETRIC_EIGEN_HPP
#define TSDCE_NUMKIT_SYMMETRIC_EIGEN_HPP

#include "tsdce/numkit/matrix.hpp"

#include <numeric>

namespace tsdce::numkit
{

struct SymmetricEigen
{
    std::vector<double> values; // descending
    RealMatrix vectors;         // column k pairs with values[k]
};

// Cyclic Jacobi for small real symmetric matrices (Fisher matrices are 4L x 4L).
inline SymmetricEigen symmetric_eigen(const RealMatrix &a_in, double tol = 1e-15, std::size_t max_sweeps = 100)
{
    if (a_in.rows() != a_in.cols())
        throw std::invalid_argument("symmetric_eigen: matrix must be square.");
    const std::size_t n = a_in.rows();
    RealMatrix a = a_in;
    RealMatrix v = RealMatrix::identity(n);

    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep)
    {
        double off = 0.0, diag = 0.0;
        for (std::size_t i = 0; i < n; ++i)
        {
            diag += a(i, i) * a(i, i);
            for (std::size_t j = i + 1; j < n; ++j)
                off += a(i, j) * a(i, j);
        }
        if (off <= tol * tol * diag || off == 0.0)
            break;

        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
            {
                if (a(p, q) == 0.0)
                    continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k)
                {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k)
                {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k)
                {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    SymmetricEigen out{std::vector<double>(n), RealMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k)
    {
        out.values[k] = a(order[k], order[k]);
        for (std::size_t r = 0; r < n; ++r)
            out.vectors(r, k) = v(r, order[k]);
    }
    return out;
}

} // namespace tsdce::numkit

#endif
