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

#ifndef TSDCE_NUMKIT_SVD_HPP
#define TSDCE_NUMKIT_SVD_HPP

#include "tsdce/numkit/matrix.hpp"

#include <stdexcept>

namespace tsdce::numkit
{

struct SingularTriplet
{
    double s = 0.0;
    ComplexVector u; // unit, rows()
    ComplexVector v; // unit, cols()

    ComplexMatrix rank_one() const { return outer(s, u, v); }
};

class ConvergenceError : public std::runtime_error
{
public:
    ConvergenceError(const std::string &what, SingularTriplet last, double residual)
        : std::runtime_error(what), last_(std::move(last)), residual_(residual)
    {
    }

    const SingularTriplet &last_iterate() const noexcept { return last_; }
    double residual() const noexcept { return residual_; }

private:
    SingularTriplet last_;
    double residual_;
};

struct PowerIterationOptions
{
    double tol = 1e-12;
    std::size_t max_iter = 10000;
};

namespace detail
{

inline void normalize(ComplexVector &x, double n)
{
    for (auto &e : x)
        e /= n;
}

// First entry of u that is non-negligible gets zero phase; the conjugate
// rotation goes into v so that s u v^H is unchanged.
inline void fix_phase(SingularTriplet &t)
{
    double umax = 0.0;
    for (const auto &e : t.u)
        umax = std::max(umax, std::abs(e));
    for (const auto &e : t.u)
    {
        if (std::abs(e) > 1e-12 * umax)
        {
            const cplx rot = std::conj(e) / std::abs(e);
            for (auto &x : t.u)
                x *= rot;
            for (auto &x : t.v)
                x *= rot;
            return;
        }
    }
}

} // namespace detail

// Leading singular triplet by power iteration on M^H M.
// Converged when ||M^H u - s v|| <= tol ||M||_F with u = M v / ||M v||.
inline SingularTriplet dominant_singular_triplet(const ComplexMatrix &m, PowerIterationOptions opts = {})
{
    if (!(opts.tol > 0.0))
        throw std::invalid_argument("dominant_singular_triplet: tol must be positive.");

    const double fro = frobenius_norm(m);
    SingularTriplet t;
    if (fro == 0.0)
    {
        t.u.assign(m.rows(), cplx{});
        t.v.assign(m.cols(), cplx{});
        t.u[0] = 1.0;
        t.v[0] = 1.0;
        return t;
    }

    // Start from the conjugated row of largest energy: never orthogonal to the
    // leading right singular vector unless that row is zero.
    std::size_t best = 0;
    double best_e = -1.0;
    for (std::size_t r = 0; r < m.rows(); ++r)
    {
        double e = 0.0;
        for (const auto &x : m.row(r))
            e += std::norm(x);
        if (e > best_e)
        {
            best_e = e;
            best = r;
        }
    }
    t.v.resize(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c)
        t.v[c] = std::conj(m(best, c));
    detail::normalize(t.v, norm2(t.v));

    double residual = 0.0;
    for (std::size_t it = 0; it < opts.max_iter; ++it)
    {
        t.u = numkit::apply(m, t.v);
        t.s = norm2(t.u);
        detail::normalize(t.u, t.s);

        auto w = numkit::apply_adjoint(m, t.u);
        double r2 = 0.0;
        for (std::size_t c = 0; c < w.size(); ++c)
            r2 += std::norm(w[c] - t.s * t.v[c]);
        residual = std::sqrt(r2);

        if (residual <= opts.tol * fro)
        {
            detail::fix_phase(t);
            return t;
        }
        detail::normalize(w, norm2(w));
        t.v = std::move(w);
    }
    detail::fix_phase(t);
    throw ConvergenceError("dominant_singular_triplet: no convergence after " + std::to_string(opts.max_iter) +
                               " iterations",
                           std::move(t), residual);
}

} // namespace tsdce::numkit

#endif
