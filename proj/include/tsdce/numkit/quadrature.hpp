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

#ifndef TSDCE_NUMKIT_QUADRATURE_HPP
#define TSDCE_NUMKIT_QUADRATURE_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace tsdce::numkit
{

class QuadratureError : public std::runtime_error
{
public:
    QuadratureError(const std::string &what, double achieved) : std::runtime_error(what), achieved_(achieved) {}
    double achieved_tolerance() const noexcept { return achieved_; }

private:
    double achieved_;
};

struct QuadratureResult
{
    double value = 0.0;
    double error = 0.0; // accumulated Richardson error estimate
};

namespace detail
{

template <typename F>
double simpson_step(F &f, double a, double fa, double b, double fb, double m, double fm, double whole, double tol,
                    int depth, double &err, bool &exhausted)
{
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol || b - a < 1e-15)
    {
        err += std::abs(delta) / 15.0;
        return left + right + delta / 15.0;
    }
    if (depth <= 0)
    {
        exhausted = true;
        err += std::abs(delta) / 15.0;
        return left + right + delta / 15.0;
    }
    return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1, err, exhausted) +
           simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1, err, exhausted);
}

} // namespace detail

// Adaptive Simpson on [a, b] with absolute tolerance tol, started from `panels`
// equal sub-intervals so narrow features are not missed by the first estimate.
// Throws QuadratureError if the recursion depth runs out before tol is met.
template <typename F>
QuadratureResult adaptive_simpson(F &&f, double a, double b, double tol = 1e-8, int panels = 16, int max_depth = 40)
{
    QuadratureResult res;
    bool exhausted = false;
    const double h = (b - a) / panels;
    const double panel_tol = tol / panels;
    for (int i = 0; i < panels; ++i)
    {
        const double lo = a + i * h, hi = (i + 1 == panels) ? b : a + (i + 1) * h;
        const double flo = f(lo), fhi = f(hi), m = 0.5 * (lo + hi), fm = f(m);
        const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fm + fhi);
        res.value += detail::simpson_step(f, lo, flo, hi, fhi, m, fm, whole, panel_tol, max_depth, res.error, exhausted);
    }
    if (exhausted && res.error > tol)
        throw QuadratureError("adaptive_simpson: tolerance " + std::to_string(tol) + " not reached", res.error);
    return res;
}

} // namespace tsdce::numkit

#endif
