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

#ifndef TSDCE_NUMKIT_ACF_HPP
#define TSDCE_NUMKIT_ACF_HPP

#include "tsdce/numkit/matrix.hpp"

namespace tsdce::numkit
{

// Unbiased 2D sample autocorrelation over non-negative lags:
//   R[m,n] = 1/((rows-m)(cols-n)) sum_{mu,nu} conj(M[mu,nu]) M[mu+m, nu+n]
// Exact on a pure cisoid: R = |A|^2 exp(j(w1 m + w2 n)).
inline ComplexMatrix acf2d_unbiased(const ComplexMatrix &m)
{
    const std::size_t nr = m.rows(), nt = m.cols();
    if (nr < 2 || nt < 2)
        throw std::invalid_argument("acf2d_unbiased: input must be at least 2x2.");

    ComplexMatrix conj_m(nr, nt);
    for (std::size_t i = 0; i < m.size(); ++i)
        conj_m.entries()[i] = std::conj(m.entries()[i]);

    ComplexMatrix r(nr, nt);
    for (std::size_t lm = 0; lm < nr; ++lm)
        for (std::size_t ln = 0; ln < nt; ++ln)
        {
            cplx acc = 0.0;
            for (std::size_t mu = 0; mu + lm < nr; ++mu)
            {
                const cplx *a = conj_m.row(mu).data();
                const cplx *b = m.row(mu + lm).data() + ln;
                for (std::size_t nu = 0; nu + ln < nt; ++nu)
                    acc += a[nu] * b[nu];
            }
            r(lm, ln) = acc / static_cast<double>((nr - lm) * (nt - ln));
        }
    // Zero lag is a mean of |.|^2; drop the round-off imaginary part.
    r(0, 0) = r(0, 0).real();
    return r;
}

} // namespace tsdce::numkit

#endif
