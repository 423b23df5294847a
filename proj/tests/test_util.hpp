// Copyright 2026 The qct developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "qct/qmath.hpp"

namespace testutil {

using qct::cplx;
using qct::CMat;
using qct::HermitianOp;
using qct::QubitState;

/// Mixed qubit state with det >= min_det, uniform-ish over the Bloch ball.
inline QubitState random_state(std::mt19937_64 &rng, double min_det) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (;;) {
        const double rho1 = 0.02 + 0.96 * uni(rng);
        const double cap = rho1 * (1.0 - rho1) - min_det;
        if (cap <= 0.0) {
            continue;
        }
        const double mag = std::sqrt(cap) * uni(rng);
        const double ang = 2.0 * M_PI * uni(rng);
        return QubitState(rho1, std::polar(mag, ang));
    }
}

inline HermitianOp random_hermitian(std::mt19937_64 &rng, int dim, double scale = 1.0) {
    std::normal_distribution<double> gauss(0.0, scale);
    CMat m(dim);
    for (int r = 0; r < dim; ++r) {
        m.at(r, r) = gauss(rng);
        for (int c = r + 1; c < dim; ++c) {
            const cplx v{gauss(rng), gauss(rng)};
            m.at(r, c) = v;
            m.at(c, r) = std::conj(v);
        }
    }
    return HermitianOp(std::move(m));
}

/// Random density operator: normalized G G† for Gaussian G.
inline HermitianOp random_density(std::mt19937_64 &rng, int dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMat g(dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            g.at(r, c) = cplx{gauss(rng), gauss(rng)};
        }
    }
    CMat prod = g * g.adjoint();
    const double tr = prod.trace().real();
    prod = cplx{1.0 / tr, 0.0} * prod;
    for (int r = 0; r < dim; ++r) {
        prod.at(r, r) = prod.at(r, r).real();
        for (int c = r + 1; c < dim; ++c) {
            const cplx avg = 0.5 * (prod.at(r, c) + std::conj(prod.at(c, r)));
            prod.at(r, c) = avg;
            prod.at(c, r) = std::conj(avg);
        }
    }
    return HermitianOp(std::move(prod));
}

/// Haar-ish random unitary from the eigenvectors of a random Hermitian.
inline CMat random_unitary(std::mt19937_64 &rng, int dim) {
    return qct::eig_hermitian(random_hermitian(rng, dim)).eigenvectors;
}

inline double frob_diff(const HermitianOp &a, const HermitianOp &b) {
    return (a.mat() - b.mat()).frobenius_norm();
}

}  // namespace testutil
