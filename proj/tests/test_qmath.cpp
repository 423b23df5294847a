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

#include <cmath>

#include "doctest.h"
#include "qct/qmath.hpp"
#include "test_util.hpp"

using namespace qct;
using testutil::frob_diff;

namespace {

const QubitState kRhoB{0.5, cplx{0.1319, -0.0361}};
const QubitState kRhoD{0.5, cplx{-0.1399, -0.3872}};

HermitianOp plus_projector() {
    CMat m(2);
    m.at(0, 0) = 0.5;
    m.at(0, 1) = 0.5;
    m.at(1, 0) = 0.5;
    m.at(1, 1) = 0.5;
    return HermitianOp(std::move(m));
}

}  // namespace

TEST_CASE("validate_density basics") {
    const auto mixed = validate_density(HermitianOp::diagonal({0.5, 0.5}));
    CHECK(mixed.valid);
    CHECK(mixed.min_eigenvalue == doctest::Approx(0.5));

    const auto bad = validate_density(HermitianOp::diagonal({1.2, -0.2}));
    CHECK_FALSE(bad.valid);
    CHECK(bad.min_eigenvalue == doctest::Approx(-0.2));
    CHECK(bad.trace_deviation <= 1e-12);

    CHECK(validate_density(kRhoB.to_op()).valid);
}

TEST_CASE("hermiticity is enforced at construction") {
    CMat m(2);
    m.at(0, 1) = cplx{0.3, 0.0};
    m.at(1, 0) = cplx{0.1, 0.0};
    CHECK_THROWS_AS(HermitianOp{std::move(m)}, std::invalid_argument);
}

TEST_CASE("eig_hermitian closed form in dimension 2") {
    const auto ident = eig_hermitian(HermitianOp::identity(2));
    CHECK(ident.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(ident.eigenvalues[1] == doctest::Approx(1.0));

    const auto diag = eig_hermitian(HermitianOp::diagonal({0.3, 0.7}));
    CHECK(diag.eigenvalues[0] == doctest::Approx(0.3));
    CHECK(diag.eigenvalues[1] == doctest::Approx(0.7));

    const auto plus = eig_hermitian(plus_projector());
    CHECK(plus.eigenvalues[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(plus.eigenvalues[1] == doctest::Approx(1.0));
}

TEST_CASE("eig_hermitian reconstructs random operators") {
    std::mt19937_64 rng(7);
    for (int dim : {2, 3, 4, 5}) {
        for (int rep = 0; rep < 20; ++rep) {
            const HermitianOp h = testutil::random_hermitian(rng, dim);
            const Spectrum s = eig_hermitian(h);
            CMat recon(dim);
            for (int r = 0; r < dim; ++r) {
                for (int c = 0; c < dim; ++c) {
                    cplx acc = 0.0;
                    for (int k = 0; k < dim; ++k) {
                        acc += s.eigenvectors.at(r, k) * s.eigenvalues[(std::size_t)k] *
                               std::conj(s.eigenvectors.at(c, k));
                    }
                    recon.at(r, c) = acc;
                }
            }
            CHECK((recon - h.mat()).frobenius_norm() <=
                  1e-10 * std::max(1.0, h.mat().frobenius_norm()));
            // orthonormal columns
            const CMat gram = s.eigenvectors.adjoint() * s.eigenvectors;
            CHECK((gram - CMat::identity(dim)).frobenius_norm() <= 1e-12);
            for (std::size_t i = 1; i < s.eigenvalues.size(); ++i) {
                CHECK(s.eigenvalues[i] >= s.eigenvalues[i - 1]);
            }
        }
    }
}

TEST_CASE("qubit eigenvalues follow the radial closed form") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 50; ++rep) {
        const QubitState st = testutil::random_state(rng, 0.0);
        const Spectrum s = eig_hermitian(st.to_op());
        const double r = st.bloch_radius();
        CHECK(std::abs(s.eigenvalues[0] - (0.5 - r)) <= 1e-12);
        CHECK(std::abs(s.eigenvalues[1] - (0.5 + r)) <= 1e-12);
    }
}

TEST_CASE("sqrt_psd examples") {
    CHECK(frob_diff(sqrt_psd(0.25 * HermitianOp::identity(2)), 0.5 * HermitianOp::identity(2)) <=
          1e-12);
    CHECK(frob_diff(sqrt_psd(HermitianOp::diagonal({0.25, 0.81})),
                    HermitianOp::diagonal({0.5, 0.9})) <= 1e-12);
    // rank-1 projectors are their own square root
    CHECK(frob_diff(sqrt_psd(plus_projector()), plus_projector()) <= 1e-9);
    CHECK_THROWS_AS(sqrt_psd(HermitianOp::diagonal({1.0, -0.5})), std::domain_error);
}

TEST_CASE("sqrt_psd squares back to the state") {
    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 50; ++rep) {
        const HermitianOp rho = testutil::random_state(rng, 0.0).to_op();
        const HermitianOp root = sqrt_psd(rho);
        CHECK(frob_diff(sandwich(root, HermitianOp::identity(2)), rho) <= 1e-9);
    }
    for (int rep = 0; rep < 10; ++rep) {
        const HermitianOp rho = testutil::random_density(rng, 4);
        const HermitianOp root = sqrt_psd(rho);
        CHECK((root.mat() * root.mat() - rho.mat()).frobenius_norm() <= 1e-9);
    }
}

TEST_CASE("entropy examples and properties") {
    CHECK(von_neumann_entropy(0.5 * HermitianOp::identity(2), LogBase::two) ==
          doctest::Approx(1.0));
    CHECK(von_neumann_entropy(HermitianOp::basis_projector(2, 0), LogBase::two) ==
          doctest::Approx(0.0));
    CHECK(von_neumann_entropy(HermitianOp::diagonal({0.25, 0.75}), LogBase::two) ==
          doctest::Approx(0.811278124459).epsilon(1e-10));

    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 25; ++rep) {
        const HermitianOp rho = testutil::random_state(rng, 0.0).to_op();
        // unitary invariance
        const CMat u = testutil::random_unitary(rng, 2);
        CMat rotated = u * rho.mat() * u.adjoint();
        for (int r = 0; r < 2; ++r) {
            rotated.at(r, r) = rotated.at(r, r).real();
        }
        const cplx avg = 0.5 * (rotated.at(0, 1) + std::conj(rotated.at(1, 0)));
        rotated.at(0, 1) = avg;
        rotated.at(1, 0) = std::conj(avg);
        const HermitianOp rot(std::move(rotated));
        CHECK(std::abs(von_neumann_entropy(rot, LogBase::e) -
                       von_neumann_entropy(rho, LogBase::e)) <= 1e-10);
        // base conversion
        CHECK(std::abs(von_neumann_entropy(rho, LogBase::e) -
                       std::log(2.0) * von_neumann_entropy(rho, LogBase::two)) <= 1e-12);
    }
}

TEST_CASE("psd_leq ordering") {
    const HermitianOp rho = kRhoB.to_op();
    CHECK(psd_leq(HermitianOp::zero(2), rho));
    CHECK(psd_leq(rho, rho));
    CHECK_FALSE(psd_leq(HermitianOp::diagonal({0.6, 0.0}), HermitianOp::diagonal({0.5, 0.5})));
    CHECK_THROWS_AS(psd_leq(HermitianOp::identity(2), HermitianOp::identity(3)),
                    std::invalid_argument);
}

TEST_CASE("purity of the worked examples") {
    CHECK(purity(HermitianOp::diagonal({0.5, 0.5})) == doctest::Approx(0.5));
    CHECK(std::abs(purity(kRhoB.to_op()) - 0.5374) <= 5e-5);
    CHECK(std::abs(purity(kRhoD.to_op()) - 0.8390) <= 5e-5);
}

TEST_CASE("qubit state invariants") {
    CHECK_THROWS_AS(QubitState(0.5, cplx{0.6, 0.0}), std::domain_error);
    CHECK_THROWS_AS(QubitState(1.4, cplx{0.0, 0.0}), std::domain_error);
    const QubitState pure(1.0, cplx{0.0, 0.0});
    CHECK(pure.is_pure());
    CHECK(pure.entropy(LogBase::two) == doctest::Approx(0.0));
    CHECK(kRhoB.purity() == doctest::Approx(purity(kRhoB.to_op())));
}
