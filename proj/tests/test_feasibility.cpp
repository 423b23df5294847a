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
#include <random>

#include "doctest.h"
#include "qct/feasibility.hpp"
#include "qct/qubit_rd.hpp"
#include "test_util.hpp"

using namespace qct;
using namespace qct::feasibility;
using testutil::frob_diff;

namespace {

Povm projective_qubit() {
    return Povm({HermitianOp::basis_projector(2, 0), HermitianOp::basis_projector(2, 1)});
}

Povm identity_scaled(int dim, double q0) {
    return Povm({q0 * HermitianOp::identity(dim), (1.0 - q0) * HermitianOp::identity(dim)});
}

/// Random POVM from shrunk random density parts plus the complement.
Povm random_povm(std::mt19937_64 &rng, int dim, int outcomes) {
    std::vector<HermitianOp> parts;
    HermitianOp acc = HermitianOp::zero(dim);
    for (int w = 0; w + 1 < outcomes; ++w) {
        HermitianOp m = (1.0 / outcomes) * testutil::random_density(rng, dim);
        parts.push_back(m);
        acc = acc + m;
    }
    parts.push_back(HermitianOp::identity(dim) - acc);
    return Povm(std::move(parts));
}

double entropy_of_pmf(const std::vector<double> &p) {
    double acc = 0.0;
    for (double v : p) {
        if (v > 0) {
            acc -= v * std::log2(v);
        }
    }
    return acc;
}

}  // namespace

TEST_CASE("povm validation rejects broken collections") {
    CHECK_THROWS_AS(Povm({HermitianOp::diagonal({0.4, 0.4}), HermitianOp::diagonal({0.4, 0.4})}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Povm({HermitianOp::diagonal({1.5, 0.5}), HermitianOp::diagonal({-0.5, 0.5})}),
                    std::invalid_argument);
}

TEST_CASE("post-measurement ensemble") {
    const HermitianOp rho = QubitState(0.5, cplx{0.1319, -0.0361}).to_op();

    SUBCASE("identity-scaled measurements leave the state intact") {
        const Ensemble ens = post_measurement_ensemble(rho, identity_scaled(2, 0.3));
        CHECK(ens.probs[0] == doctest::Approx(0.3));
        CHECK(ens.probs[1] == doctest::Approx(0.7));
        CHECK(frob_diff(ens.states[0], rho) <= 1e-12);
        CHECK(frob_diff(ens.states[1], rho) <= 1e-12);
    }

    SUBCASE("projective measurement of the maximally mixed state") {
        const Ensemble ens =
            post_measurement_ensemble(0.5 * HermitianOp::identity(2), projective_qubit());
        CHECK(ens.probs[0] == doctest::Approx(0.5));
        CHECK(ens.probs[1] == doctest::Approx(0.5));
        CHECK(frob_diff(ens.states[0], HermitianOp::basis_projector(2, 0)) <= 1e-12);
        CHECK(frob_diff(ens.states[1], HermitianOp::basis_projector(2, 1)) <= 1e-12);
    }

    SUBCASE("barycenter recovers the source") {
        std::mt19937_64 rng(23);
        for (int rep = 0; rep < 20; ++rep) {
            const HermitianOp state = testutil::random_density(rng, 3);
            const Povm povm = random_povm(rng, 3, 4);
            const Ensemble ens = post_measurement_ensemble(state, povm);
            HermitianOp bary = HermitianOp::zero(3);
            for (std::size_t w = 0; w < ens.probs.size(); ++w) {
                bary = bary + ens.probs[w] * ens.states[w];
            }
            CHECK(frob_diff(bary, state) <= 1e-9);
        }
    }

    SUBCASE("zero-probability outcomes stay aligned and flagged") {
        const Ensemble ens =
            post_measurement_ensemble(HermitianOp::basis_projector(2, 0), projective_qubit());
        CHECK_FALSE(ens.degenerate[0]);
        CHECK(ens.degenerate[1]);
        CHECK(ens.probs[1] == doctest::Approx(0.0));
    }
}

TEST_CASE("holevo information") {
    const HermitianOp mixed = 0.5 * HermitianOp::identity(2);
    CHECK(holevo_information(mixed, identity_scaled(2, 0.5), LogBase::two) ==
          doctest::Approx(0.0));
    CHECK(holevo_information(mixed, projective_qubit(), LogBase::two) == doctest::Approx(1.0));

    std::mt19937_64 rng(29);
    const HermitianOp pure = HermitianOp::basis_projector(2, 0);
    for (int rep = 0; rep < 5; ++rep) {
        CHECK(holevo_information(pure, random_povm(rng, 2, 3), LogBase::two) ==
              doctest::Approx(0.0).epsilon(1e-9));
    }
}

TEST_CASE("classical mutual information") {
    CHECK(classical_mutual_information({0.5, 0.5}, {{1.0, 0.0}, {0.0, 1.0}}, LogBase::two) ==
          doctest::Approx(1.0));
    CHECK(classical_mutual_information({0.3, 0.7}, {{0.2, 0.8}, {0.2, 0.8}}, LogBase::two) ==
          doctest::Approx(0.0));
    const double expected = 1.0 - binary_entropy(0.1, LogBase::two);
    CHECK(classical_mutual_information({0.5, 0.5}, {{0.9, 0.1}, {0.1, 0.9}}, LogBase::two) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK_THROWS_AS(
        classical_mutual_information({0.5, 0.6}, {{1.0, 0.0}, {0.0, 1.0}}, LogBase::two),
        std::invalid_argument);
}

TEST_CASE("output marginal") {
    const HermitianOp rho = QubitState(0.4, cplx{0.1, 0.2}).to_op();
    const Povm povm = identity_scaled(2, 0.25);

    const auto ident = output_marginal(rho, povm, {{1.0, 0.0}, {0.0, 1.0}});
    CHECK(ident[0] == doctest::Approx(0.25));
    CHECK(ident[1] == doctest::Approx(0.75));

    const auto constant = output_marginal(rho, povm, {{0.6, 0.4}, {0.6, 0.4}});
    CHECK(constant[0] == doctest::Approx(0.6));
    CHECK(constant[1] == doctest::Approx(0.4));

    // solved measurement with identity post-processing hits the target pmf
    const QubitState st(0.5, cplx{0.1319, -0.0361});
    const rd::RDPoint pt = rd::rate_at(st, 0.5, 0.6);
    const Povm solved = rd::povm_at(st, 0.5, pt);
    const auto q = output_marginal(st.to_op(), solved, {{1.0, 0.0}, {0.0, 1.0}});
    CHECK(std::abs(q[0] - 0.5) <= 1e-12);
    CHECK(std::abs(q[1] - 0.5) <= 1e-12);
}

TEST_CASE("qc distortion") {
    const HermitianOp mixed = 0.5 * HermitianOp::identity(2);
    const Povm povm = identity_scaled(2, 0.5);

    SUBCASE("identity and zero observables") {
        const std::vector<HermitianOp> ident{HermitianOp::identity(2), HermitianOp::identity(2)};
        CHECK(qc_distortion(mixed, povm, ident) == doctest::Approx(1.0));
        const std::vector<HermitianOp> zero{HermitianOp::zero(2), HermitianOp::zero(2)};
        CHECK(qc_distortion(mixed, povm, zero) == doctest::Approx(0.0));
    }

    SUBCASE("entanglement fidelity of the uninformative measurement") {
        CHECK(qc_distortion(mixed, povm, entanglement_fidelity_map(mixed)) ==
              doctest::Approx(0.75));
    }

    SUBCASE("linear in the observables") {
        std::mt19937_64 rng(31);
        const HermitianOp rho = testutil::random_state(rng, 0.01).to_op();
        const Povm p = random_povm(rng, 2, 2);
        std::vector<HermitianOp> map = entanglement_fidelity_map(rho);
        const double base = qc_distortion(rho, p, map);
        std::vector<HermitianOp> scaled;
        for (const auto &m : map) {
            scaled.push_back(3.25 * m);
        }
        CHECK(std::abs(qc_distortion(rho, p, scaled) - 3.25 * base) <= 1e-12);
    }

    SUBCASE("label mismatch raises") {
        CHECK_THROWS_AS(qc_distortion(mixed, povm, {HermitianOp::identity(2)}),
                        std::invalid_argument);
    }
}

TEST_CASE("data processing and pushforward properties") {
    std::mt19937_64 rng(37);
    for (int rep = 0; rep < 15; ++rep) {
        const HermitianOp rho = testutil::random_state(rng, 0.01).to_op();
        const Povm povm = random_povm(rng, 2, 3);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        Channel channel;
        for (int w = 0; w < 3; ++w) {
            const double r = uni(rng);
            channel.push_back({r, 1.0 - r});
        }

        // composing with a channel never increases the Holevo information
        const Povm composed = compose_through_channel(povm, channel);
        CHECK(holevo_information(rho, composed, LogBase::two) <=
              holevo_information(rho, povm, LogBase::two) + 1e-9);

        std::vector<double> p_w;
        for (int w = 0; w < povm.size(); ++w) {
            p_w.push_back(trace_product_real(povm.element(w), rho));
        }
        // I(W;X) bounded by both marginal entropies
        const double mi = classical_mutual_information(p_w, channel, LogBase::two);
        const auto qx = output_marginal(rho, povm, channel);
        CHECK(mi <= entropy_of_pmf(p_w) + 1e-10);
        CHECK(mi <= entropy_of_pmf(qx) + 1e-10);

        // marginal of the composed POVM is the classical pushforward
        const auto via_composed = output_marginal(rho, composed, {{1.0, 0.0}, {0.0, 1.0}});
        CHECK(std::abs(via_composed[0] - qx[0]) <= 1e-14);
        CHECK(std::abs(via_composed[1] - qx[1]) <= 1e-14);
    }
}

TEST_CASE("check_feasible") {
    const QubitState st(0.5, cplx{0.1319, -0.0361});
    const HermitianOp rho = st.to_op();
    const Channel ident{{1.0, 0.0}, {0.0, 1.0}};

    SUBCASE("solved point is feasible with matching information") {
        const rd::RDPoint pt = rd::rate_at(st, 0.5, 0.6);
        QCSystem sys(rho, rd::povm_at(st, 0.5, pt), ident, {0.5, 0.5},
                     entanglement_fidelity_map(rho));
        const FeasibilityReport rep = check_feasible(sys, pt.D);
        CHECK(rep.feasible);
        CHECK(std::abs(rep.holevo_bits - pt.R_bits) <= 1e-8);
        CHECK(rep.marginal_gap <= 1e-9);
        CHECK(std::abs(rep.distortion - pt.D) <= 1e-8);
    }

    SUBCASE("uninformative measurement at high distortion") {
        const double d0 = rd::zero_crossing(st, 0.5);
        QCSystem sys(rho, identity_scaled(2, 0.5), ident, {0.5, 0.5},
                     entanglement_fidelity_map(rho));
        const FeasibilityReport rep = check_feasible(sys, d0 + 1e-6);
        CHECK(rep.feasible);
        CHECK(rep.holevo_bits == doctest::Approx(0.0));
        CHECK(rep.mutual_bits == doctest::Approx(0.0));
    }

    SUBCASE("marginal violations are flagged") {
        QCSystem sys(rho, identity_scaled(2, 0.5), ident, {0.6, 0.4},
                     entanglement_fidelity_map(rho));
        const FeasibilityReport rep = check_feasible(sys, 0.9);
        CHECK_FALSE(rep.feasible);
        CHECK_FALSE(rep.marginal_ok);
        CHECK(rep.marginal_gap == doctest::Approx(0.1));
    }

    SUBCASE("qutrit systems run through the general path") {
        std::mt19937_64 rng(41);
        const HermitianOp state = testutil::random_density(rng, 3);
        const Povm povm = random_povm(rng, 3, 3);
        Channel channel{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
        const auto qx = output_marginal(state, povm, channel);
        QCSystem sys(state, povm, channel, qx, entanglement_fidelity_map(state));
        const FeasibilityReport rep = check_feasible(sys, 1.0);
        CHECK(rep.feasible);
        CHECK(rep.marginal_gap <= 1e-12);
        CHECK(rep.cardinality_ok);
    }
}

TEST_CASE("cardinality bound") {
    CHECK(cardinality_bound(2, 2) == 7);
    CHECK(cardinality_bound(2, 3) == 8);
    CHECK(cardinality_bound(3, 2) == 12);
    CHECK_THROWS_AS(cardinality_bound(0, 2), std::invalid_argument);
}
