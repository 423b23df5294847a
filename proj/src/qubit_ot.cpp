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

#include "qct/qubit_ot.hpp"

#include <cmath>
#include <limits>

namespace qct::ot {

namespace {

constexpr double kLn2 = 0.6931471805599453094172321;
constexpr double kTightTol = 1e-8;

struct CaseResult {
    double n = 0.0;
    double s = 0.0;
    double d = 0.0;
};

// Linear objective value: distortion at a candidate (n, s).
double objective(const rd::SystemParams &p, double n, double s) {
    const double bra1 = (1.0 - p.rho1) * (1.0 - p.rho1) + p.abs_rho2 * p.abs_rho2;
    return 1.0 - p.q0 * p.g3 - bra1 - p.a * n - p.b * s;
}

CaseResult solve_case3(const QubitState &rho, double q0, const rd::SystemParams &p, double sign) {
    const double det = rho.determinant();
    const double r2 = p.abs_rho2;
    const double r2sq = r2 * r2;
    const double one_minus_2rho1 = 1.0 - 2.0 * p.rho1;
    const double denom = 4.0 * r2sq + one_minus_2rho1 * one_minus_2rho1;
    double delta_prime = (q0 * (1.0 - q0) - det) * det;
    if (delta_prime < 0.0) {
        if (delta_prime < -1e-15) {
            throw NumericError("optimal_transport: negative case-3 discriminant; "
                               "case selection is inconsistent");
        }
        delta_prime = 0.0;
    }
    const double root = std::sqrt(delta_prime);
    CaseResult res;
    res.s = ((q0 - 2.0 * det) * r2 + sign * one_minus_2rho1 * root) / denom;
    res.n = (2.0 * q0 * r2sq - one_minus_2rho1 * (p.rho1 * q0 - det) + sign * 2.0 * r2 * root) /
            denom;
    res.d = objective(p, res.n, res.s);
    return res;
}

}  // namespace

CaseSelection case_select(const QubitState &rho, double q0) {
    if (q0 <= 0.0 || q0 >= 1.0) {
        throw std::domain_error("case_select: q0 must lie strictly inside (0, 1)");
    }
    const double one_minus = 1.0 - 4.0 * std::norm(rho.rho2);
    if (one_minus <= 0.0) {
        throw PureStateError("case_select: 1 - 4|rho2|^2 vanished (pure state)");
    }
    const double det = rho.determinant();
    const double q = (rho.rho1 - 0.5) / std::sqrt(one_minus);
    if (q <= det / (1.0 - q0) - 0.5) {
        return {1, q};
    }
    if (q >= 0.5 - det / q0) {
        return {2, q};
    }
    return {3, q};
}

OTSolution optimal_transport(const QubitState &rho, double q0) {
    if (q0 < 0.0 || q0 > 1.0) {
        throw std::domain_error("optimal_transport: q0 outside [0, 1]");
    }
    OTSolution sol;
    if (rho.is_pure() || q0 <= 0.0 || q0 >= 1.0) {
        // single feasible point N = q0 rho
        sol.degenerate = true;
        sol.case_id = 0;
        sol.Q = std::numeric_limits<double>::quiet_NaN();
        sol.n = q0 * rho.rho1;
        sol.s = q0 * std::abs(rho.rho2);
        sol.D_OT = rd::zero_crossing(rho, q0);
        const rd::NCandidate cand{sol.n, sol.s, q0};
        sol.disc1_tight = std::abs(rd::e1(cand) - q0 / 2.0) <= kTightTol;
        sol.disc2_tight = std::abs(rd::e2(cand, rho) - (1.0 - q0) / 2.0) <= kTightTol;
        return sol;
    }

    const CaseSelection sel = case_select(rho, q0);
    const rd::SystemParams p = rd::system_params(rho, q0, /*D=*/0.0);
    const double r2 = p.abs_rho2;
    const double sq = std::sqrt(1.0 - 4.0 * r2 * r2);
    const double det = rho.determinant();

    sol.case_id = sel.case_id;
    sol.Q = sel.Q;
    switch (sel.case_id) {
        case 1: {
            sol.D_OT = q0 * (1.0 - p.rho1) + det + 0.5 * (1.0 - q0) * (1.0 - sq);
            sol.s = p.b / sq * (1.0 - q0) / 2.0 + r2;
            sol.n = (p.a / sq - 1.0) * (1.0 - q0) / 2.0 + p.rho1;
            sol.lambda2 = sq / (1.0 - q0);
            break;
        }
        case 2: {
            sol.D_OT = (1.0 - q0) * p.rho1 + det + 0.5 * q0 * (1.0 - sq);
            sol.s = p.b / sq * q0 / 2.0;
            sol.n = (p.a / sq + 1.0) * q0 / 2.0;
            sol.lambda1 = sq / q0;
            break;
        }
        case 3: {
            if (std::abs(p.a - p.b) <= 1e-15) {
                // sign undefined at a == b: keep the feasible branch with the
                // smaller objective
                const CaseResult plus = solve_case3(rho, q0, p, 1.0);
                const CaseResult minus = solve_case3(rho, q0, p, -1.0);
                const bool plus_ok =
                    rd::candidate_feasible(rd::NCandidate{plus.n, plus.s, q0}, rho, 1e-9);
                const bool minus_ok =
                    rd::candidate_feasible(rd::NCandidate{minus.n, minus.s, q0}, rho, 1e-9);
                const CaseResult &pick =
                    (plus_ok && (!minus_ok || plus.d <= minus.d)) ? plus : minus;
                sol.n = pick.n;
                sol.s = pick.s;
                sol.D_OT = pick.d;
                sol.sign_tie = true;
            } else {
                const CaseResult res = solve_case3(rho, q0, p, p.a > p.b ? 1.0 : -1.0);
                sol.n = res.n;
                sol.s = res.s;
                sol.D_OT = res.d;
            }
            // stationarity: grad f0 = lambda1 grad f1 + lambda2 grad f2
            const double g1n = 2.0 * (sol.n - q0 / 2.0);
            const double g1s = 2.0 * sol.s;
            const double g2n = 2.0 * (sol.n - p.rho1 + (1.0 - q0) / 2.0);
            const double g2s = 2.0 * (sol.s - r2);
            const double den = g1n * g2s - g1s * g2n;
            if (std::abs(den) > 1e-300) {
                sol.lambda1 = (p.a * g2s - p.b * g2n) / den;
                sol.lambda2 = (p.b * g1n - p.a * g1s) / den;
            }
            break;
        }
        default:
            throw NumericError("optimal_transport: unreachable case id");
    }

    const rd::NCandidate cand{sol.n, sol.s, q0};
    sol.disc1_tight = std::abs(rd::e1(cand) - q0 / 2.0) <= kTightTol;
    sol.disc2_tight = std::abs(rd::e2(cand, rho) - (1.0 - q0) / 2.0) <= kTightTol;
    return sol;
}

double min_rate_ot(const QubitState &rho, double q0) {
    const OTSolution sol = optimal_transport(rho, q0);
    if (sol.degenerate) {
        return 0.0;
    }
    const rd::NCandidate cand{sol.n, sol.s, q0};
    const double p1 = std::clamp(0.5 - rd::e1(cand) / q0, 0.0, 1.0);
    const double p2 = std::clamp(0.5 - rd::e2(cand, rho) / (1.0 - q0), 0.0, 1.0);
    const double r_nats = rho.entropy(LogBase::e) - q0 * binary_entropy(p1, LogBase::e) -
                          (1.0 - q0) * binary_entropy(p2, LogBase::e);
    return std::max(r_nats, 0.0) / kLn2;
}

}  // namespace qct::ot
