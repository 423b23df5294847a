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

/**
 * @file
 * Closed-form rate-distortion solver for a qubit source with a fixed
 * Bernoulli output, unlimited common randomness and entanglement-fidelity
 * distortion. The interior regime reduces to a one-dimensional strictly
 * convex problem on the distortion constraint line, solved by bracketed
 * bisection with a Newton polish.
 */

#pragma once

#include <span>
#include <vector>

#include "qct/feasibility.hpp"
#include "qct/qmath.hpp"

namespace qct::rd {

enum class Branch { zero_rate, interior, infeasible };

const char *to_string(Branch b);

/**
 * Fixed scalars of one (state, q0, D) instance: the G-matrix entries and the
 * distortion constraint line a n + b s + c = 0 in the (n, s) plane.
 */
struct SystemParams {
    double k = 0.0;                 // sqrt(det rho)
    double g1 = 0.0, g2 = 0.0, g3 = 0.0;
    double a = 0.0, b = 0.0, c = 0.0;
    double rho1 = 0.0;
    double abs_rho2 = 0.0;
    cplx phase_rho2{1.0, 0.0};
    double q0 = 0.0;
    double D = 0.0;
    double d_zero_rate = 0.0;       // distortion above which the rate is zero
};

/// Symmetric-form candidate N = [[n, s p], [s conj(p), q0 - n]] with p the
/// unit phase of rho2.
struct NCandidate {
    double n = 0.0;
    double s = 0.0;
    double q0 = 0.0;
};

struct RDPoint {
    double D = 0.0;
    double R_bits = 0.0;
    double n = 0.0;
    double s = 0.0;
    double kkt_residual = 0.0;
    Branch branch = Branch::interior;
};

struct RDCurve {
    double rho1 = 0.0;
    cplx rho2{0.0, 0.0};
    double q0 = 0.0;
    std::vector<RDPoint> points;
};

struct SolveOptions {
    /// Base of the logarithms inside the stationarity equation. The root is
    /// base-invariant (common positive factor); exposed for verification.
    LogBase stationarity_base = LogBase::e;
};

/// E1 = sqrt((n - q0/2)^2 + s^2): offset of the eigenvalues of N from q0/2.
double e1(const NCandidate &cand);

/// E2 = sqrt((n - rho1 + (1-q0)/2)^2 + (s - |rho2|)^2) for rho - N.
double e2(const NCandidate &cand, const QubitState &rho);

/// Distortion threshold where the rate reaches zero:
/// 1 - q0 <0|rho^2|0> - (1-q0) <1|rho^2|1>.
double zero_crossing(const QubitState &rho, double q0);

/// Constraint-line and G-matrix scalars for one instance.
SystemParams system_params(const QubitState &rho, double q0, double D);

/// Residual of the stationarity equation at a candidate (zero at optimum).
double stationarity_residual(const SystemParams &p, const NCandidate &cand,
                             LogBase base = LogBase::e);

/// Both disc constraints satisfied up to the boundary tolerance.
bool candidate_feasible(const NCandidate &cand, const QubitState &rho, double tolerance = 1e-10);

/**
 * Solves the stationarity system on the active distortion constraint for
 * 0 < D < zero_crossing(rho, q0). Throws InfeasibleDistortionError when
 * the constraint line misses the feasible region (D below the transport
 * minimum), PureStateError for singular states, and std::domain_error when
 * D lies in the zero-rate regime.
 */
NCandidate solve_transcendental(const QubitState &rho, double q0, double D,
                                const SolveOptions &opts = {});

/// Rate (bits) and optimal candidate at distortion D; zero-rate branch for
/// D >= zero_crossing, interior branch otherwise.
RDPoint rate_at(const QubitState &rho, double q0, double D);

/// Materializes N for a candidate given the off-diagonal phase.
HermitianOp candidate_op(const NCandidate &cand, cplx phase);

/// M_0 = sqrt(rho)^-1 N sqrt(rho)^-1, M_1 = I - M_0. Requires det(rho) > 0.
feasibility::Povm recover_povm(const QubitState &rho, const NCandidate &cand);

/// POVM attached to a solved point (q0 I for the zero-rate branch).
feasibility::Povm povm_at(const QubitState &rho, double q0, const RDPoint &point);

/// Sweeps a distortion grid; infeasible grid points are flagged, not fatal.
/// Points are solved in parallel and joined in grid order.
RDCurve curve(const QubitState &rho, double q0, std::span<const double> d_grid);

}  // namespace qct::rd
