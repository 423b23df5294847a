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
 * Closed-form minimum transportation cost for a qubit source with a fixed
 * Bernoulli output, and the minimum rate that still achieves it. The three
 * Lagrangian cases correspond to which of the two disc constraints bind.
 */

#pragma once

#include "qct/qmath.hpp"
#include "qct/qubit_rd.hpp"

namespace qct::ot {

struct CaseSelection {
    int case_id = 0;  // 1, 2 or 3
    double Q = 0.0;   // (rho1 - 1/2) / sqrt(1 - 4 |rho2|^2)
};

struct OTSolution {
    double D_OT = 0.0;
    double n = 0.0;
    double s = 0.0;
    int case_id = 0;  // 0 for the degenerate single-point regime
    double Q = 0.0;
    bool degenerate = false;   // pure state or q0 in {0, 1}
    bool disc1_tight = false;  // E1 = q0/2
    bool disc2_tight = false;  // E2 = (1-q0)/2
    double lambda1 = 0.0;      // multiplier diagnostics
    double lambda2 = 0.0;
    bool sign_tie = false;     // case 3 hit sgn(a - b) at a == b
};

/// Selects the binding-constraint case; ties resolve to the lower case id.
/// Throws PureStateError when 1 - 4|rho2|^2 vanishes.
CaseSelection case_select(const QubitState &rho, double q0);

/// Minimum entanglement-fidelity distortion and its optimizer. Pure states
/// and q0 in {0, 1} short-circuit to the single feasible point.
OTSolution optimal_transport(const QubitState &rho, double q0);

/// Minimum sufficient rate (bits) that still attains the transport optimum.
double min_rate_ot(const QubitState &rho, double q0);

}  // namespace qct::ot
