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
 * Brute-force verifiers for the closed-form solvers. Deliberately share no
 * code with them: constraint coefficients are recomputed from the operator
 * square root, the scalar problem is minimized by golden section, and the
 * transport problem by an exhaustive scan over the feasible region.
 */

#pragma once

#include <optional>

#include "qct/qmath.hpp"
#include "qct/qubit_rd.hpp"

namespace qct::oracle {

/// Feasible sub-segment of the distortion constraint line, parametrized as
/// (n0, s0) + t (un, us) for t in [t_lo, t_hi].
struct LineSegment {
    double n0 = 0.0, s0 = 0.0;
    double un = 0.0, us = 0.0;
    double t_lo = 0.0, t_hi = 0.0;

    std::pair<double, double> point_at(double t) const { return {n0 + t * un, s0 + t * us}; }
    double length() const { return t_hi - t_lo; }
};

struct LineMinimum {
    double n = 0.0;
    double s = 0.0;
    double objective_nats = 0.0;  // Tr N ln(N/q0) + Tr (rho-N) ln((rho-N)/(1-q0))
};

struct GridMinimum {
    double value = 0.0;
    double accuracy_bound = 0.0;  // Lipschitz constant x cell diagonal
    double n = 0.0;
    double s = 0.0;
};

struct ConvexityReport {
    double max_violation = 0.0;
    int triples = 0;
    bool pass = true;
};

/// Intersection of the constraint line with both positivity discs; empty
/// when the distortion lies below the transport minimum.
std::optional<LineSegment> feasible_segment(const QubitState &rho, double q0, double D);

/// Golden-section minimum of the strictly convex scalar objective on the
/// feasible segment (interval narrowed to width 1e-12).
LineMinimum golden_min_on_line(const QubitState &rho, double q0, double D);

/// Rate implied by the oracle at distortion D, in bits. Zero when the
/// unconstrained optimum q0 rho already satisfies the constraint.
double rate_bits(const QubitState &rho, double q0, double D);

/// Scan minimum of the linear transport objective over the two-disc
/// intersection: per-column exact boundary endpoints plus the circle
/// intersection corners.
GridMinimum grid_min_ot(const QubitState &rho, double q0, int resolution);

/// Midpoint-convexity audit over consecutive finite triples of a curve.
ConvexityReport convexity_check(const rd::RDCurve &curve);

}  // namespace qct::oracle
