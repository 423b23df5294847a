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
 * Feasibility machinery for finite measurement systems: post-measurement
 * ensembles, Holevo information of a measurement, classical mutual
 * information of the post-processing channel, output-marginal matching,
 * average distortion, and the intermediate-alphabet cardinality bound.
 */

#pragma once

#include <optional>
#include <vector>

#include "qct/qmath.hpp"

namespace qct::feasibility {

/// POVM over a finite outcome alphabet: PSD elements summing to identity.
class Povm {
  public:
    explicit Povm(std::vector<HermitianOp> elements);

    int size() const { return static_cast<int>(elements_.size()); }
    int dim() const { return elements_.front().dim(); }
    const HermitianOp &element(int w) const { return elements_[static_cast<std::size_t>(w)]; }
    const std::vector<HermitianOp> &elements() const { return elements_; }

  private:
    std::vector<HermitianOp> elements_;
};

/// Conditional post-measurement reference states with their outcome
/// probabilities. Zero-probability outcomes keep their slot (zero state,
/// degenerate flag) so indices stay aligned with channel rows.
struct Ensemble {
    std::vector<double> probs;
    std::vector<HermitianOp> states;
    std::vector<bool> degenerate;
};

using Channel = std::vector<std::vector<double>>;  // row-stochastic, |W| x |X|

/**
 * A finite measurement system: source state, POVM over the intermediate
 * alphabet W, classical post-processing channel P(x|w), target output pmf,
 * and the per-outcome distortion observables Delta_R(x).
 */
struct QCSystem {
    QCSystem(HermitianOp rho_in, Povm povm_in, Channel channel_in, std::vector<double> qx_in,
             std::vector<HermitianOp> distortion_map_in,
             std::optional<double> delta_eigmax_in = std::nullopt);

    HermitianOp rho;
    Povm povm;
    Channel channel;
    std::vector<double> qx_target;
    std::vector<HermitianOp> distortion_map;  // indexed by x
    double delta_eigmax;                      // largest distortion-observable eigenvalue
};

struct FeasibilityReport {
    bool feasible = false;
    double holevo_bits = 0.0;       // I(W;R)
    double mutual_bits = 0.0;       // I(W;X)
    double marginal_gap = 0.0;      // Linf distance induced marginal vs target
    double distortion = 0.0;
    bool marginal_ok = false;
    bool distortion_ok = false;
    bool cardinality_ok = false;
};

/// p_w = Tr(M_w rho), post-measurement states sqrt(rho) M_w sqrt(rho) / p_w.
Ensemble post_measurement_ensemble(const HermitianOp &rho, const Povm &povm);

/// I(W;R) = H(rho) - sum_w p_w H(rho_w) for the measurement outcome W.
double holevo_information(const HermitianOp &rho, const Povm &povm, LogBase base);

/// I(W;X) of the joint pmf p_w(w) P(x|w).
double classical_mutual_information(const std::vector<double> &p_w, const Channel &channel,
                                    LogBase base);

/// Induced output pmf: Q(x) = sum_w P(x|w) Tr(M_w rho).
std::vector<double> output_marginal(const HermitianOp &rho, const Povm &povm,
                                    const Channel &channel);

/// Average distortion sum_x Tr(sqrt(rho) M_x sqrt(rho) Delta_R(x)).
double qc_distortion(const HermitianOp &rho, const Povm &povm_x,
                     const std::vector<HermitianOp> &distortion_map);

/// Evaluates the rate-region membership conditions at distortion level D.
FeasibilityReport check_feasible(const QCSystem &sys, double D, double marginal_tol = 1e-8);

/// Sufficient intermediate-alphabet size: dim^2 + |X| + 1.
int cardinality_bound(int dim_a, int alphabet_x);

/// Composed measurement Lambda_x = sum_w P(x|w) M_w.
Povm compose_through_channel(const Povm &povm, const Channel &channel);

/// Entanglement-fidelity distortion observables Delta_R(x) = I - sqrt(rho)
/// |x><x| sqrt(rho), for untransposed POVM elements and |X| = dim(rho).
std::vector<HermitianOp> entanglement_fidelity_map(const HermitianOp &rho);

}  // namespace qct::feasibility
