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

#include "qct/feasibility.hpp"

#include <cmath>
#include <string>

namespace qct::feasibility {

namespace {

constexpr double kZeroProb = 1e-12;

void check_pmf(const std::vector<double> &p, const char *what) {
    double sum = 0.0;
    for (double v : p) {
        if (v < -tol::kStochastic) {
            throw std::invalid_argument(std::string(what) + ": negative probability");
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > tol::kStochastic) {
        throw std::invalid_argument(std::string(what) + ": probabilities sum to " +
                                    std::to_string(sum));
    }
}

void check_channel(const Channel &channel, int expected_rows) {
    if (channel.empty() || static_cast<int>(channel.size()) != expected_rows) {
        throw std::invalid_argument("channel: row count does not match the POVM alphabet");
    }
    const std::size_t cols = channel.front().size();
    if (cols == 0) {
        throw std::invalid_argument("channel: empty rows");
    }
    for (const auto &row : channel) {
        if (row.size() != cols) {
            throw std::invalid_argument("channel: ragged rows");
        }
        check_pmf(row, "channel row");
    }
}

double entropy_pmf(const std::vector<double> &p, LogBase base) {
    double acc = 0.0;
    for (double v : p) {
        if (v > 0.0) {
            acc -= v * std::log(v);
        }
    }
    if (base == LogBase::two) {
        acc /= std::log(2.0);
    }
    return acc;
}

}  // namespace

Povm::Povm(std::vector<HermitianOp> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) {
        throw std::invalid_argument("Povm: needs at least one element");
    }
    const int d = elements_.front().dim();
    CMat sum(d);
    for (const HermitianOp &m : elements_) {
        if (m.dim() != d) {
            throw std::invalid_argument("Povm: mixed element dimensions");
        }
        if (eig_hermitian(m).eigenvalues.front() < tol::kPsdEig) {
            throw std::invalid_argument("Povm: element is not PSD");
        }
        sum = sum + m.mat();
    }
    if ((sum - CMat::identity(d)).frobenius_norm() > 1e-9) {
        throw std::invalid_argument("Povm: elements do not sum to identity");
    }
}

QCSystem::QCSystem(HermitianOp rho_in, Povm povm_in, Channel channel_in, std::vector<double> qx_in,
                   std::vector<HermitianOp> distortion_map_in,
                   std::optional<double> delta_eigmax_in)
    : rho(std::move(rho_in)),
      povm(std::move(povm_in)),
      channel(std::move(channel_in)),
      qx_target(std::move(qx_in)),
      distortion_map(std::move(distortion_map_in)),
      delta_eigmax(0.0) {
    if (povm.dim() != rho.dim()) {
        throw std::invalid_argument("QCSystem: POVM dimension differs from the state");
    }
    check_channel(channel, povm.size());
    const std::size_t nx = channel.front().size();
    if (qx_target.size() != nx) {
        throw std::invalid_argument("QCSystem: target pmf length differs from channel output");
    }
    check_pmf(qx_target, "qx_target");
    if (distortion_map.size() != nx) {
        throw std::invalid_argument("QCSystem: one distortion observable per output required");
    }
    for (const HermitianOp &d : distortion_map) {
        if (d.dim() != rho.dim()) {
            throw std::invalid_argument("QCSystem: distortion observable dimension mismatch");
        }
    }
    if (delta_eigmax_in) {
        delta_eigmax = *delta_eigmax_in;
    } else {
        for (const HermitianOp &d : distortion_map) {
            delta_eigmax = std::max(delta_eigmax, eig_hermitian(d).eigenvalues.back());
        }
    }
}

Ensemble post_measurement_ensemble(const HermitianOp &rho, const Povm &povm) {
    if (rho.dim() != povm.dim()) {
        throw std::invalid_argument("post_measurement_ensemble: dimension mismatch");
    }
    const HermitianOp root = sqrt_psd(rho);
    Ensemble out;
    out.probs.reserve(static_cast<std::size_t>(povm.size()));
    for (int w = 0; w < povm.size(); ++w) {
        const double p = trace_product_real(povm.element(w), rho);
        const HermitianOp raw = sandwich(root, povm.element(w));
        if (p > kZeroProb) {
            out.probs.push_back(p);
            out.states.push_back((1.0 / p) * raw);
            out.degenerate.push_back(false);
        } else {
            out.probs.push_back(std::max(p, 0.0));
            out.states.push_back(HermitianOp::zero(rho.dim()));
            out.degenerate.push_back(true);
        }
    }
    return out;
}

double holevo_information(const HermitianOp &rho, const Povm &povm, LogBase base) {
    const Ensemble ens = post_measurement_ensemble(rho, povm);
    double acc = von_neumann_entropy(rho, base);
    for (std::size_t w = 0; w < ens.probs.size(); ++w) {
        if (!ens.degenerate[w]) {
            acc -= ens.probs[w] * von_neumann_entropy(ens.states[w], base);
        }
    }
    return std::max(acc, 0.0);
}

double classical_mutual_information(const std::vector<double> &p_w, const Channel &channel,
                                    LogBase base) {
    check_pmf(p_w, "p_w");
    check_channel(channel, static_cast<int>(p_w.size()));
    const std::size_t nx = channel.front().size();

    std::vector<double> qx(nx, 0.0);
    for (std::size_t w = 0; w < p_w.size(); ++w) {
        for (std::size_t x = 0; x < nx; ++x) {
            qx[x] += p_w[w] * channel[w][x];
        }
    }
    double acc = 0.0;
    for (std::size_t w = 0; w < p_w.size(); ++w) {
        if (p_w[w] <= 0.0) {
            continue;
        }
        for (std::size_t x = 0; x < nx; ++x) {
            const double pxw = channel[w][x];
            if (pxw > 0.0 && qx[x] > 0.0) {
                acc += p_w[w] * pxw * std::log(pxw / qx[x]);
            }
        }
    }
    if (base == LogBase::two) {
        acc /= std::log(2.0);
    }
    return std::max(acc, 0.0);
}

std::vector<double> output_marginal(const HermitianOp &rho, const Povm &povm,
                                    const Channel &channel) {
    check_channel(channel, povm.size());
    const std::size_t nx = channel.front().size();
    std::vector<double> qx(nx, 0.0);
    for (int w = 0; w < povm.size(); ++w) {
        const double p = trace_product_real(povm.element(w), rho);
        for (std::size_t x = 0; x < nx; ++x) {
            qx[x] += channel[static_cast<std::size_t>(w)][x] * p;
        }
    }
    return qx;
}

double qc_distortion(const HermitianOp &rho, const Povm &povm_x,
                     const std::vector<HermitianOp> &distortion_map) {
    if (static_cast<int>(distortion_map.size()) != povm_x.size()) {
        throw std::invalid_argument("qc_distortion: outcome labels do not match observables");
    }
    const HermitianOp root = sqrt_psd(rho);
    double acc = 0.0;
    for (int x = 0; x < povm_x.size(); ++x) {
        acc += trace_product_real(sandwich(root, povm_x.element(x)),
                                  distortion_map[static_cast<std::size_t>(x)]);
    }
    return acc;
}

FeasibilityReport check_feasible(const QCSystem &sys, double D, double marginal_tol) {
    FeasibilityReport rep;
    rep.holevo_bits = holevo_information(sys.rho, sys.povm, LogBase::two);

    std::vector<double> p_w(static_cast<std::size_t>(sys.povm.size()));
    for (int w = 0; w < sys.povm.size(); ++w) {
        p_w[static_cast<std::size_t>(w)] =
            std::max(trace_product_real(sys.povm.element(w), sys.rho), 0.0);
    }
    rep.mutual_bits = classical_mutual_information(p_w, sys.channel, LogBase::two);

    const std::vector<double> induced = output_marginal(sys.rho, sys.povm, sys.channel);
    double gap = 0.0;
    for (std::size_t x = 0; x < induced.size(); ++x) {
        gap = std::max(gap, std::abs(induced[x] - sys.qx_target[x]));
    }
    rep.marginal_gap = gap;

    rep.distortion = qc_distortion(sys.rho, compose_through_channel(sys.povm, sys.channel),
                                   sys.distortion_map);

    rep.marginal_ok = gap <= marginal_tol;
    rep.distortion_ok = rep.distortion <= D + 1e-10;
    rep.cardinality_ok =
        sys.povm.size() <= cardinality_bound(sys.rho.dim(), static_cast<int>(induced.size()));
    rep.feasible = rep.marginal_ok && rep.distortion_ok && rep.cardinality_ok;
    return rep;
}

int cardinality_bound(int dim_a, int alphabet_x) {
    if (dim_a <= 0 || alphabet_x <= 0) {
        throw std::invalid_argument("cardinality_bound: arguments must be positive");
    }
    return dim_a * dim_a + alphabet_x + 1;
}

Povm compose_through_channel(const Povm &povm, const Channel &channel) {
    check_channel(channel, povm.size());
    const std::size_t nx = channel.front().size();
    std::vector<HermitianOp> composed;
    composed.reserve(nx);
    for (std::size_t x = 0; x < nx; ++x) {
        HermitianOp acc = HermitianOp::zero(povm.dim());
        for (int w = 0; w < povm.size(); ++w) {
            acc = acc + channel[static_cast<std::size_t>(w)][x] * povm.element(w);
        }
        composed.push_back(acc);
    }
    return Povm(std::move(composed));
}

std::vector<HermitianOp> entanglement_fidelity_map(const HermitianOp &rho) {
    const HermitianOp root = sqrt_psd(rho);
    const HermitianOp eye = HermitianOp::identity(rho.dim());
    std::vector<HermitianOp> map;
    map.reserve(static_cast<std::size_t>(rho.dim()));
    for (int x = 0; x < rho.dim(); ++x) {
        map.push_back(eye - sandwich(root, HermitianOp::basis_projector(rho.dim(), x)));
    }
    return map;
}

}  // namespace qct::feasibility
