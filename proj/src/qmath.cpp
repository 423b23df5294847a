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

#include "qct/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qct {

namespace {

constexpr double kLn2 = 0.6931471805599453094172321;

double log_scale(LogBase base) { return base == LogBase::two ? 1.0 / kLn2 : 1.0; }

}  // namespace

// ---------------------------------------------------------------------------
// CMat

CMat CMat::identity(int dim) {
    CMat m(dim);
    for (int i = 0; i < dim; ++i) {
        m.at(i, i) = 1.0;
    }
    return m;
}

CMat CMat::adjoint() const {
    CMat out(dim_);
    for (int r = 0; r < dim_; ++r) {
        for (int c = 0; c < dim_; ++c) {
            out.at(c, r) = std::conj(at(r, c));
        }
    }
    return out;
}

cplx CMat::trace() const {
    cplx t = 0.0;
    for (int i = 0; i < dim_; ++i) {
        t += at(i, i);
    }
    return t;
}

double CMat::frobenius_norm() const {
    double s = 0.0;
    for (const cplx &v : a_) {
        s += std::norm(v);
    }
    return std::sqrt(s);
}

CMat operator+(const CMat &x, const CMat &y) {
    if (x.dim_ != y.dim_) {
        throw std::invalid_argument("CMat: dimension mismatch in +");
    }
    CMat out(x.dim_);
    for (std::size_t i = 0; i < x.a_.size(); ++i) {
        out.a_[i] = x.a_[i] + y.a_[i];
    }
    return out;
}

CMat operator-(const CMat &x, const CMat &y) {
    if (x.dim_ != y.dim_) {
        throw std::invalid_argument("CMat: dimension mismatch in -");
    }
    CMat out(x.dim_);
    for (std::size_t i = 0; i < x.a_.size(); ++i) {
        out.a_[i] = x.a_[i] - y.a_[i];
    }
    return out;
}

CMat operator*(const CMat &x, const CMat &y) {
    if (x.dim_ != y.dim_) {
        throw std::invalid_argument("CMat: dimension mismatch in *");
    }
    const int d = x.dim_;
    CMat out(d);
    for (int r = 0; r < d; ++r) {
        for (int k = 0; k < d; ++k) {
            const cplx xv = x.at(r, k);
            if (xv == cplx{0.0, 0.0}) {
                continue;
            }
            for (int c = 0; c < d; ++c) {
                out.at(r, c) += xv * y.at(k, c);
            }
        }
    }
    return out;
}

CMat operator*(cplx scale, const CMat &x) {
    CMat out(x.dim_);
    for (std::size_t i = 0; i < x.a_.size(); ++i) {
        out.a_[i] = scale * x.a_[i];
    }
    return out;
}

// ---------------------------------------------------------------------------
// HermitianOp

HermitianOp::HermitianOp(CMat m) : m_(std::move(m)) {
    const int d = m_.dim();
    double defect = 0.0;
    for (int r = 0; r < d; ++r) {
        for (int c = r; c < d; ++c) {
            defect = std::max(defect, std::abs(m_.at(r, c) - std::conj(m_.at(c, r))));
        }
    }
    defect_ = defect;
    if (defect_ > tol::kHermitian) {
        throw std::invalid_argument("HermitianOp: Hermiticity defect " + std::to_string(defect_) +
                                    " exceeds tolerance");
    }
}

HermitianOp HermitianOp::identity(int dim) { return HermitianOp(CMat::identity(dim)); }

HermitianOp HermitianOp::zero(int dim) { return HermitianOp(CMat(dim)); }

HermitianOp HermitianOp::diagonal(const std::vector<double> &d) {
    CMat m(static_cast<int>(d.size()));
    for (int i = 0; i < m.dim(); ++i) {
        m.at(i, i) = d[static_cast<std::size_t>(i)];
    }
    return HermitianOp(std::move(m));
}

HermitianOp HermitianOp::basis_projector(int dim, int k) {
    if (k < 0 || k >= dim) {
        throw std::invalid_argument("basis_projector: index out of range");
    }
    CMat m(dim);
    m.at(k, k) = 1.0;
    return HermitianOp(std::move(m));
}

HermitianOp operator+(const HermitianOp &x, const HermitianOp &y) {
    return HermitianOp(x.m_ + y.m_);
}

HermitianOp operator-(const HermitianOp &x, const HermitianOp &y) {
    return HermitianOp(x.m_ - y.m_);
}

HermitianOp operator*(double scale, const HermitianOp &x) {
    return HermitianOp(cplx{scale, 0.0} * x.m_);
}

// ---------------------------------------------------------------------------
// QubitState

QubitState::QubitState(double rho1_in, cplx rho2_in) : rho1(rho1_in), rho2(rho2_in) {
    if (!(rho1 >= -1e-12 && rho1 <= 1.0 + 1e-12)) {
        throw std::domain_error("QubitState: rho1 outside [0, 1]");
    }
    const double slack = rho1 * (1.0 - rho1) - std::norm(rho2);
    if (slack < -tol::kHermitian) {
        throw std::domain_error("QubitState: |rho2|^2 exceeds rho1 (1 - rho1)");
    }
}

HermitianOp QubitState::to_op() const {
    CMat m(2);
    m.at(0, 0) = rho1;
    m.at(0, 1) = rho2;
    m.at(1, 0) = std::conj(rho2);
    m.at(1, 1) = 1.0 - rho1;
    return HermitianOp(std::move(m));
}

double QubitState::determinant() const { return rho1 * (1.0 - rho1) - std::norm(rho2); }

double QubitState::bloch_radius() const {
    return std::sqrt((rho1 - 0.5) * (rho1 - 0.5) + std::norm(rho2));
}

double QubitState::purity() const {
    return rho1 * rho1 + (1.0 - rho1) * (1.0 - rho1) + 2.0 * std::norm(rho2);
}

bool QubitState::is_pure(double det_tol) const { return determinant() <= det_tol; }

cplx QubitState::phase() const {
    const double m = std::abs(rho2);
    return m > 0.0 ? rho2 / m : cplx{1.0, 0.0};
}

double QubitState::entropy(LogBase base) const {
    return binary_entropy(0.5 - bloch_radius(), base);
}

// ---------------------------------------------------------------------------
// Eigendecomposition

namespace {

Spectrum eig_dim1(const HermitianOp &h) {
    Spectrum s;
    s.eigenvalues = {h.at(0, 0).real()};
    s.eigenvectors = CMat::identity(1);
    return s;
}

// Closed form via trace/determinant; the eigenvector of the larger
// eigenvalue is taken from the better-conditioned of the two candidate
// null-space rows, the other one is its orthogonal complement.
Spectrum eig_dim2(const HermitianOp &h) {
    const double alpha = h.at(0, 0).real();
    const double delta = h.at(1, 1).real();
    const cplx beta = h.at(0, 1);
    const double mean = 0.5 * (alpha + delta);
    const double radius = std::hypot(0.5 * (alpha - delta), std::abs(beta));

    Spectrum s;
    s.eigenvalues = {mean - radius, mean + radius};
    s.eigenvectors = CMat::identity(2);
    if (radius <= 0.0) {
        return s;  // multiple of the identity
    }

    const double hi = mean + radius;
    cplx v0 = beta;
    cplx v1 = cplx{hi - alpha, 0.0};
    const cplx w0 = cplx{hi - delta, 0.0};
    const cplx w1 = std::conj(beta);
    if (std::norm(w0) + std::norm(w1) > std::norm(v0) + std::norm(v1)) {
        v0 = w0;
        v1 = w1;
    }
    const double nrm = std::sqrt(std::norm(v0) + std::norm(v1));
    if (nrm == 0.0) {
        return s;
    }
    v0 /= nrm;
    v1 /= nrm;
    // column 1: eigenvector of mean + radius; column 0: orthogonal complement
    s.eigenvectors.at(0, 1) = v0;
    s.eigenvectors.at(1, 1) = v1;
    s.eigenvectors.at(0, 0) = -std::conj(v1);
    s.eigenvectors.at(1, 0) = std::conj(v0);
    return s;
}

double offdiag_norm(const CMat &a) {
    double s = 0.0;
    for (int r = 0; r < a.dim(); ++r) {
        for (int c = r + 1; c < a.dim(); ++c) {
            s += std::norm(a.at(r, c));
        }
    }
    return std::sqrt(s);
}

Spectrum eig_jacobi(const HermitianOp &h) {
    const int d = h.dim();
    CMat a = h.mat();
    // symmetrize the sub-tolerance defect so rotations see an exactly
    // Hermitian matrix
    for (int r = 0; r < d; ++r) {
        a.at(r, r) = a.at(r, r).real();
        for (int c = r + 1; c < d; ++c) {
            const cplx m = 0.5 * (a.at(r, c) + std::conj(a.at(c, r)));
            a.at(r, c) = m;
            a.at(c, r) = std::conj(m);
        }
    }
    CMat v = CMat::identity(d);
    const double scale = std::max(a.frobenius_norm(), 1e-300);

    constexpr int kMaxSweeps = 60;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (offdiag_norm(a) <= 1e-14 * scale) {
            break;
        }
        for (int p = 0; p < d; ++p) {
            for (int q = p + 1; q < d; ++q) {
                const cplx apq = a.at(p, q);
                const double mag = std::abs(apq);
                if (mag <= 1e-300) {
                    continue;
                }
                const cplx phase = apq / mag;
                const double app = a.at(p, p).real();
                const double aqq = a.at(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                            : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // G = I except the (p,q) block [[c, s], [-s conj(phase), c conj(phase)]]
                CMat g = CMat::identity(d);
                g.at(p, p) = c;
                g.at(p, q) = s;
                g.at(q, p) = -s * std::conj(phase);
                g.at(q, q) = c * std::conj(phase);
                a = g.adjoint() * a * g;
                v = v * g;
            }
        }
    }
    if (offdiag_norm(a) > 1e-10 * scale) {
        throw NumericError("eig_hermitian: Jacobi sweeps did not converge");
    }

    std::vector<int> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&a](int i, int j) { return a.at(i, i).real() < a.at(j, j).real(); });

    Spectrum out;
    out.eigenvalues.resize(static_cast<std::size_t>(d));
    out.eigenvectors = CMat(d);
    for (int c = 0; c < d; ++c) {
        const int src = order[static_cast<std::size_t>(c)];
        out.eigenvalues[static_cast<std::size_t>(c)] = a.at(src, src).real();
        for (int r = 0; r < d; ++r) {
            out.eigenvectors.at(r, c) = v.at(r, src);
        }
    }
    return out;
}

HermitianOp reconstruct(const Spectrum &s, const std::vector<double> &vals) {
    const int d = s.eigenvectors.dim();
    CMat m(d);
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
            cplx acc = 0.0;
            for (int k = 0; k < d; ++k) {
                acc += s.eigenvectors.at(r, k) * vals[static_cast<std::size_t>(k)] *
                       std::conj(s.eigenvectors.at(c, k));
            }
            m.at(r, c) = acc;
        }
    }
    // clean the rounding defect before the Hermitian wrap
    for (int r = 0; r < d; ++r) {
        m.at(r, r) = m.at(r, r).real();
        for (int c = r + 1; c < d; ++c) {
            const cplx avg = 0.5 * (m.at(r, c) + std::conj(m.at(c, r)));
            m.at(r, c) = avg;
            m.at(c, r) = std::conj(avg);
        }
    }
    return HermitianOp(std::move(m));
}

}  // namespace

Spectrum eig_hermitian(const HermitianOp &h) {
    switch (h.dim()) {
        case 1:
            return eig_dim1(h);
        case 2:
            return eig_dim2(h);
        default:
            return eig_jacobi(h);
    }
}

ValidationReport validate_density(const HermitianOp &h) {
    ValidationReport rep;
    rep.hermiticity_defect = h.hermiticity_defect();
    rep.min_eigenvalue = eig_hermitian(h).eigenvalues.front();
    rep.trace_deviation = std::abs(h.trace_real() - 1.0);
    rep.valid = rep.min_eigenvalue >= tol::kPsdEig && rep.trace_deviation <= tol::kTraceOne;
    return rep;
}

HermitianOp sqrt_psd(const HermitianOp &h) {
    Spectrum s = eig_hermitian(h);
    std::vector<double> roots(s.eigenvalues.size());
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
        const double lam = s.eigenvalues[i];
        if (lam < tol::kPsdEig) {
            throw std::domain_error("sqrt_psd: operator is not PSD (eigenvalue " +
                                    std::to_string(lam) + ")");
        }
        roots[i] = std::sqrt(std::max(lam, 0.0));
    }
    return reconstruct(s, roots);
}

double von_neumann_entropy(const HermitianOp &h, LogBase base) {
    Spectrum s = eig_hermitian(h);
    if (s.eigenvalues.front() < tol::kPsdEig) {
        throw std::domain_error("von_neumann_entropy: operator is not PSD");
    }
    if (h.trace_real() > 1.0 + 1e-9) {
        throw std::domain_error("von_neumann_entropy: trace exceeds one");
    }
    double acc = 0.0;
    for (double lam : s.eigenvalues) {
        if (lam > tol::kEntropyEig) {
            acc -= lam * std::log(lam);
        }
    }
    return std::max(acc, 0.0) * log_scale(base);
}

bool psd_leq(const HermitianOp &a, const HermitianOp &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("psd_leq: dimension mismatch");
    }
    return eig_hermitian(b - a).eigenvalues.front() >= tol::kPsdEig;
}

double purity(const HermitianOp &h) {
    double s = 0.0;
    for (int r = 0; r < h.dim(); ++r) {
        for (int c = 0; c < h.dim(); ++c) {
            s += std::norm(h.at(r, c));
        }
    }
    return s;
}

HermitianOp sandwich(const HermitianOp &a, const HermitianOp &m) {
    if (a.dim() != m.dim()) {
        throw std::invalid_argument("sandwich: dimension mismatch");
    }
    CMat prod = a.mat() * m.mat() * a.mat();
    const int d = prod.dim();
    for (int r = 0; r < d; ++r) {
        prod.at(r, r) = prod.at(r, r).real();
        for (int c = r + 1; c < d; ++c) {
            const cplx avg = 0.5 * (prod.at(r, c) + std::conj(prod.at(c, r)));
            prod.at(r, c) = avg;
            prod.at(c, r) = std::conj(avg);
        }
    }
    return HermitianOp(std::move(prod));
}

double binary_entropy(double p, LogBase base) {
    p = std::clamp(p, 0.0, 1.0);
    double acc = 0.0;
    if (p > 0.0) {
        acc -= p * std::log(p);
    }
    if (p < 1.0) {
        acc -= (1.0 - p) * std::log(1.0 - p);
    }
    return acc * log_scale(base);
}

double trace_product_real(const HermitianOp &a, const HermitianOp &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("trace_product_real: dimension mismatch");
    }
    double acc = 0.0;
    for (int r = 0; r < a.dim(); ++r) {
        for (int c = 0; c < a.dim(); ++c) {
            // Tr(AB) = sum_rc A_rc B_cr = sum_rc A_rc conj(B_rc)
            acc += (a.at(r, c) * std::conj(b.at(r, c))).real();
        }
    }
    return acc;
}

}  // namespace qct
