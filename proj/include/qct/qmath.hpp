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
 * Exact small-dimension Hermitian linear algebra: validation,
 * eigendecomposition, operator square root, PSD ordering and
 * von Neumann entropy. Dimension 2 is solved in closed form; larger
 * dimensions fall back to cyclic Jacobi sweeps.
 */

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qct {

using cplx = std::complex<double>;

/// Logarithm base used for entropies and rates.
enum class LogBase { two, e };

/// Numeric tolerances shared across the toolkit.
namespace tol {
inline constexpr double kHermitian = 1e-12;       // max |H - H†| entry
inline constexpr double kPsdEig = -1e-10;         // eigenvalue floor for PSD checks
inline constexpr double kTraceOne = 1e-10;        // |Tr - 1| for densities
inline constexpr double kEntropyEig = 1e-15;      // eigenvalues below this give 0*log0 = 0
inline constexpr double kPureDet = 1e-12;         // det below this counts as pure
inline constexpr double kStochastic = 1e-12;      // row-sum tolerance for pmfs/channels
}  // namespace tol

class NumericError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Requested distortion lies below the minimum achievable one.
class InfeasibleDistortionError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Operation undefined for (near-)pure states; caller must take the
/// degenerate single-point branch instead.
class PureStateError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Dense square complex matrix, row-major. Deliberately minimal: only the
/// operations the toolkit needs, no expression templates, no views.
class CMat {
  public:
    CMat() = default;
    explicit CMat(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim) {
        if (dim <= 0) {
            throw std::invalid_argument("CMat: dimension must be positive");
        }
    }

    static CMat identity(int dim);

    int dim() const { return dim_; }

    cplx &at(int r, int c) { return a_[idx(r, c)]; }
    const cplx &at(int r, int c) const { return a_[idx(r, c)]; }

    CMat adjoint() const;
    cplx trace() const;
    double frobenius_norm() const;

    friend CMat operator+(const CMat &x, const CMat &y);
    friend CMat operator-(const CMat &x, const CMat &y);
    friend CMat operator*(const CMat &x, const CMat &y);
    friend CMat operator*(cplx scale, const CMat &x);

  private:
    std::size_t idx(int r, int c) const { return static_cast<std::size_t>(r) * dim_ + c; }

    int dim_ = 0;
    std::vector<cplx> a_;
};

/**
 * A dim x dim complex Hermitian operator; the universal carrier for
 * states, POVM elements and distortion observables. Construction rejects
 * matrices whose Hermiticity defect exceeds tol::kHermitian.
 */
class HermitianOp {
  public:
    explicit HermitianOp(CMat m);

    static HermitianOp identity(int dim);
    static HermitianOp zero(int dim);
    static HermitianOp diagonal(const std::vector<double> &d);
    /// |k><k| in the computational basis.
    static HermitianOp basis_projector(int dim, int k);

    int dim() const { return m_.dim(); }
    const CMat &mat() const { return m_; }
    cplx at(int r, int c) const { return m_.at(r, c); }

    double trace_real() const { return m_.trace().real(); }
    double hermiticity_defect() const { return defect_; }

    friend HermitianOp operator+(const HermitianOp &x, const HermitianOp &y);
    friend HermitianOp operator-(const HermitianOp &x, const HermitianOp &y);
    friend HermitianOp operator*(double scale, const HermitianOp &x);

  private:
    CMat m_;
    double defect_ = 0.0;
};

/// Eigensystem of a Hermitian operator: ascending eigenvalues, matching
/// orthonormal eigenvector columns.
struct Spectrum {
    std::vector<double> eigenvalues;
    CMat eigenvectors;
};

struct ValidationReport {
    double hermiticity_defect = 0.0;
    double min_eigenvalue = 0.0;
    double trace_deviation = 0.0;
    bool valid = false;
};

/**
 * Qubit density operator [[rho1, rho2], [conj(rho2), 1 - rho1]].
 * Trace one by construction; construction rejects parameters violating
 * positivity (|rho2|^2 <= rho1 (1 - rho1)).
 */
struct QubitState {
    QubitState(double rho1_in, cplx rho2_in);

    double rho1;
    cplx rho2;

    HermitianOp to_op() const;

    double determinant() const;      // rho1 (1 - rho1) - |rho2|^2
    double bloch_radius() const;     // eigenvalues are 1/2 +- bloch_radius()
    double purity() const;           // Tr rho^2
    bool is_pure(double det_tol = tol::kPureDet) const;
    /// rho2 / |rho2|; fixed to 1 for diagonal states.
    cplx phase() const;
    /// Von Neumann entropy through the closed-form eigenvalues.
    double entropy(LogBase base) const;
};

// ---------------------------------------------------------------------------
// Operations

/// Hermiticity defect, minimum eigenvalue and trace deviation of a would-be
/// density operator.
ValidationReport validate_density(const HermitianOp &h);

/// Full eigensystem. Dimension 2 uses the trace/determinant closed form,
/// larger dimensions cyclic Jacobi sweeps.
Spectrum eig_hermitian(const HermitianOp &h);

/// Operator square root of a PSD operator. Eigenvalues within tol::kPsdEig
/// of zero are clamped to zero; more negative ones raise std::domain_error.
HermitianOp sqrt_psd(const HermitianOp &h);

/// -Tr(rho log rho) in the requested base, with 0*log0 = 0.
double von_neumann_entropy(const HermitianOp &h, LogBase base);

/// True iff A <= B in the PSD (Loewner) order, i.e. min eig(B - A) >= -1e-10.
bool psd_leq(const HermitianOp &a, const HermitianOp &b);

/// Tr(H^2).
double purity(const HermitianOp &h);

/// a * m * a for Hermitian a, m (result is Hermitian: (a m a)† = a m a).
HermitianOp sandwich(const HermitianOp &a, const HermitianOp &m);

/// Binary entropy -p log p - (1-p) log(1-p); p outside [0,1] by rounding
/// noise is clamped.
double binary_entropy(double p, LogBase base);

/// Real part of Tr(A B) for Hermitian A, B (the imaginary part is zero).
double trace_product_real(const HermitianOp &a, const HermitianOp &b);

}  // namespace qct
