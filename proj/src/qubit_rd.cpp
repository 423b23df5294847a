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

#include "qct/qubit_rd.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <thread>

namespace qct::rd {

namespace {

constexpr double kLn2 = 0.6931471805599453094172321;
constexpr double kTinyRadius = 1e-14;

struct LineGeometry {
    double n0, s0;    // foot of the perpendicular from the origin
    double un, us;    // unit direction along the line
    double t_lo, t_hi;
};

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// ln((m + e) / (m - e)) with the blow-up at e -> m capped to a large finite
// slope so bisection keeps a usable sign.
double log_ratio(double m, double e) {
    const double lo = m - e;
    if (lo <= 0.0) {
        return 1e6;
    }
    return std::log((m + e) / lo);
}

// Intersection of the constraint line with one closed disc, as a t-interval.
// Returns false when the line misses the disc.
bool intersect_disc(double x0n, double x0s, double un, double us, double cn, double cs, double r,
                    double &lo, double &hi) {
    const double dn = x0n - cn;
    const double ds = x0s - cs;
    const double beta = un * dn + us * ds;
    const double gamma = dn * dn + ds * ds - r * r;
    double disc = beta * beta - gamma;
    if (disc < 0.0) {
        if (disc < -1e-14) {
            return false;
        }
        disc = 0.0;  // tangency within rounding
    }
    const double root = std::sqrt(disc);
    lo = -beta - root;
    hi = -beta + root;
    return true;
}

std::optional<LineGeometry> constraint_segment(const SystemParams &p) {
    const double norm2 = p.a * p.a + p.b * p.b;
    if (norm2 <= 0.0) {
        return std::nullopt;
    }
    const double inv = 1.0 / norm2;
    LineGeometry geo{};
    geo.n0 = -p.c * p.a * inv;
    geo.s0 = -p.c * p.b * inv;
    const double nrm = std::sqrt(norm2);
    geo.un = -p.b / nrm;
    geo.us = p.a / nrm;

    double lo1, hi1, lo2, hi2;
    if (!intersect_disc(geo.n0, geo.s0, geo.un, geo.us, p.q0 / 2.0, 0.0, p.q0 / 2.0, lo1, hi1)) {
        return std::nullopt;
    }
    if (!intersect_disc(geo.n0, geo.s0, geo.un, geo.us, p.rho1 - (1.0 - p.q0) / 2.0, p.abs_rho2,
                        (1.0 - p.q0) / 2.0, lo2, hi2)) {
        return std::nullopt;
    }
    geo.t_lo = std::max(lo1, lo2);
    geo.t_hi = std::min(hi1, hi2);
    if (geo.t_lo > geo.t_hi) {
        return std::nullopt;
    }
    return geo;
}

// Derivative of the scalar objective along the line (strictly increasing).
double objective_derivative(const SystemParams &p, const LineGeometry &geo, double t,
                            double base_scale) {
    const double n = geo.n0 + t * geo.un;
    const double s = geo.s0 + t * geo.us;
    const double m1 = p.q0 / 2.0;
    const double m2 = (1.0 - p.q0) / 2.0;

    double acc = 0.0;
    const double d1n = n - m1;
    const double d1s = s;
    const double e1v = std::hypot(d1n, d1s);
    if (e1v > kTinyRadius) {
        acc += ((geo.un * d1n + geo.us * d1s) / e1v) * log_ratio(m1, e1v);
    }
    const double d2n = n - p.rho1 + m2;
    const double d2s = s - p.abs_rho2;
    const double e2v = std::hypot(d2n, d2s);
    if (e2v > kTinyRadius) {
        acc += ((geo.un * d2n + geo.us * d2s) / e2v) * log_ratio(m2, e2v);
    }
    return acc * base_scale;
}

// Second derivative along the line; positive on the open segment.
double objective_curvature(const SystemParams &p, const LineGeometry &geo, double t,
                           double base_scale) {
    const double n = geo.n0 + t * geo.un;
    const double s = geo.s0 + t * geo.us;
    const double m1 = p.q0 / 2.0;
    const double m2 = (1.0 - p.q0) / 2.0;

    auto term = [&](double dn, double ds, double m) {
        const double e = std::hypot(dn, ds);
        if (e <= kTinyRadius) {
            // limit: L/e -> 2/m and the radial part vanishes
            return 2.0 / m;
        }
        const double de = (geo.un * dn + geo.us * ds) / e;
        const double span = m * m - e * e;
        const double dlog = span > 0.0 ? 2.0 * m / span : 1e12;
        return (1.0 - de * de) / e * log_ratio(m, e) + de * de * dlog;
    };
    return (term(n - m1, s, m1) + term(n - p.rho1 + m2, s - p.abs_rho2, m2)) * base_scale;
}

}  // namespace

const char *to_string(Branch b) {
    switch (b) {
        case Branch::zero_rate:
            return "zero_rate";
        case Branch::interior:
            return "interior";
        case Branch::infeasible:
            return "infeasible";
    }
    return "unknown";
}

double e1(const NCandidate &cand) { return std::hypot(cand.n - cand.q0 / 2.0, cand.s); }

double e2(const NCandidate &cand, const QubitState &rho) {
    return std::hypot(cand.n - rho.rho1 + (1.0 - cand.q0) / 2.0, cand.s - std::abs(rho.rho2));
}

double zero_crossing(const QubitState &rho, double q0) {
    if (q0 < 0.0 || q0 > 1.0) {
        throw std::domain_error("zero_crossing: q0 outside [0, 1]");
    }
    const double r2sq = std::norm(rho.rho2);
    const double bra0 = rho.rho1 * rho.rho1 + r2sq;       // <0|rho^2|0>
    const double bra1 = (1.0 - rho.rho1) * (1.0 - rho.rho1) + r2sq;
    return 1.0 - q0 * bra0 - (1.0 - q0) * bra1;
}

SystemParams system_params(const QubitState &rho, double q0, double D) {
    if (q0 < 0.0 || q0 > 1.0) {
        throw std::domain_error("system_params: q0 outside [0, 1]");
    }
    SystemParams p;
    p.rho1 = rho.rho1;
    p.abs_rho2 = std::abs(rho.rho2);
    p.phase_rho2 = rho.phase();
    p.q0 = q0;
    p.D = D;

    const double r2sq = std::norm(rho.rho2);
    p.k = std::sqrt(std::max(rho.determinant(), 0.0));
    const double denom = 1.0 + 2.0 * p.k;
    p.g1 = ((p.rho1 + p.k) * (p.rho1 + p.k) - r2sq) / denom;
    p.g2 = (2.0 * p.rho1 - 1.0) * p.abs_rho2 / denom;
    p.g3 = p.rho1 - 1.0 + 2.0 * r2sq / denom;
    p.a = 1.0 - 4.0 * r2sq / denom;
    p.b = 2.0 * p.abs_rho2 * (2.0 * p.rho1 - 1.0) / denom;
    const double bra1 = (1.0 - p.rho1) * (1.0 - p.rho1) + r2sq;  // <1|rho^2|1>
    p.c = q0 * p.g3 + bra1 - 1.0 + D;
    p.d_zero_rate = zero_crossing(rho, q0);
    return p;
}

double stationarity_residual(const SystemParams &p, const NCandidate &cand, LogBase base) {
    const double m1 = p.q0 / 2.0;
    const double m2 = (1.0 - p.q0) / 2.0;
    const double d1n = cand.n - m1;
    const double d1s = cand.s;
    const double d2n = cand.n - p.rho1 + m2;
    const double d2s = cand.s - p.abs_rho2;

    double acc = 0.0;
    const double e1v = std::hypot(d1n, d1s);
    if (e1v > kTinyRadius) {
        acc += ((-p.a * d1s + p.b * d1n) / e1v) * log_ratio(m1, e1v);
    }
    const double e2v = std::hypot(d2n, d2s);
    if (e2v > kTinyRadius) {
        acc += ((-p.a * d2s + p.b * d2n) / e2v) * log_ratio(m2, e2v);
    }
    return base == LogBase::two ? acc / kLn2 : acc;
}

bool candidate_feasible(const NCandidate &cand, const QubitState &rho, double tolerance) {
    return e1(cand) <= cand.q0 / 2.0 + tolerance &&
           e2(cand, rho) <= (1.0 - cand.q0) / 2.0 + tolerance;
}

NCandidate solve_transcendental(const QubitState &rho, double q0, double D,
                                const SolveOptions &opts) {
    if (q0 <= 0.0 || q0 >= 1.0) {
        throw std::domain_error("solve_transcendental: q0 must lie strictly inside (0, 1)");
    }
    if (rho.determinant() <= tol::kPureDet) {
        throw PureStateError("solve_transcendental: state is pure; the curve is a single point");
    }
    const SystemParams p = system_params(rho, q0, D);
    if (D >= p.d_zero_rate) {
        throw std::domain_error("solve_transcendental: zero-rate regime, use the D >= threshold branch");
    }

    const auto segment = constraint_segment(p);
    if (!segment) {
        throw InfeasibleDistortionError(
            "solve_transcendental: distortion below the minimum achievable value");
    }

    const double base_scale = opts.stationarity_base == LogBase::two ? 1.0 / kLn2 : 1.0;
    const double guard = 1e-12 * std::min(q0 / 2.0, (1.0 - q0) / 2.0);
    double lo = segment->t_lo + guard;
    double hi = segment->t_hi - guard;

    auto candidate_at = [&](double t) {
        return NCandidate{segment->n0 + t * segment->un, segment->s0 + t * segment->us, q0};
    };

    if (lo >= hi) {
        // segment shrunk to (numerically) a point: constraint tangent to a disc
        return candidate_at(0.5 * (segment->t_lo + segment->t_hi));
    }

    const double dlo = objective_derivative(p, *segment, lo, base_scale);
    const double dhi = objective_derivative(p, *segment, hi, base_scale);
    double root;
    if (dlo >= 0.0) {
        root = lo;  // minimum pinned at the lower boundary
    } else if (dhi <= 0.0) {
        root = hi;
    } else {
        double a = lo, fa = dlo;
        double b = hi;
        for (int it = 0; it < 200 && (b - a) > 1e-17 * std::max(1.0, std::abs(a)); ++it) {
            const double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) {
                break;
            }
            const double fm = objective_derivative(p, *segment, mid, base_scale);
            if ((fa < 0.0) == (fm < 0.0)) {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        root = 0.5 * (a + b);
        // Newton polish on the 1-D derivative
        for (int it = 0; it < 4; ++it) {
            const double f = objective_derivative(p, *segment, root, base_scale);
            const double fp = objective_curvature(p, *segment, root, base_scale);
            if (!(fp > 0.0)) {
                break;
            }
            const double next = root - f / fp;
            if (!(next > lo && next < hi)) {
                break;
            }
            if (std::abs(next - root) <= 1e-17 * std::max(1.0, std::abs(root))) {
                root = next;
                break;
            }
            root = next;
        }
    }

    const NCandidate cand = candidate_at(root);
    if (!std::isfinite(cand.n) || !std::isfinite(cand.s)) {
        throw NumericError("solve_transcendental: non-finite candidate");
    }
    return cand;
}

RDPoint rate_at(const QubitState &rho, double q0, double D) {
    if (q0 < 0.0 || q0 > 1.0) {
        throw std::domain_error("rate_at: q0 outside [0, 1]");
    }
    const double d_zero = zero_crossing(rho, q0);
    if (D >= d_zero) {
        return RDPoint{D, 0.0, q0 * rho.rho1, q0 * std::abs(rho.rho2), 0.0, Branch::zero_rate};
    }
    if (q0 <= 0.0 || q0 >= 1.0) {
        throw InfeasibleDistortionError(
            "rate_at: degenerate output pmf only reaches the zero-rate distortion");
    }
    if (rho.is_pure()) {
        throw InfeasibleDistortionError(
            "rate_at: pure state only achieves the zero-rate distortion point");
    }

    const NCandidate cand = solve_transcendental(rho, q0, D);
    const double e1v = e1(cand);
    const double e2v = e2(cand, rho);
    const double r_nats = rho.entropy(LogBase::e) -
                          q0 * binary_entropy(clamp01(0.5 - e1v / q0), LogBase::e) -
                          (1.0 - q0) * binary_entropy(clamp01(0.5 - e2v / (1.0 - q0)), LogBase::e);
    double r_bits = r_nats / kLn2;
    if (r_bits < 0.0) {
        if (r_bits < -1e-9) {
            throw NumericError("rate_at: negative rate beyond tolerance");
        }
        r_bits = 0.0;
    }
    const SystemParams p = system_params(rho, q0, D);
    return RDPoint{D, r_bits, cand.n, cand.s, std::abs(stationarity_residual(p, cand)),
                   Branch::interior};
}

HermitianOp candidate_op(const NCandidate &cand, cplx phase) {
    CMat m(2);
    m.at(0, 0) = cand.n;
    m.at(0, 1) = cand.s * phase;
    m.at(1, 0) = cand.s * std::conj(phase);
    m.at(1, 1) = cand.q0 - cand.n;
    return HermitianOp(std::move(m));
}

feasibility::Povm recover_povm(const QubitState &rho, const NCandidate &cand) {
    if (rho.determinant() <= tol::kPureDet) {
        throw PureStateError("recover_povm: singular state; zero-rate branch uses q0 I directly");
    }
    const Spectrum spec = eig_hermitian(rho.to_op());
    CMat inv_root(2);
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            cplx acc = 0.0;
            for (int k = 0; k < 2; ++k) {
                acc += spec.eigenvectors.at(r, k) /
                       std::sqrt(spec.eigenvalues[static_cast<std::size_t>(k)]) *
                       std::conj(spec.eigenvectors.at(c, k));
            }
            inv_root.at(r, c) = acc;
        }
    }
    const HermitianOp w(std::move(inv_root));
    const HermitianOp m0 = sandwich(w, candidate_op(cand, rho.phase()));
    const HermitianOp m1 = HermitianOp::identity(2) - m0;
    return feasibility::Povm({m0, m1});
}

feasibility::Povm povm_at(const QubitState &rho, double q0, const RDPoint &point) {
    switch (point.branch) {
        case Branch::zero_rate:
            return feasibility::Povm(
                {q0 * HermitianOp::identity(2), (1.0 - q0) * HermitianOp::identity(2)});
        case Branch::interior:
            return recover_povm(rho, NCandidate{point.n, point.s, q0});
        case Branch::infeasible:
            break;
    }
    throw std::domain_error("povm_at: infeasible point carries no measurement");
}

RDCurve curve(const QubitState &rho, double q0, std::span<const double> d_grid) {
    for (double d : d_grid) {
        if (!(d > 0.0 && d <= 1.0)) {
            throw std::invalid_argument("curve: grid values must lie in (0, 1]");
        }
    }
    RDCurve out;
    out.rho1 = rho.rho1;
    out.rho2 = rho.rho2;
    out.q0 = q0;
    out.points.resize(d_grid.size());

    std::vector<std::exception_ptr> errors(d_grid.size());
    auto solve_one = [&](std::size_t i) {
        const double d = d_grid[i];
        try {
            out.points[i] = rate_at(rho, q0, d);
        } catch (const InfeasibleDistortionError &) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            out.points[i] = RDPoint{d, nan, nan, nan, nan, Branch::infeasible};
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };

    const std::size_t n = d_grid.size();
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::min<std::size_t>(hw, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            solve_one(i);
        }
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w]() {
                for (std::size_t i = w; i < n; i += workers) {
                    solve_one(i);
                }
            });
        }
        for (std::thread &t : pool) {
            t.join();
        }
    }
    for (const std::exception_ptr &err : errors) {
        if (err) {
            std::rethrow_exception(err);
        }
    }
    return out;
}

}  // namespace qct::rd
