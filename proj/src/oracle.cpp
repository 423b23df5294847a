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

#include "qct/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace qct::oracle {

namespace {

constexpr double kLn2 = 0.6931471805599453094172321;

double xlnx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// Constraint-line coefficients recovered from the operator square root, not
// from the solver's closed forms.
struct LineCoeffs {
    double a, b, c;
    double const_term;  // 1 - <1|rho^2|1> - q0 g3 (transport objective offset)
};

LineCoeffs line_coeffs(const QubitState &rho, double q0, double D) {
    const HermitianOp rho_op = rho.to_op();
    const HermitianOp root = sqrt_psd(rho_op);
    const HermitianOp g = sandwich(root, HermitianOp::diagonal({1.0, -1.0}));

    const double g1 = g.at(0, 0).real();
    const double g3 = g.at(1, 1).real();
    const double g2 = (g.at(0, 1) * std::conj(rho.phase())).real();

    const CMat rho_sq = rho_op.mat() * rho_op.mat();
    const double bra1 = rho_sq.at(1, 1).real();

    LineCoeffs lc{};
    lc.a = g1 - g3;
    lc.b = 2.0 * g2;
    lc.c = q0 * g3 + bra1 - 1.0 + D;
    lc.const_term = 1.0 - bra1 - q0 * g3;
    return lc;
}

struct Disc {
    double cn, cs, r;
};

Disc disc1(double q0) { return {q0 / 2.0, 0.0, q0 / 2.0}; }

Disc disc2(const QubitState &rho, double q0) {
    return {rho.rho1 - (1.0 - q0) / 2.0, std::abs(rho.rho2), (1.0 - q0) / 2.0};
}

bool line_disc_interval(double x0n, double x0s, double un, double us, const Disc &d, double &lo,
                        double &hi) {
    const double dn = x0n - d.cn;
    const double ds = x0s - d.cs;
    const double beta = un * dn + us * ds;
    const double gamma = dn * dn + ds * ds - d.r * d.r;
    double disc = beta * beta - gamma;
    if (disc < 0.0) {
        if (disc < -1e-14) {
            return false;
        }
        disc = 0.0;
    }
    const double root = std::sqrt(disc);
    lo = -beta - root;
    hi = -beta + root;
    return true;
}

// Scalar objective at (n, s), evaluated through the eigenvalues of N and
// rho - N. x ln x at the boundary uses the exact limit, no epsilon shift.
double scalar_objective(const QubitState &rho, double q0, double n, double s) {
    const double m1 = q0 / 2.0;
    const double m2 = (1.0 - q0) / 2.0;
    const double e1v = std::hypot(n - m1, s);
    const double e2v = std::hypot(n - rho.rho1 + m2, s - std::abs(rho.rho2));
    const double la = m1 + e1v;
    const double lb = std::max(m1 - e1v, 0.0);
    const double ma = m2 + e2v;
    const double mb = std::max(m2 - e2v, 0.0);
    double acc = xlnx(la) + xlnx(lb) + xlnx(ma) + xlnx(mb);
    if (q0 > 0.0) {
        acc -= q0 * std::log(q0);
    }
    if (q0 < 1.0) {
        acc -= (1.0 - q0) * std::log(1.0 - q0);
    }
    return acc;
}

}  // namespace

std::optional<LineSegment> feasible_segment(const QubitState &rho, double q0, double D) {
    if (q0 <= 0.0 || q0 >= 1.0) {
        return std::nullopt;
    }
    const LineCoeffs lc = line_coeffs(rho, q0, D);
    const double norm2 = lc.a * lc.a + lc.b * lc.b;
    if (norm2 <= 0.0) {
        return std::nullopt;
    }
    LineSegment seg;
    seg.n0 = -lc.c * lc.a / norm2;
    seg.s0 = -lc.c * lc.b / norm2;
    const double nrm = std::sqrt(norm2);
    seg.un = -lc.b / nrm;
    seg.us = lc.a / nrm;

    double lo1, hi1, lo2, hi2;
    if (!line_disc_interval(seg.n0, seg.s0, seg.un, seg.us, disc1(q0), lo1, hi1)) {
        return std::nullopt;
    }
    if (!line_disc_interval(seg.n0, seg.s0, seg.un, seg.us, disc2(rho, q0), lo2, hi2)) {
        return std::nullopt;
    }
    seg.t_lo = std::max(lo1, lo2);
    seg.t_hi = std::min(hi1, hi2);
    if (seg.t_lo > seg.t_hi) {
        return std::nullopt;
    }
    return seg;
}

LineMinimum golden_min_on_line(const QubitState &rho, double q0, double D) {
    const auto seg = feasible_segment(rho, q0, D);
    if (!seg) {
        throw InfeasibleDistortionError("golden_min_on_line: empty feasible segment");
    }
    auto value = [&](double t) {
        const auto [n, s] = seg->point_at(t);
        return scalar_objective(rho, q0, n, s);
    };

    constexpr double kInvPhi = 0.6180339887498948482;
    double a = seg->t_lo;
    double b = seg->t_hi;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = value(x1);
    double f2 = value(x2);
    while (b - a > 1e-12) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = value(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = value(x2);
        }
    }
    const double t = 0.5 * (a + b);
    LineMinimum out;
    const auto [n, s] = seg->point_at(t);
    out.n = n;
    out.s = s;
    out.objective_nats = value(t);
    return out;
}

double rate_bits(const QubitState &rho, double q0, double D) {
    if (q0 <= 0.0 || q0 >= 1.0) {
        return 0.0;
    }
    const LineCoeffs lc = line_coeffs(rho, q0, D);
    // slack of the unconstrained optimum q0 rho on the distortion half-plane
    const double slack = lc.a * q0 * rho.rho1 + lc.b * q0 * std::abs(rho.rho2) + lc.c;
    if (slack >= -1e-12) {
        return 0.0;
    }
    const LineMinimum m = golden_min_on_line(rho, q0, D);
    const double h_nats = von_neumann_entropy(rho.to_op(), LogBase::e);
    return std::max(h_nats + m.objective_nats, 0.0) / kLn2;
}

GridMinimum grid_min_ot(const QubitState &rho, double q0, int resolution) {
    if (resolution < 100) {
        throw std::invalid_argument("grid_min_ot: resolution must be at least 100");
    }
    const LineCoeffs lc = line_coeffs(rho, q0, /*D=*/0.0);
    auto objective = [&](double n, double s) { return lc.const_term - lc.a * n - lc.b * s; };

    const Disc d1 = disc1(q0);
    const Disc d2 = disc2(rho, q0);

    // candidate extreme points of the lens: per-circle extremes that lie in
    // the other disc, plus the circle intersection corners
    auto inside = [](const Disc &d, double n, double s) {
        const double dn = n - d.cn;
        const double ds = s - d.cs;
        return dn * dn + ds * ds <= d.r * d.r + 1e-13;
    };
    std::vector<std::pair<double, double>> anchors;
    auto push_if_feasible = [&](double n, double s) {
        if (inside(d1, n, s) && inside(d2, n, s)) {
            anchors.emplace_back(n, s);
        }
    };
    push_if_feasible(d1.cn - d1.r, d1.cs);
    push_if_feasible(d1.cn + d1.r, d1.cs);
    push_if_feasible(d1.cn, d1.cs - d1.r);
    push_if_feasible(d1.cn, d1.cs + d1.r);
    push_if_feasible(d2.cn - d2.r, d2.cs);
    push_if_feasible(d2.cn + d2.r, d2.cs);
    push_if_feasible(d2.cn, d2.cs - d2.r);
    push_if_feasible(d2.cn, d2.cs + d2.r);
    // circle-circle intersection corners
    const double dx = d2.cn - d1.cn;
    const double dy = d2.cs - d1.cs;
    const double dist = std::hypot(dx, dy);
    if (dist > 1e-300 && dist <= d1.r + d2.r + 1e-13 &&
        dist >= std::abs(d1.r - d2.r) - 1e-13) {
        const double along = (dist * dist + d1.r * d1.r - d2.r * d2.r) / (2.0 * dist);
        const double h_sq = d1.r * d1.r - along * along;
        const double h = std::sqrt(std::max(h_sq, 0.0));
        const double bx = d1.cn + along * dx / dist;
        const double by = d1.cs + along * dy / dist;
        push_if_feasible(bx + h * (-dy / dist), by + h * (dx / dist));
        push_if_feasible(bx - h * (-dy / dist), by - h * (dx / dist));
    }
    // the point q0 rho is always feasible; guarantees a non-empty scan
    anchors.emplace_back(q0 * rho.rho1, q0 * std::abs(rho.rho2));

    double n_min = anchors.front().first, n_max = anchors.front().first;
    double s_min = anchors.front().second, s_max = anchors.front().second;
    for (const auto &[n, s] : anchors) {
        n_min = std::min(n_min, n);
        n_max = std::max(n_max, n);
        s_min = std::min(s_min, s);
        s_max = std::max(s_max, s);
    }

    GridMinimum out;
    out.value = std::numeric_limits<double>::infinity();
    auto consider = [&](double n, double s) {
        const double v = objective(n, s);
        if (v < out.value) {
            out.value = v;
            out.n = n;
            out.s = s;
        }
    };
    for (const auto &[n, s] : anchors) {
        consider(n, s);
    }

    // column scan: exact feasible s-interval per grid abscissa; the linear
    // objective attains its column minimum at an interval endpoint
    const double span = n_max - n_min;
    for (int j = 0; j <= resolution; ++j) {
        const double n = n_min + span * static_cast<double>(j) / resolution;
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        bool ok = true;
        for (const Disc &d : {d1, d2}) {
            const double dn = n - d.cn;
            double rad_sq = d.r * d.r - dn * dn;
            if (rad_sq < 0.0) {
                if (rad_sq < -1e-14) {
                    ok = false;
                    break;
                }
                rad_sq = 0.0;
            }
            const double rad = std::sqrt(rad_sq);
            lo = std::max(lo, d.cs - rad);
            hi = std::min(hi, d.cs + rad);
        }
        if (!ok || lo > hi) {
            continue;
        }
        consider(n, lo);
        consider(n, hi);
    }

    const double cell_n = span / resolution;
    const double cell_s = (s_max - s_min) / resolution;
    out.accuracy_bound = std::sqrt(lc.a * lc.a + lc.b * lc.b) * std::hypot(cell_n, cell_s);
    return out;
}

ConvexityReport convexity_check(const rd::RDCurve &curve) {
    ConvexityReport rep;
    std::vector<std::pair<double, double>> pts;
    for (const rd::RDPoint &p : curve.points) {
        if (std::isfinite(p.R_bits)) {
            pts.emplace_back(p.D, p.R_bits);
        }
    }
    for (std::size_t i = 0; i + 2 < pts.size(); ++i) {
        const auto &[d1, r1] = pts[i];
        const auto &[d2, r2] = pts[i + 1];
        const auto &[d3, r3] = pts[i + 2];
        if (d3 - d1 <= 0.0) {
            continue;
        }
        const double interp = r1 + (r3 - r1) * (d2 - d1) / (d3 - d1);
        rep.max_violation = std::max(rep.max_violation, r2 - interp);
        ++rep.triples;
    }
    rep.pass = rep.max_violation <= 1e-6;
    return rep;
}

}  // namespace qct::oracle
