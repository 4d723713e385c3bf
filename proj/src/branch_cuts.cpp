#include "gi/branch_cuts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gi/errors.hpp"

namespace gi {

namespace {

Complex omega2_deriv(const SpectralInvariants& inv, Complex k) {
    const Complex w = k * k;
    return (32.0 * w * w * w + 4.0 * inv.x1 * w + 2.0 * inv.x2) * k;
}

// On the soliton constraint (x2 = 0) the non-ray part of {Im Omega^2 = 0}
// has the polar form r^4 = -x1 / (8 cos 4 theta).
double contour_radius(double x1, double theta) {
    const double c4 = std::cos(4.0 * theta);
    return std::pow(-x1 / (8.0 * c4), 0.25);
}

Cut arc_cut(double x1, double theta_lo, double theta_hi, Complex z_lo, Complex z_hi,
            int samples) {
    Cut cut;
    cut.path.pts.push_back(z_lo);
    for (int j = 1; j + 1 < samples; ++j) {
        const double th = theta_lo + (theta_hi - theta_lo) * j / (samples - 1.0);
        cut.path.pts.push_back(std::polar(contour_radius(x1, th), th));
    }
    cut.path.pts.push_back(z_hi);
    return cut;
}

Cut transform_cut(const Cut& cut, Complex scale, bool conj_first) {
    Cut out;
    out.to_infinity = cut.to_infinity;
    out.ray_dir = conj_first ? scale * std::conj(cut.ray_dir) : scale * cut.ray_dir;
    out.path.pts.reserve(cut.path.size());
    for (const auto& z : cut.path.pts)
        out.path.pts.push_back(conj_first ? scale * std::conj(z) : scale * z);
    return out;
}

// Case x2 = 0, disc < 0: all eight zeroes lie on the circle
// r0 = (x3/4)^{1/8}; kappa_plus determines the base angle.
void append_conjugate_pair_arcs(BranchCutSet& set, const SpectralInvariants& inv,
                                bool across_diagonals, int samples) {
    const double r0 = std::pow(inv.x3 / 4.0, 0.125);
    const double theta = std::arg(inv.kappa_plus) / 4.0;
    for (int n = 0; n < 8; ++n)
        set.branch_points.push_back(
            {std::polar(r0, (n % 2 ? -theta : theta) + (n / 2) * kPi / 2.0), 1});
    for (int n = 0; n < 4; ++n) {
        const double rot = n * kPi / 2.0;
        double lo, hi;
        if (across_diagonals) {
            lo = theta + rot;             // theta in (pi/8, pi/4)
            hi = kPi / 2.0 - theta + rot; // mirror zero across the diagonal
        } else {
            lo = -theta + rot;            // theta in (0, pi/8); arc crosses the half-axis
            hi = theta + rot;
        }
        set.cuts.push_back(arc_cut(inv.x1, lo, hi, std::polar(r0, lo),
                                   std::polar(r0, hi), samples));
    }
}

// Case x2 = 0, disc > 0, x1 > 0: zeroes at radii |kappa_pm|^{1/4} on the
// diagonals. The cut leaves the inner zero inward along the diagonal, loops
// through the adjacent octant and comes back onto the diagonal beyond the
// outer zero; the diagonal pieces lie on the contour Im Omega = 0, which is
// what lets them meet the closure of a D1 component from both sides.
void append_diagonal_loop_cuts(BranchCutSet& set, const SpectralInvariants& inv) {
    const double r_in = std::pow(std::abs(inv.kappa_plus.real()), 0.25);
    const double r_out = std::pow(std::abs(inv.kappa_minus.real()), 0.25);
    const double rho = 0.5 * r_in;
    const double big = 1.6 * r_out;
    const double bulge = kPi / 5.0;
    const int loop_pts = 25;

    Cut q1;
    const Complex diag = std::polar(1.0, kPi / 4.0);
    q1.path.pts.push_back(r_in * diag);
    q1.path.pts.push_back(rho * diag);
    for (int j = 1; j < loop_pts; ++j) {
        const double t = j / static_cast<double>(loop_pts);
        const double r = rho * std::pow(big / rho, t);
        const double th = kPi / 4.0 + bulge * std::sin(kPi * t);
        q1.path.pts.push_back(std::polar(r, th));
    }
    q1.path.pts.push_back(big * diag);
    q1.path.pts.push_back(r_out * diag);

    set.cuts.push_back(q1);
    set.cuts.push_back(transform_cut(q1, -1.0, true));  // second quadrant
    set.cuts.push_back(transform_cut(q1, -1.0, false)); // third quadrant
    set.cuts.push_back(transform_cut(q1, 1.0, true));   // fourth quadrant
    for (int n = 0; n < 4; ++n) {
        const Complex d = std::polar(1.0, (2.0 * n + 1.0) * kPi / 4.0);
        set.branch_points.push_back({r_in * d, 1});
        set.branch_points.push_back({r_out * d, 1});
    }
}

// Case x1 = x2 = 0: zeroes at r0 e^{i(2n+1)pi/8}. Radial pieces on the
// contour plus a circular detour around the origin crossing each half-axis.
void append_radial_detour_cuts(BranchCutSet& set, const SpectralInvariants& inv) {
    const double r0 = std::pow(inv.x3 / 4.0, 0.125);
    const double rho = 0.5 * r0;
    Cut base;
    const double th = kPi / 8.0;
    base.path.pts.push_back(std::polar(r0, th));
    base.path.pts.push_back(std::polar(rho, th));
    for (int j = 1; j < 8; ++j)
        base.path.pts.push_back(std::polar(rho, th - 2.0 * th * j / 8.0));
    base.path.pts.push_back(std::polar(rho, -th));
    base.path.pts.push_back(std::polar(r0, -th));
    for (int n = 0; n < 4; ++n) {
        set.cuts.push_back(transform_cut(base, std::polar(1.0, n * kPi / 2.0), false));
        set.branch_points.push_back({std::polar(r0, th + n * kPi / 2.0), 1});
        set.branch_points.push_back({std::polar(r0, -th + n * kPi / 2.0), 1});
    }
}

// Plane-wave odd zeroes come from the quadratic factor w^2 + b w + x3/b^2 of
// the quartic in w = k^2.
std::pair<Complex, Complex> plane_wave_w_roots(const SpectralInvariants& inv) {
    const double b = *inv.b;
    const Complex disc_w = Complex(b * b - 4.0 * inv.x3 / (b * b), 0.0);
    const Complex s = std::sqrt(disc_w);
    return {(-b + s) / 2.0, (-b - s) / 2.0};
}

void append_real_segment_cuts(BranchCutSet& set, const SpectralInvariants& inv) {
    const auto [wp, wm] = plane_wave_w_roots(inv);
    const double k1 = std::sqrt(std::max(wp.real(), 0.0));
    const double k2 = std::sqrt(std::max(wm.real(), 0.0));
    const double degenerate = 1e-7 * (1.0 + k1);
    if (k2 <= degenerate) {
        // Inner pair collapsed onto the (even-order) zero at the origin.
        Cut c;
        c.path.pts = {Complex(-k1, 0.0), Complex(0.0, 0.0), Complex(k1, 0.0)};
        set.cuts.push_back(c);
        set.branch_points.push_back({Complex(k1, 0.0), 1});
        set.branch_points.push_back({Complex(-k1, 0.0), 1});
        return;
    }
    Cut right, left;
    right.path.pts = {Complex(k2, 0.0), Complex(k1, 0.0)};
    left.path.pts = {Complex(-k1, 0.0), Complex(-k2, 0.0)};
    set.cuts.push_back(right);
    set.cuts.push_back(left);
    for (const double k : {k1, k2, -k1, -k2})
        set.branch_points.push_back({Complex(k, 0.0), 1});
}

// Follows {Im Omega^2 = 0, Re Omega^2 > 0} from the first-quadrant zero z0
// by predictor/corrector steps on the polynomial Omega^2. Depending on the
// contour topology the arm either escapes to radius r_stop asymptoting the
// e^{i pi/4} diagonal (generic middle band) or descends to a junction on the
// real axis (near the case thresholds). Steps are capped near the other
// zeroes and Re Omega^2 > 0 is re-checked so the walk cannot hop onto the
// negative branch.
struct TracedArm {
    enum class End { Escaped, RealAxis, ImagAxis };
    Polyline path; // starts at z0
    End end = End::Escaped;
};

TracedArm trace_arm_from_zero(const SpectralInvariants& inv, Complex z0,
                              double r_stop) {
    std::vector<Complex> other_zeros;
    for (const auto& r : omega_squared_roots(inv))
        if (std::abs(r.root - z0) > 1e-9 * (1.0 + std::abs(z0)))
            other_zeros.push_back(r.root);
    auto nearest_other = [&](Complex p) {
        double d = std::numeric_limits<double>::infinity();
        for (const auto& z : other_zeros) d = std::min(d, std::abs(p - z));
        return d;
    };

    TracedArm arm;
    arm.path.pts.push_back(z0);
    const Complex d0 = omega2_deriv(inv, z0);
    if (std::abs(d0) == 0.0)
        throw ConvergenceError("contour arm: degenerate zero");
    Complex tangent = std::conj(d0) / std::abs(d0); // Re Omega^2 grows this way
    double h = std::min(0.01 * (1.0 + std::abs(z0)), 0.2 * nearest_other(z0));
    Complex k = z0;
    const double leave = 1e-5 * (1.0 + std::abs(z0));
    const int max_steps = 20000;
    for (int step = 0; step < max_steps && std::abs(k) < r_stop; ++step) {
        Complex trial = k + h * tangent;
        bool ok = true;
        for (int it = 0; it < 3; ++it) {
            const Complex g = omega_squared_value(inv, trial);
            const Complex gp = omega2_deriv(inv, trial);
            const double denom = (gp * (kI * tangent)).imag();
            if (std::abs(denom) < 1e-300) { ok = false; break; }
            const double delta = -g.imag() / denom;
            trial += delta * kI * tangent;
            if (std::abs(delta) < 1e-13 * (1.0 + std::abs(trial))) break;
        }
        if (ok && std::abs(k - z0) > leave)
            ok = omega_squared_value(inv, trial).real() > 0.0;
        if (!ok || std::abs(trial - (k + h * tangent)) > 0.5 * h) {
            h *= 0.5;
            if (h < 1e-10 * (1.0 + std::abs(k))) break; // stuck at a junction
            continue;
        }
        // Both coordinate axes belong to {Im Omega^2 = 0}; the arm can only
        // meet them at a junction, which is where it gets paired with a
        // mirror-image arm. Near-tangencies (just inside the case
        // thresholds) must not be jumped over, so steps shrink towards the
        // axes; a genuine junction is recognised by actually converging.
        if (trial.imag() <= 0.0 || trial.real() <= 0.0) break;
        k = trial;
        if (std::min(k.real(), k.imag()) < 1e-4 * (1.0 + std::abs(k))) break;
        arm.path.pts.push_back(k);
        const Complex gp = omega2_deriv(inv, k);
        Complex t_new = std::conj(gp) / std::abs(gp);
        if ((t_new * std::conj(tangent)).real() < 0.0) t_new = -t_new;
        tangent = t_new;
        const double axis_dist = std::min(k.real(), k.imag());
        h = std::min({h * 1.4, 0.05 * (1.0 + std::abs(k)),
                      std::max(0.2 * nearest_other(k), 1e-4 * (1.0 + std::abs(k))),
                      std::max(0.3 * axis_dist, 2e-5 * (1.0 + std::abs(k)))});
    }
    if (std::abs(k) >= r_stop) return arm;
    const double stall_tol = 0.05 * (1.0 + std::abs(k));
    if (k.imag() <= k.real()) {
        if (k.imag() > 0.5 * z0.imag() + stall_tol)
            throw ConvergenceError("contour arm: walk stalled away from the axes");
        arm.path.pts.push_back(Complex(k.real(), 0.0));
        arm.end = TracedArm::End::RealAxis;
    } else {
        if (k.real() > 0.5 * z0.real() + stall_tol)
            throw ConvergenceError("contour arm: walk stalled away from the axes");
        arm.path.pts.push_back(Complex(0.0, k.imag()));
        arm.end = TracedArm::End::ImagAxis;
    }
    return arm;
}

// Middle-band plane-wave cuts. Generically the four contour arms escape to
// infinity along the diagonals (one cut per quadrant zero); near the case
// thresholds they descend to junctions on the real axis instead, and the
// zeroes are then paired vertically across the axis instead.
void append_mid_band_cuts(BranchCutSet& set, const SpectralInvariants& inv,
                          double r_stop) {
    const auto [wp, wm] = plane_wave_w_roots(inv);
    (void)wm;
    const Complex p1 = std::sqrt(wp); // first-quadrant zero
    for (const Complex z : {p1, -std::conj(p1), -p1, std::conj(p1)})
        set.branch_points.push_back({z, 1});

    const TracedArm arm = trace_arm_from_zero(inv, p1, r_stop);
    switch (arm.end) {
        case TracedArm::End::Escaped: {
            Cut q1;
            q1.path = arm.path;
            q1.to_infinity = true;
            q1.ray_dir = std::polar(1.0, kPi / 4.0);
            set.cuts.push_back(q1);
            set.cuts.push_back(transform_cut(q1, -1.0, true));
            set.cuts.push_back(transform_cut(q1, -1.0, false));
            set.cuts.push_back(transform_cut(q1, 1.0, true));
            return;
        }
        case TracedArm::End::RealAxis: {
            Cut right; // z0 down through the junction to conj(z0)
            right.path = arm.path;
            for (auto it = arm.path.pts.rbegin() + 1; it != arm.path.pts.rend(); ++it)
                right.path.pts.push_back(std::conj(*it));
            set.cuts.push_back(right);
            set.cuts.push_back(transform_cut(right, -1.0, false));
            return;
        }
        case TracedArm::End::ImagAxis: {
            Cut upper; // z0 across the junction to -conj(z0)
            upper.path = arm.path;
            for (auto it = arm.path.pts.rbegin() + 1; it != arm.path.pts.rend(); ++it)
                upper.path.pts.push_back(-std::conj(*it));
            set.cuts.push_back(upper);
            set.cuts.push_back(transform_cut(upper, 1.0, true)); // lower pair
            return;
        }
    }
}

void append_horizontal_chord_cuts(BranchCutSet& set, const SpectralInvariants& inv) {
    const auto [wp, wm] = plane_wave_w_roots(inv);
    (void)wm;
    const Complex p1 = std::sqrt(wp); // upper half-plane, first quadrant
    Cut upper, lower;
    upper.path.pts = {-std::conj(p1), p1};
    lower.path.pts = {std::conj(p1), -p1};
    set.cuts.push_back(upper);
    set.cuts.push_back(lower);
    for (const Complex z : {p1, -std::conj(p1), -p1, std::conj(p1)})
        set.branch_points.push_back({z, 1});
}

} // namespace

std::vector<Complex> secondary_point_candidates(const ParameterTriple& t) {
    // Zeroes of (2 alpha k^2 - i conj(c)) and (2 alpha k^2 + i c).
    std::vector<Complex> out;
    if (t.c == Complex(0.0, 0.0)) return out;
    const Complex w1 = kI * std::conj(t.c) / (2.0 * t.alpha);
    const Complex w2 = -kI * t.c / (2.0 * t.alpha);
    for (const Complex w : {w1, w2}) {
        const Complex r = std::sqrt(w);
        out.push_back(r);
        out.push_back(-r);
    }
    return out;
}

BranchCutSet build_branch_cuts(const SpectralInvariants& inv, CaseLabel label,
                               const CutOptions& opt) {
    BranchCutSet set;
    switch (label) {
        case CaseLabel::SolitonDiscZero:
            return set; // perfect square, no branch points at all
        case CaseLabel::SolitonDiscNegX1Pos:
            append_conjugate_pair_arcs(set, inv, /*across_diagonals=*/true,
                                       opt.arc_samples);
            return set;
        case CaseLabel::SolitonDiscPosX1Pos:
            append_diagonal_loop_cuts(set, inv);
            return set;
        case CaseLabel::SolitonDiscNegX1Neg:
            append_conjugate_pair_arcs(set, inv, /*across_diagonals=*/false,
                                       opt.arc_samples);
            return set;
        case CaseLabel::SolitonDiscNegX1Zero:
            append_radial_detour_cuts(set, inv);
            return set;
        case CaseLabel::PwBLow:
            if (!inv.b) throw UnsupportedCaseError("plane-wave case without b");
            append_real_segment_cuts(set, inv);
            return set;
        case CaseLabel::PwBMid: {
            if (!inv.b) throw UnsupportedCaseError("plane-wave case without b");
            double r_stop = opt.trace_radius;
            if (r_stop <= 0.0) {
                SpectralInvariants tmp = inv;
                const auto roots = omega_squared_roots(tmp);
                r_stop = 8.0 * (1.0 + max_root_modulus(roots));
            }
            append_mid_band_cuts(set, inv, r_stop);
            return set;
        }
        case CaseLabel::PwBHigh:
            if (!inv.b) throw UnsupportedCaseError("plane-wave case without b");
            append_horizontal_chord_cuts(set, inv);
            return set;
        case CaseLabel::SolitonDiscPosX1Nonpos:
        case CaseLabel::OutsideScope:
            throw UnsupportedCaseError("build_branch_cuts: no cut layout for " +
                                       to_string(label));
    }
    throw UnsupportedCaseError("build_branch_cuts: unknown case");
}

BranchCutSet build_branch_cuts(const ParameterTriple& triple, CaseLabel label,
                               const CutOptions& opt) {
    BranchCutSet set = build_branch_cuts(derive_invariants(triple), label, opt);
    set.secondary_points = secondary_point_candidates(triple);
    return set;
}

double distance_to_cuts(const BranchCutSet& cuts, Complex k) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& cut : cuts.cuts) {
        d = std::min(d, point_polyline_distance(k, cut.path));
        if (cut.to_infinity && !cut.path.empty()) {
            const Complex tail = cut.path.back();
            const Complex far = tail + cut.ray_dir * (64.0 * (1.0 + std::abs(tail)));
            d = std::min(d, point_segment_distance(k, tail, far));
        }
    }
    return d;
}

} // namespace gi
