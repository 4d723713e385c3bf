#include "gi/params.hpp"

#include <algorithm>
#include <cmath>

namespace gi {

std::string to_string(CaseLabel label) {
    switch (label) {
        case CaseLabel::SolitonDiscZero: return "SOLITON_DISC_ZERO";
        case CaseLabel::SolitonDiscNegX1Pos: return "SOLITON_DISC_NEG_X1_POS";
        case CaseLabel::SolitonDiscPosX1Pos: return "SOLITON_DISC_POS_X1_POS";
        case CaseLabel::SolitonDiscPosX1Nonpos: return "SOLITON_DISC_POS_X1_NONPOS";
        case CaseLabel::SolitonDiscNegX1Neg: return "SOLITON_DISC_NEG_X1_NEG";
        case CaseLabel::SolitonDiscNegX1Zero: return "SOLITON_DISC_NEG_X1_ZERO";
        case CaseLabel::PwBLow: return "PW_B_LOW";
        case CaseLabel::PwBMid: return "PW_B_MID";
        case CaseLabel::PwBHigh: return "PW_B_HIGH";
        case CaseLabel::OutsideScope: return "OUTSIDE_SCOPE";
    }
    return "UNKNOWN";
}

std::string to_string(FamilyId id) {
    switch (id) {
        case FamilyId::SolitonBranch: return "soliton-branch";
        case FamilyId::SolitonIsolated: return "soliton-isolated";
        case FamilyId::PlaneWaveLow: return "plane-wave-low";
        case FamilyId::PlaneWaveHigh: return "plane-wave-high";
    }
    return "unknown";
}

double constraint_scale(const ParameterTriple& t) {
    const double a2 = t.alpha * t.alpha;
    const double a6 = a2 * a2 * a2;
    return std::max({1.0, a6, std::abs(t.omega) * a2, std::norm(t.c)});
}

void validate(const ParameterTriple& t) {
    if (!(t.alpha > 0.0)) throw DomainError("ParameterTriple: alpha must be positive");
    if (!std::isfinite(t.alpha) || !std::isfinite(t.omega) ||
        !std::isfinite(t.c.real()) || !std::isfinite(t.c.imag()))
        throw DomainError("ParameterTriple: non-finite entry");
}

double soliton_constraint_residual(const ParameterTriple& t) {
    const double a = t.alpha;
    const double a2 = a * a, a3 = a2 * a, a6 = a3 * a3;
    return a6 - 2.0 * a2 * t.omega + 2.0 * std::norm(t.c) + 4.0 * a3 * t.c.imag();
}

std::pair<double, double> plane_wave_constraint_residual(const ParameterTriple& t) {
    const double a = t.alpha;
    const double a2 = a * a, a3 = a2 * a, a6 = a3 * a3;
    const double im = t.c.imag();
    return {t.c.real(), im * im + a2 * t.omega - a6 / 2.0 - a3 * im};
}

SpectralInvariants derive_invariants(const ParameterTriple& t, double tol_rel) {
    validate(t);
    const double a = t.alpha;
    const double a2 = a * a, a4 = a2 * a2;
    SpectralInvariants inv;
    inv.x1 = 2.0 * t.omega;
    inv.x2 = -soliton_constraint_residual(t) / 2.0;
    const double u = a4 + 4.0 * a * t.c.imag() - 2.0 * t.omega;
    inv.x3 = u * u / 16.0;
    inv.disc = inv.x1 * inv.x1 - 16.0 * inv.x3;
    const Complex root = std::sqrt(Complex(inv.disc, 0.0));
    inv.kappa_plus = (-inv.x1 + root) / 8.0;
    inv.kappa_minus = (-inv.x1 - root) / 8.0;
    const double cr = std::abs(t.c.real());
    if (cr <= tol_rel * std::abs(t.c) || t.c == Complex(0.0, 0.0))
        inv.b = t.c.imag() / a;
    return inv;
}

namespace {

const char* kEmptyCaseNote =
    "disc > 0 together with x2 = 0 forces x1 > 0; this case has no triples";

Verdict soliton_branch_verdict(const ParameterTriple& t, const SpectralInvariants& inv,
                               double tol, double scale) {
    Verdict v;
    const double disc_thr = tol * scale * scale;
    const double x1_thr = tol * scale;
    if (std::abs(inv.disc) <= disc_thr) {
        v.case_label = CaseLabel::SolitonDiscZero;
        v.admissible_candidate = true;
    } else if (inv.disc > 0.0) {
        if (inv.x1 > x1_thr) {
            v.case_label = CaseLabel::SolitonDiscPosX1Pos;
            v.witness = "branch cuts on the diagonal rays meet the unbounded D1 component";
        } else {
            v.case_label = CaseLabel::SolitonDiscPosX1Nonpos;
            v.witness = kEmptyCaseNote;
        }
    } else {
        if (std::abs(inv.x1) <= x1_thr) {
            v.case_label = CaseLabel::SolitonDiscNegX1Zero;
            v.witness = "radial branch cuts at arg k = (2n+1)pi/8 meet the unbounded D1 component";
        } else if (inv.x1 > 0.0) {
            v.case_label = CaseLabel::SolitonDiscNegX1Pos;
            v.witness = "branch cuts across the diagonal rays meet the unbounded D1 component";
        } else {
            v.case_label = CaseLabel::SolitonDiscNegX1Neg;
            v.witness = "branch cuts across the coordinate half-axes meet the unbounded D1 component";
        }
    }
    v.family_ids = family_membership(t, tol);
    return v;
}

Verdict plane_wave_verdict(const ParameterTriple& t, double b, double tol) {
    Verdict v;
    const double a2 = t.alpha * t.alpha;
    const double b_scale = std::max(1.0, a2);
    const double low_thr = -a2 / 2.0;
    const double high_thr = (2.0 + std::sqrt(6.0)) * a2;
    if (std::abs(b - low_thr) <= tol * b_scale || std::abs(b - high_thr) <= tol * b_scale)
        throw AmbiguousCaseError("plane-wave parameter b within tol of a case threshold; "
                                 "tighten tolerance or use exact input");
    if (b < low_thr) {
        v.case_label = CaseLabel::PwBLow;
        v.admissible_candidate = true;
    } else if (b > high_thr) {
        v.case_label = CaseLabel::PwBHigh;
        v.admissible_candidate = true;
    } else {
        v.case_label = CaseLabel::PwBMid;
        v.witness = "branch cuts from the quadrant branch points meet the unbounded D1 component";
    }
    v.family_ids = family_membership(t, tol);
    return v;
}

} // namespace

Verdict classify(const ParameterTriple& t, double tol) {
    validate(t);
    if (!(tol > 0.0)) throw DomainError("classify: tol must be positive");
    const double scale = constraint_scale(t);
    const SpectralInvariants inv = derive_invariants(t);
    if (std::abs(inv.x2) <= tol * scale)
        return soliton_branch_verdict(t, inv, tol, scale);
    const auto [re_c, pw_res] = plane_wave_constraint_residual(t);
    if (std::abs(re_c) <= tol * std::sqrt(scale) && std::abs(pw_res) <= tol * scale)
        return plane_wave_verdict(t, t.c.imag() / t.alpha, tol);
    Verdict v;
    v.case_label = CaseLabel::OutsideScope;
    v.witness = "satisfies neither the soliton constraint (x2 = 0) nor the plane-wave constraints";
    return v;
}

std::vector<FamilyId> family_membership(const ParameterTriple& t, double tol) {
    validate(t);
    const double a = t.alpha;
    const double a2 = a * a, a3 = a2 * a, a4 = a2 * a2;
    const double tol_c = tol * std::max(1.0, a3);
    const double tol_w = tol * std::max(1.0, a4);
    std::vector<FamilyId> out;

    // c = +-alpha sqrt(omega - alpha^4/16) - (alpha^3/4) i, omega >= alpha^4/16.
    // The real part is compared in squared form: near the omega = alpha^4/16
    // endpoint the square root turns one-ulp omega errors into ~1e-9 ones.
    if (t.omega >= a4 / 16.0 - tol_w && std::abs(t.c.imag() + a3 / 4.0) <= tol_c) {
        const double re_sq = t.c.real() * t.c.real();
        const double target_sq = a2 * (t.omega - a4 / 16.0);
        const double tol_sq = tol * std::max(1.0, a2 * (std::abs(t.omega) + a4));
        if (std::abs(re_sq - target_sq) <= tol_sq)
            out.push_back(FamilyId::SolitonBranch);
    }
    // (alpha, -alpha^4/4, -(alpha^3/2) i)
    if (std::abs(t.omega + a4 / 4.0) <= tol_w &&
        std::abs(t.c - Complex(0.0, -a3 / 2.0)) <= tol_c)
        out.push_back(FamilyId::SolitonIsolated);
    // c = alpha (alpha^2/2 -+ sqrt(3 alpha^4/4 - omega)) i
    if (std::abs(t.c.real()) <= tol_c) {
        const double s = std::sqrt(std::max(0.0, 0.75 * a4 - t.omega));
        if (t.omega <= -a4 / 4.0 + tol_w &&
            std::abs(t.c.imag() - a * (a2 / 2.0 - s)) <= tol_c)
            out.push_back(FamilyId::PlaneWaveLow);
        if (t.omega <= -(6.0 * std::sqrt(6.0) + 15.0) * a4 / 2.0 + tol_w &&
            std::abs(t.c.imag() - a * (a2 / 2.0 + s)) <= tol_c)
            out.push_back(FamilyId::PlaneWaveHigh);
    }
    return out;
}

ParameterTriple soliton_parameters(double omega) {
    if (!(omega > 0.0)) throw DomainError("soliton_parameters: omega must be positive");
    const double q = std::pow(omega, 0.25);
    return {2.0 * q, omega, Complex(0.0, -2.0 * q * q * q)};
}

} // namespace gi
