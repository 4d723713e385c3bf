#ifndef GI_PARAMS_HPP
#define GI_PARAMS_HPP

#include <optional>
#include <string>
#include <vector>

#include "gi/errors.hpp"
#include "gi/types.hpp"

namespace gi {

// Boundary data (alpha, omega, c): q(0,t) ~ alpha e^{i omega t},
// q_x(0,t) ~ c e^{i omega t}.
struct ParameterTriple {
    double alpha = 1.0;   // > 0
    double omega = 0.0;
    Complex c{0.0, 0.0};
};

// Coefficients of Omega^2(k) = 4k^8 + x1 k^4 + x2 k^2 + x3 and derived
// quantities of the case analysis.
struct SpectralInvariants {
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;
    double disc = 0.0;            // x1^2 - 16 x3
    Complex kappa_plus{};         // (-x1 + sqrt(disc)) / 8
    Complex kappa_minus{};        // (-x1 - sqrt(disc)) / 8
    std::optional<double> b;      // plane-wave wavenumber, when Re c ~ 0
};

enum class CaseLabel {
    SolitonDiscZero,      // x2 = 0, disc = 0            (admissible candidate)
    SolitonDiscNegX1Pos,  // x2 = 0, disc < 0, x1 > 0
    SolitonDiscPosX1Pos,  // x2 = 0, disc > 0, x1 > 0
    SolitonDiscPosX1Nonpos, // x2 = 0, disc > 0, x1 <= 0 (provably empty)
    SolitonDiscNegX1Neg,  // x2 = 0, disc < 0, x1 < 0
    SolitonDiscNegX1Zero, // x2 = 0, disc < 0, x1 = 0
    PwBLow,               // plane wave, b <= -alpha^2/2  (admissible candidate)
    PwBMid,               // plane wave, -alpha^2/2 < b < (2+sqrt 6) alpha^2
    PwBHigh,              // plane wave, b >= (2+sqrt 6) alpha^2 (admissible candidate)
    OutsideScope,
};

std::string to_string(CaseLabel label);

enum class FamilyId {
    SolitonBranch,    // c = +-alpha sqrt(omega - alpha^4/16) - (alpha^3/4) i, omega >= alpha^4/16
    SolitonIsolated,  // (alpha, -alpha^4/4, -(alpha^3/2) i)
    PlaneWaveLow,     // c = alpha (alpha^2/2 - sqrt(3 alpha^4/4 - omega)) i, omega <= -alpha^4/4
    PlaneWaveHigh,    // c = alpha (alpha^2/2 + sqrt(3 alpha^4/4 - omega)) i, omega <= -(6 sqrt 6 + 15) alpha^4 / 2
};

std::string to_string(FamilyId id);

struct Verdict {
    CaseLabel case_label = CaseLabel::OutsideScope;
    bool admissible_candidate = false;
    std::vector<FamilyId> family_ids;
    std::optional<std::string> witness;  // for inadmissible cases: the obstruction found
};

// Magnitude scale for the degree-6 constraint checks.
double constraint_scale(const ParameterTriple& t);

void validate(const ParameterTriple& t);

SpectralInvariants derive_invariants(const ParameterTriple& t, double tol_rel = 1e-9);

// The arithmetic case analysis. Throws AmbiguousCaseError when the triple
// sits within tol of a plane-wave threshold whose two sides disagree on
// admissibility.
Verdict classify(const ParameterTriple& t, double tol = 1e-9);

std::vector<FamilyId> family_membership(const ParameterTriple& t, double tol = 1e-9);

// The one-parameter soliton family: (2 w^{1/4}, w, -2 w^{3/4} i).
ParameterTriple soliton_parameters(double omega);

// Residual of the soliton constraint alpha^6 - 2 alpha^2 w + 2|c|^2 + 4 alpha^3 Im c = 0.
double soliton_constraint_residual(const ParameterTriple& t);

// Residuals of the plane-wave constraints Re c = 0 and
// Im(c)^2 + alpha^2 w = alpha^6/2 + alpha^3 Im c.
std::pair<double, double> plane_wave_constraint_residual(const ParameterTriple& t);

} // namespace gi

#endif
