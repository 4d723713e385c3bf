#ifndef GI_CLOSED_FORMS_HPP
#define GI_CLOSED_FORMS_HPP

#include <functional>
#include <optional>

#include "gi/params.hpp"
#include "gi/types.hpp"

namespace gi {

enum class SolutionKind { GiSoliton, DnlsSoliton, PlaneWave, GaugeImage };

// A closed-form solution sampled on the quarter plane, with its exact
// x-derivative. Value objects: copying is cheap, evaluation is pure.
struct SolutionProfile {
    SolutionKind kind = SolutionKind::GiSoliton;
    std::function<Complex(double, double)> value; // q(x,t)
    std::function<Complex(double, double)> dx;    // dq/dx (x,t)
    std::optional<ParameterTriple> triple;        // boundary triple, when exact

    Complex operator()(double x, double t) const { return value(x, t); }
};

// q_w(x,t) = phi_w(x) e^{-i arctan(tanh(sqrt(w) x))} e^{i w t} with
// phi_w(x) = 2 w^{1/4} / sqrt(cosh(2 sqrt(w) x)). Boundary values are
// exactly those of soliton_parameters(w).
SolutionProfile gi_soliton(double omega);

// The two-parameter family of stationary/moving solitons of the derivative
// NLS equation; requires omega > d^2/4.
SolutionProfile dnls_soliton(double omega, double d);

// Plane wave alpha e^{i(w t + b x)} with w = alpha^4/2 - b^2 + alpha^2 b.
// Not Schwartz: gauge_transform refuses it.
SolutionProfile plane_wave(double alpha, double b);

enum class GaugeDirection { DnlsToGi, GiToDnls };

// The unimodular gauge map between DNLS and GI solutions,
//   DnlsToGi: q(x,t) = u(x,t) exp(+i Int_x^inf |u(y,t)|^2 dy),
//   GiToDnls: u(x,t) = q(x,t) exp(-i Int_x^inf |q(y,t)|^2 dy).
// The phase integral uses adaptive quadrature plus a fitted exponential
// tail; TailError if the profile does not decay.
SolutionProfile gauge_transform(const SolutionProfile& u, GaugeDirection direction);

// Multiplies a profile by a constant factor (used for perturbation tests
// and the e^{-i pi/4} normalisation of the gauge image).
SolutionProfile scaled_profile(const SolutionProfile& q, Complex factor);

// Quadrature route for the DNLS phase integral Int_xi^inf phi^2; the d = 0
// closed form is pi - 4 arctan(tanh(sqrt(w) xi)).
double dnls_phase_integral_quadrature(double omega, double d, double xi);
double dnls_phase_integral_closed_form(double omega, double xi);

} // namespace gi

#endif
