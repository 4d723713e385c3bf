#ifndef GI_PDE_VERIFY_HPP
#define GI_PDE_VERIFY_HPP

#include <string>

#include "gi/closed_forms.hpp"
#include "gi/omega.hpp"
#include "gi/types.hpp"

namespace gi {

struct Rectangle {
    double x0 = 0.0, x1 = 1.0;
    double t0 = 0.0, t1 = 1.0;
};

struct ResidualReport {
    double max_abs = 0.0;
    double mean_abs = 0.0;
    std::string grid; // description of the sample points
    double step = 0.0;
    int order = 4;
};

// Residual of i q_t + q_xx + i q^2 conj(q)_x + (1/2) |q|^4 q over a sample
// grid, all derivatives by fourth-order central differences of q alone.
ResidualReport gi_residual(const SolutionProfile& q, const Rectangle& region,
                           double h, int nx = 50, int nt = 50);

// The Lax pair matrices built from a profile.
Matrix2 lax_U(Complex q, Complex k);
Matrix2 lax_V(Complex q, Complex q_x, Complex k);

// Max-entry norm of A_t - B_x + [A, B] with A = -i k^2 sigma3 + U and
// B = -2 i k^4 sigma3 + V, derivatives by fourth-order differences.
double zero_curvature_residual(const SolutionProfile& q, double x, double t,
                               Complex k, double h);

// Residual of the background t-part equation
// phi_t + 2 i k^4 sigma3 phi = V^b phi at the given (t, k).
double background_tpart_residual(const ParameterTriple& triple,
                                 const OmegaEvaluator& ev, double t, Complex k,
                                 double h);

} // namespace gi

#endif
