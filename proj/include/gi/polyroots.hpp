#ifndef GI_POLYROOTS_HPP
#define GI_POLYROOTS_HPP

#include <vector>

#include "gi/params.hpp"
#include "gi/types.hpp"

namespace gi {

struct RootMult {
    Complex root;
    int multiplicity = 1;
};

// Roots of the monic quartic w^4 + c3 w^3 + c2 w^2 + c1 w + c0 by
// Durand-Kerner simultaneous iteration with Newton polishing.
// Throws ConvergenceError if the residual cap is not met.
std::vector<Complex> durand_kerner_quartic(Complex c3, Complex c2, Complex c1,
                                           Complex c0, double tol = 1e-13,
                                           int max_iter = 400);

// The 8 zeroes of Omega^2(k) = 4k^8 + x1 k^4 + x2 k^2 + x3, obtained from the
// quartic in m = k^2, with coinciding roots merged into multiplicities.
// The returned set is closed under k -> -k and k -> conj(k).
std::vector<RootMult> omega_squared_roots(const SpectralInvariants& inv,
                                          double tol = 1e-9);

double max_root_modulus(const std::vector<RootMult>& roots);

Complex omega_squared_value(const SpectralInvariants& inv, Complex k);

} // namespace gi

#endif
