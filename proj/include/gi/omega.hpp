#ifndef GI_OMEGA_HPP
#define GI_OMEGA_HPP

#include <vector>

#include "gi/branch_cuts.hpp"
#include "gi/params.hpp"
#include "gi/types.hpp"

namespace gi {

struct OmegaOptions {
    double anchor_radius = 0.0; // 0 = automatic: 4 (1 + max root modulus)
    double eps_cut = 0.0;       // 0 = automatic: 1e-8 * anchor_radius
};

// Evaluates the branch of Omega(k) = sqrt(4k^8 + x1 k^4 + x2 k^2 + x3) fixed
// by Omega = 2k^4 + x1/4 + O(k^-2) at infinity, on the plane cut along the
// given BranchCutSet.
//
// Omega is assembled as a product of explicit square-root factors, one per
// cut: each factor carries the principal branch cut on the straight chord of
// its endpoint pair, and a parity flip on the region enclosed between the
// chord and the actual cut path moves the discontinuity onto the path. The
// result is continuous off the cuts, path-independent, and exactly invariant
// under k -> -k and k -> conj(k).
class OmegaEvaluator {
public:
    OmegaEvaluator(const SpectralInvariants& inv, BranchCutSet cuts,
                   OmegaOptions opt = {});

    // Throws OnCutError within eps_cut of a cut.
    Complex omega(Complex k) const;
    // No cut-distance guard; used by grid labelling where the caller already
    // classified the cells near cuts.
    Complex omega_unchecked(Complex k) const;

    Complex H(const ParameterTriple& t, Complex k) const;

    // E(k); throws PoleError near the zeros of k (conj c + 2 i alpha k^2) and
    // k (c - 2 i alpha k^2) where E blows up.
    Matrix2 E(const ParameterTriple& t, Complex k) const;

    // phi^b(t,k) = e^{i w t sigma3 / 2} E(k) e^{-i Omega t sigma3}.
    Matrix2 background_phi(const ParameterTriple& t, double time, Complex k) const;

    double distance_to_cuts(Complex k) const;

    const SpectralInvariants& invariants() const { return inv_; }
    const BranchCutSet& cuts() const { return cuts_; }
    double anchor_radius() const { return anchor_radius_; }
    double eps_cut() const { return eps_cut_; }
    double max_root_modulus() const { return max_root_; }

    // Fitted constant C with |Omega - 2k^4 - x1/4| <= C / |k|^2 near the
    // anchor radius.
    double asymptotic_error_constant() const;

private:
    struct PairFactor {
        Complex mid;            // chord midpoint
        Complex rot;            // e^{i arg(q - p)}
        double half_len = 0.0;  // |q - p| / 2
        bool curved = false;
        std::vector<Complex> lens; // cut path + chord, as a closed polygon
        BBox lens_box;
    };
    struct RayFactor {
        Complex p;       // finite endpoint (odd zero)
        Complex dir;     // escape direction, |dir| = 1
        Complex phase;   // e^{i (theta + pi)/2}
        bool curved = false;
        std::vector<Complex> lens;
        BBox lens_box;
    };

    Complex raw_product(Complex k) const;

    SpectralInvariants inv_;
    BranchCutSet cuts_;
    std::vector<PairFactor> pairs_;
    std::vector<RayFactor> rays_;
    std::vector<Complex> even_roots_; // one entry per factor (k - z)
    double sign_ = 1.0;
    double anchor_radius_ = 0.0;
    double eps_cut_ = 0.0;
    double max_root_ = 0.0;
};

} // namespace gi

#endif
