#ifndef GI_BRANCH_CUTS_HPP
#define GI_BRANCH_CUTS_HPP

#include <optional>
#include <vector>

#include "gi/geometry.hpp"
#include "gi/params.hpp"
#include "gi/polyroots.hpp"

namespace gi {

// One branch cut. path.front() and path.back() are the paired odd-order
// zeroes of Omega^2, except for cuts escaping to infinity, where path.back()
// is a truncation point and the cut continues along ray_dir.
struct Cut {
    Polyline path;
    bool to_infinity = false;
    Complex ray_dir{1.0, 0.0};
};

struct BranchCutSet {
    std::vector<RootMult> branch_points;   // odd-multiplicity zeroes only
    std::vector<Cut> cuts;
    std::vector<Complex> secondary_points; // zeroes/poles of (2 Omega - H)/(2 Omega)
};

struct CutOptions {
    // Radius out to which infinity-bound cuts are traced before continuing
    // as straight rays. 0 = automatic (scaled to the root moduli).
    double trace_radius = 0.0;
    int arc_samples = 33;
};

// Case-specific cut layouts satisfying the symmetry/connectivity assumptions:
// invariant under k -> -k and k -> conj(k), connected complement, cuts meeting
// only transversely, every endpoint an odd-order zero. Throws
// UnsupportedCaseError for OUTSIDE_SCOPE.
BranchCutSet build_branch_cuts(const SpectralInvariants& inv, CaseLabel label,
                               const CutOptions& opt = {});

// Same, with secondary_points filled in (they need c and alpha, which the
// invariants alone do not determine).
BranchCutSet build_branch_cuts(const ParameterTriple& triple, CaseLabel label,
                               const CutOptions& opt = {});

// The four zeroes of (2 alpha k^2 - i conj(c))(2 alpha k^2 + i c), i.e. the
// points where (2 Omega - H)/(2 Omega) can vanish or blow up.
std::vector<Complex> secondary_point_candidates(const ParameterTriple& t);

// Distance from k to the cut set (rays included out to their trace radius).
double distance_to_cuts(const BranchCutSet& cuts, Complex k);

} // namespace gi

#endif
