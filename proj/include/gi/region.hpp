#ifndef GI_REGION_HPP
#define GI_REGION_HPP

#include <cstdint>
#include <string>
#include <optional>
#include <utility>
#include <vector>

#include "gi/geometry.hpp"
#include "gi/omega.hpp"

namespace gi {

enum class RegionLabel : std::uint8_t { D1, D2, D3, D4, Cut, Undefined };

std::string to_string(RegionLabel label);

// Angular sectors where the label holds for large |k|
// (sign Im k^2 ~ sin 2theta, sign Im Omega ~ sin 4theta).
std::vector<std::pair<double, double>> label_sectors(RegionLabel label);

struct RegionComponent {
    RegionLabel label = RegionLabel::Undefined;
    int size = 0;
    bool touches_boundary = false;
    bool unbounded = false; // certified via the asymptotic sectors
};

struct RegionMap {
    Complex origin{0.0, 0.0}; // window centre; (0,0) for the full map
    double half_width = 0.0;
    int resolution = 0;
    std::vector<RegionLabel> labels;     // resolution^2, row-major, y fastest up
    std::vector<std::int32_t> component; // -1 for Cut/Undefined cells
    std::vector<RegionComponent> components;

    double cell_size() const { return 2.0 * half_width / resolution; }
    int index(int ix, int iy) const { return iy * resolution + ix; }
    bool in_grid(int ix, int iy) const {
        return ix >= 0 && iy >= 0 && ix < resolution && iy < resolution;
    }
    Complex center(int ix, int iy) const {
        const double h = cell_size();
        return origin + Complex(-half_width + (ix + 0.5) * h,
                                -half_width + (iy + 0.5) * h);
    }
    std::pair<int, int> locate(Complex k) const {
        const double h = cell_size();
        const Complex rel = k - origin;
        return {static_cast<int>(std::floor((rel.real() + half_width) / h)),
                static_cast<int>(std::floor((rel.imag() + half_width) / h))};
    }
};

double default_half_width(const OmegaEvaluator& ev);

// Labels every cell by (sign Im k^2, sign Im Omega), marks cells riding a
// branch cut as Cut, flood-fills components and certifies unboundedness.
// Throws ResolutionError when resolution < 128 or branch points are not
// separated by at least two cells.
RegionMap build_region_map(const OmegaEvaluator& ev, double half_width,
                           int resolution);

enum class ContourKind { Ray, Loop, Arc };

struct ContourSet {
    std::vector<Polyline> polylines;
    std::vector<ContourKind> kinds;
};

// Marching squares on Im Omega^2 (a polynomial, so no branch issues)
// restricted to Re Omega^2 >= 0, with vertices refined by bisection.
ContourSet extract_contour(const SpectralInvariants& inv, double half_width,
                           int resolution);

// |Im Omega(k)| computed branch-free from Omega^2.
double abs_im_omega(const SpectralInvariants& inv, Complex k);

struct ObstructionResult {
    bool obstructed = false;
    std::optional<Complex> witness;
};

// Lemma test: true iff some interior cut point has a grid-disk neighbourhood
// whose non-cut cells all belong to (the closure of) one unbounded D1
// component. Runs at `resolution` and 2*resolution and throws
// InconclusiveError if the two disagree.
ObstructionResult lemma_obstruction_test(const OmegaEvaluator& ev,
                                         double half_width, int resolution);

} // namespace gi

#endif
