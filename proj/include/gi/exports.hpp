#ifndef GI_EXPORTS_HPP
#define GI_EXPORTS_HPP

#include <string>

#include "gi/pde_verify.hpp"
#include "gi/region.hpp"
#include "gi/scattering.hpp"

namespace gi {

// Polyline blocks: "# polyline <i> kind=<RAY|LOOP|ARC>" then "re,im" rows,
// blank line between blocks.
void write_contour_csv(const std::string& path, const ContourSet& contour);

void write_profile_csv(const std::string& path, const SolutionProfile& q,
                       double x0, double x1, int nx, double t0, double t1, int nt);

struct FigureStyle {
    double size_px = 720.0;
    bool shade_d1 = true;
    bool draw_contour = true;
    bool draw_cuts = true;
    bool draw_branch_points = true;
    bool legend = true;
};

// Math orientation (Im k up), square viewport. Contour solid, cuts dotted,
// branch points as filled dots, D1 shaded.
void write_figure_svg(const std::string& path, const RegionMap& map,
                      const ContourSet& contour, const BranchCutSet& cuts,
                      const FigureStyle& style = {});

std::string to_json(const ResidualReport& report);
std::string to_json(const ScatteringData& data);

} // namespace gi

#endif
