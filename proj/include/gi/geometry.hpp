#ifndef GI_GEOMETRY_HPP
#define GI_GEOMETRY_HPP

#include <vector>

#include "gi/types.hpp"

namespace gi {

// Open polygonal curve in the complex plane.
struct Polyline {
    std::vector<Complex> pts;

    bool empty() const { return pts.empty(); }
    std::size_t size() const { return pts.size(); }
    const Complex& front() const { return pts.front(); }
    const Complex& back() const { return pts.back(); }

    double length() const;
};

struct BBox {
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool contains(Complex z, double pad = 0.0) const {
        return z.real() >= xmin - pad && z.real() <= xmax + pad &&
               z.imag() >= ymin - pad && z.imag() <= ymax + pad;
    }
};

BBox bounding_box(const std::vector<Complex>& pts);

double point_segment_distance(Complex p, Complex a, Complex b);

double point_polyline_distance(Complex p, const Polyline& line);

// Even-odd rule; points exactly on the boundary give an arbitrary side.
bool point_in_polygon(Complex p, const std::vector<Complex>& poly);

bool segments_intersect(Complex a, Complex b, Complex c, Complex d);

// Equally spaced (by arclength) samples along a polyline, endpoints excluded
// by the given margin distance.
std::vector<Complex> sample_polyline(const Polyline& line, double spacing,
                                     double end_margin);

Polyline negate(const Polyline& line);
Polyline conjugate(const Polyline& line);

} // namespace gi

#endif
