#include "gi/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gi {

double Polyline::length() const {
    double s = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) s += std::abs(pts[i] - pts[i - 1]);
    return s;
}

BBox bounding_box(const std::vector<Complex>& pts) {
    BBox b;
    if (pts.empty()) return b;
    b.xmin = b.xmax = pts[0].real();
    b.ymin = b.ymax = pts[0].imag();
    for (const auto& z : pts) {
        b.xmin = std::min(b.xmin, z.real());
        b.xmax = std::max(b.xmax, z.real());
        b.ymin = std::min(b.ymin, z.imag());
        b.ymax = std::max(b.ymax, z.imag());
    }
    return b;
}

double point_segment_distance(Complex p, Complex a, Complex b) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    double t = ((p.real() - a.real()) * ab.real() + (p.imag() - a.imag()) * ab.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

double point_polyline_distance(Complex p, const Polyline& line) {
    if (line.pts.empty()) return std::numeric_limits<double>::infinity();
    if (line.pts.size() == 1) return std::abs(p - line.pts[0]);
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < line.pts.size(); ++i)
        d = std::min(d, point_segment_distance(p, line.pts[i - 1], line.pts[i]));
    return d;
}

bool point_in_polygon(Complex p, const std::vector<Complex>& poly) {
    bool inside = false;
    const std::size_t n = poly.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const double yi = poly[i].imag(), yj = poly[j].imag();
        const double xi = poly[i].real(), xj = poly[j].real();
        if ((yi > p.imag()) != (yj > p.imag())) {
            const double xcross = xi + (p.imag() - yi) / (yj - yi) * (xj - xi);
            if (p.real() < xcross) inside = !inside;
        }
    }
    return inside;
}

static double orient(Complex a, Complex b, Complex c) {
    return (b.real() - a.real()) * (c.imag() - a.imag()) -
           (b.imag() - a.imag()) * (c.real() - a.real());
}

bool segments_intersect(Complex a, Complex b, Complex c, Complex d) {
    // Proper (transversal) crossings only: collinear configurations produce
    // orientation values at rounding level and do not count.
    const double scale = std::abs(b - a) * std::abs(d - c);
    const double eps = 1e-12 * (scale + 1e-300);
    const double o1 = orient(a, b, c), o2 = orient(a, b, d);
    const double o3 = orient(c, d, a), o4 = orient(c, d, b);
    return ((o1 > eps && o2 < -eps) || (o1 < -eps && o2 > eps)) &&
           ((o3 > eps && o4 < -eps) || (o3 < -eps && o4 > eps));
}

std::vector<Complex> sample_polyline(const Polyline& line, double spacing,
                                     double end_margin) {
    std::vector<Complex> out;
    const double total = line.length();
    if (total <= 2.0 * end_margin || spacing <= 0.0) return out;
    double target = end_margin;
    double walked = 0.0;
    for (std::size_t i = 1; i < line.pts.size(); ++i) {
        const Complex a = line.pts[i - 1], b = line.pts[i];
        const double seg = std::abs(b - a);
        if (seg == 0.0) continue;
        while (target <= walked + seg) {
            if (target > total - end_margin) return out;
            const double t = (target - walked) / seg;
            out.push_back(a + t * (b - a));
            target += spacing;
        }
        walked += seg;
    }
    return out;
}

Polyline negate(const Polyline& line) {
    Polyline out;
    out.pts.reserve(line.pts.size());
    for (const auto& z : line.pts) out.pts.push_back(-z);
    return out;
}

Polyline conjugate(const Polyline& line) {
    Polyline out;
    out.pts.reserve(line.pts.size());
    for (const auto& z : line.pts) out.pts.push_back(std::conj(z));
    return out;
}

} // namespace gi
