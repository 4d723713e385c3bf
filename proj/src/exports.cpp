#include "gi/exports.hpp"

#include <fstream>

#include <json.hpp>

#include "gi/errors.hpp"

namespace gi {

namespace {

std::ofstream open_or_throw(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file: " + path);
    return out;
}

const char* kind_name(ContourKind kind) {
    switch (kind) {
        case ContourKind::Ray: return "RAY";
        case ContourKind::Loop: return "LOOP";
        case ContourKind::Arc: return "ARC";
    }
    return "ARC";
}

} // namespace

void write_contour_csv(const std::string& path, const ContourSet& contour) {
    auto out = open_or_throw(path);
    out.precision(12);
    for (std::size_t i = 0; i < contour.polylines.size(); ++i) {
        out << "# polyline " << i << " kind=" << kind_name(contour.kinds[i]) << "\n";
        for (const auto& v : contour.polylines[i].pts)
            out << v.real() << "," << v.imag() << "\n";
        out << "\n";
    }
}

void write_profile_csv(const std::string& path, const SolutionProfile& q,
                       double x0, double x1, int nx, double t0, double t1, int nt) {
    auto out = open_or_throw(path);
    out.precision(12);
    out << "x,t,re_q,im_q\n";
    for (int j = 0; j < nt; ++j) {
        const double t = nt > 1 ? t0 + (t1 - t0) * j / (nt - 1.0) : t0;
        for (int i = 0; i < nx; ++i) {
            const double x = nx > 1 ? x0 + (x1 - x0) * i / (nx - 1.0) : x0;
            const Complex v = q.value(x, t);
            out << x << "," << t << "," << v.real() << "," << v.imag() << "\n";
        }
    }
}

void write_figure_svg(const std::string& path, const RegionMap& map,
                      const ContourSet& contour, const BranchCutSet& cuts,
                      const FigureStyle& style) {
    auto out = open_or_throw(path);
    const double W = map.half_width;
    const double s = style.size_px / (2.0 * W);
    auto px = [&](Complex z) {
        return std::pair<double, double>{(z.real() + W) * s, (W - z.imag()) * s};
    };
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << style.size_px
        << "' height='" << style.size_px << "' viewBox='0 0 " << style.size_px
        << " " << style.size_px << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";

    if (style.shade_d1 && !map.labels.empty()) {
        // Merge D1 cells into row runs; downsample large grids.
        const int step = std::max(1, map.resolution / 256);
        const double cell = map.cell_size();
        out << "<g fill='#b8c4e8' stroke='none'>\n";
        for (int iy = 0; iy < map.resolution; iy += step) {
            int run = -1;
            for (int ix = 0; ix <= map.resolution; ix += step) {
                const bool d1 = ix < map.resolution &&
                                map.labels[map.index(ix, iy)] == RegionLabel::D1;
                if (d1 && run < 0) run = ix;
                if (!d1 && run >= 0) {
                    const Complex a = map.center(run, iy) - Complex(cell / 2, cell / 2);
                    const auto [x0, y0] = px(a + Complex(0, cell * step));
                    out << "<rect x='" << x0 << "' y='" << y0 << "' width='"
                        << (ix - run) * cell * s << "' height='" << cell * step * s
                        << "'/>\n";
                    run = -1;
                }
            }
        }
        out << "</g>\n";
    }

    // Axes.
    out << "<g stroke='#999' stroke-width='1'>\n";
    out << "<line x1='0' y1='" << style.size_px / 2 << "' x2='" << style.size_px
        << "' y2='" << style.size_px / 2 << "'/>\n";
    out << "<line x1='" << style.size_px / 2 << "' y1='0' x2='" << style.size_px / 2
        << "' y2='" << style.size_px << "'/>\n</g>\n";

    auto emit_polyline = [&](const Polyline& line, const char* attrs) {
        out << "<polyline fill='none' " << attrs << " points='";
        for (const auto& v : line.pts) {
            const auto [x, y] = px(v);
            out << x << "," << y << " ";
        }
        out << "'/>\n";
    };

    if (style.draw_contour)
        for (const auto& line : contour.polylines)
            emit_polyline(line, "stroke='#1a1a1a' stroke-width='1.4'");

    if (style.draw_cuts) {
        for (const auto& cut : cuts.cuts) {
            Polyline path = cut.path;
            if (cut.to_infinity)
                path.pts.push_back(path.pts.back() +
                                   cut.ray_dir * (3.0 * W + std::abs(path.pts.back())));
            emit_polyline(path,
                          "stroke='#c22' stroke-width='2' stroke-dasharray='6 5'");
        }
    }

    if (style.draw_branch_points) {
        out << "<g fill='#000'>\n";
        for (const auto& bp : cuts.branch_points) {
            const auto [x, y] = px(bp.root);
            out << "<circle cx='" << x << "' cy='" << y << "' r='4'/>\n";
        }
        out << "</g>\n";
    }

    if (style.legend) {
        out << "<g font-family='sans-serif' font-size='13'>\n"
            << "<rect x='8' y='8' width='14' height='14' fill='#b8c4e8'/>"
            << "<text x='27' y='20'>D1 (Im k^2 &gt; 0, Im Omega &gt; 0)</text>\n"
            << "<line x1='8' y1='40' x2='22' y2='40' stroke='#c22' stroke-width='2' "
               "stroke-dasharray='6 5'/><text x='27' y='44'>branch cuts</text>\n"
            << "<circle cx='15' cy='62' r='4'/><text x='27' y='66'>branch points"
               "</text>\n</g>\n";
    }
    out << "</svg>\n";
}

std::string to_json(const ResidualReport& report) {
    nlohmann::json j;
    j["max_abs"] = report.max_abs;
    j["mean_abs"] = report.mean_abs;
    j["grid"] = report.grid;
    j["step"] = report.step;
    j["order"] = report.order;
    return j.dump(2);
}

std::string to_json(const ScatteringData& data) {
    nlohmann::json j;
    j["k"] = {data.k.real(), data.k.imag()};
    j["a"] = {data.s(1, 1).real(), data.s(1, 1).imag()};
    j["b"] = {data.s(0, 1).real(), data.s(0, 1).imag()};
    j["A"] = {data.S(1, 1).real(), data.S(1, 1).imag()};
    j["B"] = {data.S(0, 1).real(), data.S(0, 1).imag()};
    j["residual_global"] = data.residual_global;
    return j.dump(2);
}

} // namespace gi
