#include "gi/region.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <tuple>
#include <thread>

#include "gi/errors.hpp"
#include "gi/polyroots.hpp"

namespace gi {

namespace {

int worker_count() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("GI_ADMISSIBILITY_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return static_cast<int>(n);
}

// Cut polylines extended so that infinity-bound cuts reach the grid edge.
std::vector<Polyline> cut_paths_clipped(const BranchCutSet& cuts, double half_width) {
    std::vector<Polyline> out;
    for (const auto& cut : cuts.cuts) {
        Polyline path = cut.path;
        if (cut.to_infinity && !path.empty()) {
            const Complex tail = path.back();
            const double reach = 2.0 * half_width * std::sqrt(2.0) + std::abs(tail);
            path.pts.push_back(tail + cut.ray_dir * reach);
        }
        out.push_back(std::move(path));
    }
    return out;
}

void mark_cut_cells(RegionMap& map, const std::vector<Polyline>& paths) {
    const double h = map.cell_size();
    const double band = 1.06 * h;
    const int reach = 2; // band < 2 cells always
    for (const auto& path : paths) {
        for (std::size_t i = 1; i < path.pts.size(); ++i) {
            const Complex a = path.pts[i - 1], b = path.pts[i];
            const double len = std::abs(b - a);
            const int steps = std::max(1, static_cast<int>(len / (0.5 * h)));
            for (int s = 0; s <= steps; ++s) {
                const Complex p = a + (b - a) * (static_cast<double>(s) / steps);
                const auto [cx, cy] = map.locate(p);
                for (int dy = -reach; dy <= reach; ++dy) {
                    for (int dx = -reach; dx <= reach; ++dx) {
                        const int ix = cx + dx, iy = cy + dy;
                        if (!map.in_grid(ix, iy)) continue;
                        if (map.labels[map.index(ix, iy)] == RegionLabel::Cut) continue;
                        if (point_segment_distance(map.center(ix, iy), a, b) <= band)
                            map.labels[map.index(ix, iy)] = RegionLabel::Cut;
                    }
                }
            }
        }
    }
}

void flood_fill_components(RegionMap& map) {
    const int n = map.resolution;
    map.component.assign(static_cast<std::size_t>(n) * n, -1);
    std::vector<int> stack;
    for (int start = 0; start < n * n; ++start) {
        const RegionLabel lab = map.labels[start];
        if (lab == RegionLabel::Cut || lab == RegionLabel::Undefined) continue;
        if (map.component[start] >= 0) continue;
        const auto id = static_cast<std::int32_t>(map.components.size());
        RegionComponent comp;
        comp.label = lab;
        stack.assign(1, start);
        map.component[start] = id;
        while (!stack.empty()) {
            const int cur = stack.back();
            stack.pop_back();
            ++comp.size;
            const int ix = cur % n, iy = cur / n;
            if (ix == 0 || iy == 0 || ix == n - 1 || iy == n - 1)
                comp.touches_boundary = true;
            const int nb[4][2] = {{ix - 1, iy}, {ix + 1, iy}, {ix, iy - 1}, {ix, iy + 1}};
            for (const auto& [jx, jy] : nb) {
                if (!map.in_grid(jx, jy)) continue;
                const int j = map.index(jx, jy);
                if (map.component[j] >= 0 || map.labels[j] != lab) continue;
                map.component[j] = id;
                stack.push_back(j);
            }
        }
        map.components.push_back(comp);
    }
}

bool angle_in_sectors(double theta, const std::vector<std::pair<double, double>>& sectors) {
    double t = std::fmod(theta, 2.0 * kPi);
    if (t < 0.0) t += 2.0 * kPi;
    for (const auto& [lo, hi] : sectors)
        if (t > lo && t < hi) return true;
    return false;
}

void certify_unbounded(RegionMap& map, const OmegaEvaluator& ev) {
    // Fit the asymptotic correction constant on the boundary ring itself:
    // |Omega - 2k^4 - x1/4| <= C / r^2 with C measured at r = ring radius.
    const int n = map.resolution;
    const double ring_r = map.half_width - 0.5 * map.cell_size();
    double c_ring = 0.0;
    for (int j = 0; j < 256; ++j) {
        const Complex k = std::polar(ring_r, 2.0 * kPi * (j + 0.5) / 256.0);
        const Complex k4 = k * k * k * k;
        const Complex target = 2.0 * k4 + ev.invariants().x1 / 4.0;
        const Complex om = ev.omega_unchecked(k);
        // Branch-agnostic: on the flipped side of an infinity-bound cut the
        // evaluated sheet is -Omega, which is not an asymptotic error.
        const double err = std::min(std::abs(om - target), std::abs(om + target));
        c_ring = std::max(c_ring, err * std::norm(k));
    }
    auto ring_cell_certified = [&](int ix, int iy, RegionLabel lab) {
        const Complex k = map.center(ix, iy);
        const Complex k4 = k * k * k * k;
        if (2.0 * std::abs(k4.imag()) <= 1.5 * c_ring / std::norm(k)) return false;
        return angle_in_sectors(std::arg(k), label_sectors(lab));
    };
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            if (ix != 0 && iy != 0 && ix != n - 1 && iy != n - 1) continue;
            const int idx = map.index(ix, iy);
            const std::int32_t id = map.component[idx];
            if (id < 0 || map.components[id].unbounded) continue;
            if (ring_cell_certified(ix, iy, map.components[id].label))
                map.components[id].unbounded = true;
        }
    }
}

} // namespace

std::string to_string(RegionLabel label) {
    switch (label) {
        case RegionLabel::D1: return "D1";
        case RegionLabel::D2: return "D2";
        case RegionLabel::D3: return "D3";
        case RegionLabel::D4: return "D4";
        case RegionLabel::Cut: return "CUT";
        case RegionLabel::Undefined: return "UNDEFINED";
    }
    return "UNKNOWN";
}

std::vector<std::pair<double, double>> label_sectors(RegionLabel label) {
    const double q = kPi / 4.0;
    switch (label) {
        case RegionLabel::D1: return {{0.0, q}, {4.0 * q, 5.0 * q}};
        case RegionLabel::D2: return {{q, 2.0 * q}, {5.0 * q, 6.0 * q}};
        case RegionLabel::D3: return {{2.0 * q, 3.0 * q}, {6.0 * q, 7.0 * q}};
        case RegionLabel::D4: return {{3.0 * q, 4.0 * q}, {7.0 * q, 8.0 * q}};
        default: return {};
    }
}

double default_half_width(const OmegaEvaluator& ev) {
    return 3.0 * (1.0 + ev.max_root_modulus());
}

namespace {

// Shared by the public builder and the zoom windows used by the lemma test.
void fill_window_map(RegionMap& map, const OmegaEvaluator& ev,
                     const std::vector<Polyline>& cut_paths) {
    const int resolution = map.resolution;
    map.labels.assign(static_cast<std::size_t>(resolution) * resolution,
                      RegionLabel::Undefined);
    mark_cut_cells(map, cut_paths);

    const int n = resolution;
    auto label_rows = [&](int y0, int y1) {
        for (int iy = y0; iy < y1; ++iy) {
            for (int ix = 0; ix < n; ++ix) {
                const int idx = map.index(ix, iy);
                if (map.labels[idx] == RegionLabel::Cut) continue;
                const Complex k = map.center(ix, iy);
                const double im_k2 = 2.0 * k.real() * k.imag();
                const Complex om = ev.omega_unchecked(k);
                // Cells with Im Omega at rounding level sit on the contour
                // itself; their sign would be noise (this happens on grid
                // diagonals, which cell centres hit exactly).
                if (!std::isfinite(om.real()) || !std::isfinite(om.imag()) ||
                    im_k2 == 0.0 ||
                    std::abs(om.imag()) <= 1e-12 * (1.0 + std::abs(om)))
                    continue; // stays Undefined
                if (im_k2 > 0.0)
                    map.labels[idx] = om.imag() > 0.0 ? RegionLabel::D1 : RegionLabel::D2;
                else
                    map.labels[idx] = om.imag() > 0.0 ? RegionLabel::D3 : RegionLabel::D4;
            }
        }
    };
    const int workers = std::min(worker_count(), n);
    if (workers <= 1) {
        label_rows(0, n);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (n + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const int y0 = w * chunk, y1 = std::min(n, y0 + chunk);
            if (y0 < y1) pool.emplace_back(label_rows, y0, y1);
        }
        for (auto& th : pool) th.join();
    }

    flood_fill_components(map);
}

} // namespace

RegionMap build_region_map(const OmegaEvaluator& ev, double half_width,
                           int resolution) {
    if (resolution < 128)
        throw ResolutionError("build_region_map: resolution must be at least 128");
    if (half_width <= 0.0) half_width = default_half_width(ev);
    if (half_width < 2.0 * ev.max_root_modulus())
        throw ResolutionError("build_region_map: bounds do not enclose the branch "
                              "points with the required margin");

    RegionMap map;
    map.half_width = half_width;
    map.resolution = resolution;

    const double h = map.cell_size();
    const auto& bps = ev.cuts().branch_points;
    for (std::size_t i = 0; i < bps.size(); ++i)
        for (std::size_t j = i + 1; j < bps.size(); ++j)
            if (std::abs(bps[i].root - bps[j].root) > 1e-9 &&
                std::abs(bps[i].root - bps[j].root) < 2.0 * h)
                throw ResolutionError("build_region_map: branch points closer than "
                                      "two cells; refine the grid");

    fill_window_map(map, ev, cut_paths_clipped(ev.cuts(), half_width));
    certify_unbounded(map, ev);
    return map;
}

double abs_im_omega(const SpectralInvariants& inv, Complex k) {
    const Complex w2 = omega_squared_value(inv, k);
    return std::sqrt(std::max(0.0, (std::abs(w2) - w2.real()) / 2.0));
}

namespace {

struct EdgeKey {
    int ix, iy, horizontal; // edge from corner (ix,iy) along +x (1) or +y (0)
    bool operator<(const EdgeKey& o) const {
        return std::tie(ix, iy, horizontal) < std::tie(o.ix, o.iy, o.horizontal);
    }
};

} // namespace

ContourSet extract_contour(const SpectralInvariants& inv, double half_width,
                           int resolution) {
    if (resolution < 128)
        throw ResolutionError("extract_contour: resolution must be at least 128");
    const int n = resolution;
    const double h = 2.0 * half_width / n;
    auto corner = [&](int ix, int iy) -> Complex {
        return {-half_width + ix * h, -half_width + iy * h};
    };
    std::vector<double> g(static_cast<std::size_t>(n + 1) * (n + 1));
    for (int iy = 0; iy <= n; ++iy)
        for (int ix = 0; ix <= n; ++ix)
            g[static_cast<std::size_t>(iy) * (n + 1) + ix] =
                omega_squared_value(inv, corner(ix, iy)).imag();
    auto gval = [&](int ix, int iy) {
        return g[static_cast<std::size_t>(iy) * (n + 1) + ix];
    };

    // Zero crossing on the edge from a to b by bisection on Im Omega^2.
    auto refine = [&](Complex a, Complex b, double ga, double gb) -> Complex {
        for (int it = 0; it < 60; ++it) {
            const Complex m = 0.5 * (a + b);
            const double gm = omega_squared_value(inv, m).imag();
            if ((gm > 0.0) == (ga > 0.0)) {
                a = m;
                ga = gm;
            } else {
                b = m;
                gb = gm;
            }
        }
        (void)gb;
        return 0.5 * (a + b);
    };

    std::map<EdgeKey, Complex> edge_points;
    auto edge_point = [&](int ix, int iy, int horizontal) -> Complex {
        const EdgeKey key{ix, iy, horizontal};
        const auto it = edge_points.find(key);
        if (it != edge_points.end()) return it->second;
        const Complex a = corner(ix, iy);
        const Complex b = horizontal ? corner(ix + 1, iy) : corner(ix, iy + 1);
        const double ga = gval(ix, iy);
        const double gb = horizontal ? gval(ix + 1, iy) : gval(ix, iy + 1);
        const Complex p = refine(a, b, ga, gb);
        edge_points.emplace(key, p);
        return p;
    };

    // Collect marching-squares segments as pairs of edge keys.
    std::vector<std::pair<EdgeKey, EdgeKey>> segments;
    std::map<EdgeKey, std::vector<int>> adj;
    auto add_segment = [&](EdgeKey e1, EdgeKey e2) {
        const Complex p1 = edge_point(e1.ix, e1.iy, e1.horizontal);
        const Complex p2 = edge_point(e2.ix, e2.iy, e2.horizontal);
        // Keep only the part of {Im Omega^2 = 0} with Re Omega^2 >= 0.
        const double re1 = omega_squared_value(inv, p1).real();
        const double re2 = omega_squared_value(inv, p2).real();
        const double mask_tol =
            -1e-7 * (1.0 + std::pow(std::abs(0.5 * (p1 + p2)), 8.0));
        if (re1 < mask_tol || re2 < mask_tol) return;
        const int id = static_cast<int>(segments.size());
        segments.emplace_back(e1, e2);
        adj[e1].push_back(id);
        adj[e2].push_back(id);
    };

    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            const bool s00 = gval(ix, iy) > 0.0;
            const bool s10 = gval(ix + 1, iy) > 0.0;
            const bool s01 = gval(ix, iy + 1) > 0.0;
            const bool s11 = gval(ix + 1, iy + 1) > 0.0;
            const EdgeKey bottom{ix, iy, 1}, top{ix, iy + 1, 1};
            const EdgeKey left{ix, iy, 0}, right{ix + 1, iy, 0};
            std::vector<EdgeKey> hits;
            if (s00 != s10) hits.push_back(bottom);
            if (s01 != s11) hits.push_back(top);
            if (s00 != s01) hits.push_back(left);
            if (s10 != s11) hits.push_back(right);
            if (hits.size() == 2) {
                add_segment(hits[0], hits[1]);
            } else if (hits.size() == 4) {
                // Saddle: split by the sign at the cell centre.
                const Complex c = corner(ix, iy) + Complex(h / 2.0, h / 2.0);
                const bool sc = omega_squared_value(inv, c).imag() > 0.0;
                if (sc == s00) {
                    add_segment(bottom, right);
                    add_segment(top, left);
                } else {
                    add_segment(bottom, left);
                    add_segment(top, right);
                }
            }
        }
    }

    // Chain the segment soup into polylines.
    ContourSet out;
    std::vector<bool> used(segments.size(), false);
    auto same = [](const EdgeKey& a, const EdgeKey& b) {
        return !(a < b) && !(b < a);
    };
    auto pt = [&](const EdgeKey& e) { return edge_point(e.ix, e.iy, e.horizontal); };
    auto walk = [&](EdgeKey start) {
        Polyline line;
        line.pts.push_back(pt(start));
        EdgeKey cur = start;
        while (true) {
            int seg = -1;
            for (const int s : adj[cur])
                if (!used[s]) { seg = s; break; }
            if (seg < 0) break;
            used[seg] = true;
            const EdgeKey to =
                same(segments[seg].first, cur) ? segments[seg].second : segments[seg].first;
            line.pts.push_back(pt(to));
            cur = to;
        }
        return line;
    };
    auto emit = [&](Polyline line) {
        if (line.pts.size() < 2) return;
        const double edge_tol = 1.5 * h;
        const bool closed =
            std::abs(line.pts.front() - line.pts.back()) < 0.5 * h && line.pts.size() > 3;
        auto on_rim = [&](Complex z) {
            return std::abs(z.real()) > half_width - edge_tol ||
                   std::abs(z.imag()) > half_width - edge_tol;
        };
        ContourKind kind = ContourKind::Arc;
        if (closed)
            kind = ContourKind::Loop;
        else if (on_rim(line.pts.front()) || on_rim(line.pts.back()))
            kind = ContourKind::Ray;
        out.polylines.push_back(std::move(line));
        out.kinds.push_back(kind);
    };
    // Open chains from odd-degree nodes first, then leftover loops.
    for (const auto& [key, ids] : adj) {
        int free_count = 0;
        for (const int s : ids)
            if (!used[s]) ++free_count;
        if (free_count % 2 == 1) emit(walk(key));
    }
    for (std::size_t s = 0; s < segments.size(); ++s)
        if (!used[s]) emit(walk(segments[s].first));
    return out;
}

namespace {

struct SingleResolutionResult {
    bool obstructed = false;
    std::optional<Complex> witness;
};

// Disk condition at one cut sample: every non-cut cell within two cells of p
// is D1 and belongs to one component, with cells present on both sides of
// the cut. Returns the component id, or -1.
std::int32_t disk_all_d1(const RegionMap& map, Complex p, Complex tangent) {
    const double h = map.cell_size();
    const auto [cx, cy] = map.locate(p);
    std::int32_t comp_id = -2;
    int found = 0, left = 0, right = 0;
    for (int dy = -2; dy <= 2; ++dy) {
        for (int dx = -2; dx <= 2; ++dx) {
            const int ix = cx + dx, iy = cy + dy;
            if (!map.in_grid(ix, iy)) return -1;
            const Complex z = map.center(ix, iy);
            if (std::abs(z - p) > 2.0 * h) continue;
            const int idx = map.index(ix, iy);
            if (map.labels[idx] == RegionLabel::Cut) continue;
            if (map.labels[idx] != RegionLabel::D1) return -1;
            const std::int32_t id = map.component[idx];
            if (comp_id == -2) comp_id = id;
            if (id != comp_id) return -1;
            ++found;
            const double side = ((z - p) * std::conj(tangent)).imag();
            if (side > 0.0) ++left;
            else ++right;
        }
    }
    if (comp_id < 0 || found < 4 || left == 0 || right == 0) return -1;
    return comp_id;
}

Complex sample_tangent(const std::vector<Complex>& samples, std::size_t si) {
    const Complex p = samples[si];
    const Complex q =
        si + 1 < samples.size() ? samples[si + 1] : samples[si - (si ? 1 : 0)];
    return (q == p) ? Complex(1.0, 0.0) : (q - p) / std::abs(q - p);
}

// Direct test on the global map for cuts that span many cells.
bool cut_obstructs_global(const RegionMap& map, const Polyline& path,
                          Complex* witness) {
    const double h = map.cell_size();
    const auto samples = sample_polyline(path, 0.5 * h, 3.0 * h);
    for (std::size_t si = 0; si < samples.size(); ++si) {
        const Complex p = samples[si];
        if (std::abs(p.real()) > map.half_width - 3.0 * h ||
            std::abs(p.imag()) > map.half_width - 3.0 * h)
            continue;
        const std::int32_t id = disk_all_d1(map, p, sample_tangent(samples, si));
        if (id < 0 || !map.components[id].unbounded) continue;
        *witness = p;
        return true;
    }
    return false;
}

// Zoomed test on a window around `center`: used for cuts smaller than a
// handful of global cells (e.g. the conjugate-pair arcs when the zero pair
// hugs a ray) and around the finite endpoints of long cuts, where the two
// sides connect only inside a neighbourhood below the global cell size. The
// disk condition and local connectivity run on a fine window; the component
// is then tied back to an unbounded D1 component of the global map through
// representative cells far from the cut.
bool cut_obstructs_zoomed(const OmegaEvaluator& ev, const RegionMap& global,
                          const Polyline& path, int resolution, Complex center,
                          double hw, Complex* witness) {
    RegionMap local;
    local.origin = center;
    local.half_width = hw;
    local.resolution = std::max(128, resolution / 2);
    fill_window_map(local, ev, cut_paths_clipped(ev.cuts(), global.half_width));
    const double h = local.cell_size();

    const auto samples = sample_polyline(path, 0.5 * h, 3.0 * h);
    for (std::size_t si = 0; si < samples.size(); ++si) {
        const Complex p = samples[si];
        if (std::abs((p - center).real()) > hw - 3.0 * h ||
            std::abs((p - center).imag()) > hw - 3.0 * h)
            continue;
        const std::int32_t id = disk_all_d1(local, p, sample_tangent(samples, si));
        if (id < 0) continue;
        // Representative local cells of the obstructing component, farthest
        // from the cut, located in the global map. Individual representatives
        // can land on cells the global map left Undefined (e.g. exactly on a
        // grid diagonal), so walk the list with some spatial diversity.
        std::vector<std::pair<double, Complex>> reps;
        for (int iy = 0; iy < local.resolution; ++iy) {
            for (int ix = 0; ix < local.resolution; ++ix) {
                if (local.component[local.index(ix, iy)] != id) continue;
                const Complex z = local.center(ix, iy);
                reps.emplace_back(point_polyline_distance(z, path), z);
            }
        }
        std::sort(reps.begin(), reps.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
        std::vector<Complex> tried;
        for (const auto& [dist, z] : reps) {
            if (tried.size() >= 64) break;
            bool close = false;
            for (const Complex& w : tried)
                if (std::abs(w - z) < 2.0 * h) close = true;
            if (close) continue;
            tried.push_back(z);
            const auto [gx, gy] = global.locate(z);
            if (!global.in_grid(gx, gy)) continue;
            const int gidx = global.index(gx, gy);
            if (global.labels[gidx] != RegionLabel::D1) continue;
            const std::int32_t gid = global.component[gidx];
            if (gid >= 0 && global.components[gid].unbounded) {
                *witness = p;
                return true;
            }
        }
    }
    return false;
}

SingleResolutionResult obstruction_at_resolution(const OmegaEvaluator& ev,
                                                 double half_width, int resolution) {
    SingleResolutionResult res;
    if (ev.cuts().cuts.empty()) return res;
    const RegionMap map = build_region_map(ev, half_width, resolution);
    const double h = map.cell_size();
    const auto paths = cut_paths_clipped(ev.cuts(), half_width);

    for (const auto& path : paths) {
        Complex witness;
        const BBox box = bounding_box(path.pts);
        const Complex box_center(0.5 * (box.xmin + box.xmax),
                                 0.5 * (box.ymin + box.ymax));
        const double extent = std::max(box.xmax - box.xmin, box.ymax - box.ymin);
        bool hit = false;
        if (extent >= 16.0 * h) {
            hit = cut_obstructs_global(map, path, &witness);
            // The two sides of a long cut may connect only in a small
            // neighbourhood of its finite endpoints.
            for (int side = 0; side < 2 && !hit; ++side) {
                const Complex end = side == 0 ? path.front() : path.back();
                if (std::abs(end.real()) > half_width || std::abs(end.imag()) > half_width)
                    continue;
                hit = cut_obstructs_zoomed(ev, map, path, resolution, end, 24.0 * h,
                                           &witness);
            }
        } else {
            hit = cut_obstructs_zoomed(ev, map, path, resolution, box_center,
                                       3.5 * std::max(0.5 * extent, 1e-12), &witness);
        }
        if (hit) {
            res.obstructed = true;
            res.witness = witness;
            return res;
        }
    }
    return res;
}

} // namespace

ObstructionResult lemma_obstruction_test(const OmegaEvaluator& ev, double half_width,
                                         int resolution) {
    if (half_width <= 0.0) half_width = default_half_width(ev);
    const auto coarse = obstruction_at_resolution(ev, half_width, resolution);
    const auto fine = obstruction_at_resolution(ev, half_width, 2 * resolution);
    if (coarse.obstructed != fine.obstructed)
        throw InconclusiveError("lemma_obstruction_test: verdict flips between "
                                "resolutions; refine the grid");
    ObstructionResult out;
    out.obstructed = fine.obstructed;
    out.witness = fine.witness ? fine.witness : coarse.witness;
    return out;
}

} // namespace gi
