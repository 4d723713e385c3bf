#include <doctest.h>

#include <cmath>
#include <random>

#include "gi/omega.hpp"
#include "oracles.hpp"

using namespace gi;

TEST_SUITE_BEGIN("omega");

namespace {

struct CaseFixture {
    ParameterTriple triple;
    CaseLabel label;
};

std::vector<CaseFixture> case_fixtures() {
    return {
        {{2.0, 1.0, Complex(0.0, -2.0)}, CaseLabel::SolitonDiscZero},
        {{1.0, 3.99, Complex(2.0, -0.3)}, CaseLabel::SolitonDiscNegX1Pos},
        {{1.0, 1.5, Complex(1.0, 0.0)}, CaseLabel::SolitonDiscPosX1Pos},
        {{1.0, -0.34, Complex(0.0, -0.6)}, CaseLabel::SolitonDiscNegX1Neg},
        {{1.0, 0.0, Complex(0.5, -0.5)}, CaseLabel::SolitonDiscNegX1Zero},
        {{1.0, -1.5, Complex(0.0, -1.0)}, CaseLabel::PwBLow},
        {{1.0, -5.5, Complex(0.0, -2.0)}, CaseLabel::PwBLow},
        {{1.0, 0.5, Complex(0.0, 1.0)}, CaseLabel::PwBMid},
        {{1.0, -19.5, Complex(0.0, 5.0)}, CaseLabel::PwBHigh},
    };
}

OmegaEvaluator make_evaluator(const ParameterTriple& t, CaseLabel expected) {
    const auto verdict = classify(t);
    REQUIRE(verdict.case_label == expected);
    const auto inv = derive_invariants(t);
    return OmegaEvaluator(inv, build_branch_cuts(inv, expected));
}

Complex random_off_cut_point(const OmegaEvaluator& ev, std::mt19937_64& rng,
                             double radius) {
    std::uniform_real_distribution<double> u(-radius, radius);
    for (int tries = 0; tries < 1000; ++tries) {
        const Complex k(u(rng), u(rng));
        if (std::abs(k) < 1e-2) continue;
        if (ev.distance_to_cuts(k) > 5e-2) return k;
    }
    throw std::runtime_error("no off-cut sample found");
}

} // namespace

TEST_CASE("perfect-square case is entire and polynomial") {
    auto ev = make_evaluator({2.0, 1.0, Complex(0.0, -2.0)}, CaseLabel::SolitonDiscZero);
    CHECK(ev.cuts().cuts.empty());
    CHECK(ev.cuts().branch_points.empty());
    CHECK(std::abs(ev.omega(Complex(1.0, 0.0)) - 2.5) < 1e-12);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int n = 0; n < 300; ++n) {
        const Complex k(u(rng), u(rng));
        const Complex k4 = k * k * k * k;
        // Omega^2 = (8k^4 + x1)^2 / 16 with x1 = 2.
        CHECK(std::abs(ev.omega(k) - (2.0 * k4 + 0.5)) < 1e-10 * (1.0 + std::abs(k4)));
    }
}

TEST_CASE("anchor asymptotics") {
    for (const auto& fx : case_fixtures()) {
        auto ev = make_evaluator(fx.triple, fx.label);
        const double c_fit = ev.asymptotic_error_constant();
        const Complex k = std::polar(10.0 * (1.0 + ev.max_root_modulus()), kPi / 8.0);
        const Complex k4 = k * k * k * k;
        const double err = std::abs(ev.omega(k) - 2.0 * k4 - fx.triple.omega / 2.0);
        CHECK(err <= 2.0 * c_fit / std::norm(k) + 1e-12 * std::abs(k4));
    }
}

TEST_CASE("evaluation symmetries") {
    std::mt19937_64 rng(5);
    for (const auto& fx : case_fixtures()) {
        auto ev = make_evaluator(fx.triple, fx.label);
        for (int n = 0; n < 100; ++n) {
            const Complex k = random_off_cut_point(ev, rng, 2.5);
            const Complex om = ev.omega(k);
            const double scale = 1.0 + std::abs(om);
            CHECK(std::abs(ev.omega(-k) - om) < 1e-11 * scale);
            CHECK(std::abs(ev.omega(std::conj(k)) - std::conj(om)) < 1e-11 * scale);
        }
    }
}

TEST_CASE("agreement with the continuation oracle") {
    std::mt19937_64 rng(7);
    for (const auto& fx : case_fixtures()) {
        auto ev = make_evaluator(fx.triple, fx.label);
        const auto roots = omega_squared_roots(ev.invariants());
        const Complex anchor = std::polar(ev.anchor_radius(), kPi / 16.0);
        // Sign continuation also degenerates near even-order zeroes of
        // Omega^2 (Omega vanishes there without a branch point), so the
        // oracle path must keep clear of every root; cut crossings are
        // tested exactly, sampled clearance alone can miss one.
        auto clear_path = [&](Complex a, Complex b) {
            for (const auto& cut : ev.cuts().cuts) {
                for (std::size_t i = 1; i < cut.path.size(); ++i)
                    if (segments_intersect(a, b, cut.path.pts[i - 1], cut.path.pts[i]))
                        return false;
                if (cut.to_infinity) {
                    const Complex tail = cut.path.back();
                    if (segments_intersect(a, b, tail, tail + 1e3 * cut.ray_dir))
                        return false;
                }
            }
            for (const auto& r : roots)
                if (point_segment_distance(r.root, a, b) < 6e-2) return false;
            for (int s = 0; s <= 60; ++s) {
                const Complex p = a + (b - a) * (s / 60.0);
                if (ev.distance_to_cuts(p) < 2e-2) return false;
            }
            return true;
        };
        int checked = 0;
        for (int n = 0; n < 200 && checked < 40; ++n) {
            const Complex k = random_off_cut_point(ev, rng, 2.0);
            if (!clear_path(anchor, k)) continue;
            const auto inv = ev.invariants();
            const Complex direct = ev.omega(k);
            const Complex traced = oracle::omega_by_continuation(inv, {anchor, k});
            CHECK(std::abs(direct - traced) < 1e-9 * (1.0 + std::abs(direct)));
            // Path independence: reach k through a second waypoint.
            const Complex waypoint = anchor * std::polar(1.0, 0.9);
            if (clear_path(anchor, waypoint) && clear_path(waypoint, k)) {
                const Complex traced2 =
                    oracle::omega_by_continuation(inv, {anchor, waypoint, k});
                CHECK(std::abs(direct - traced2) < 1e-9 * (1.0 + std::abs(direct)));
            }
            ++checked;
        }
        CHECK(checked >= 20);
    }
}

TEST_CASE("cut guard raises OnCutError") {
    auto ev = make_evaluator({1.0, -1.5, Complex(0.0, -1.0)}, CaseLabel::PwBLow);
    // Cuts occupy [-1,1] on the real axis.
    CHECK_THROWS_AS((void)ev.omega(Complex(0.5, 0.0)), OnCutError);
    CHECK_NOTHROW((void)ev.omega(Complex(0.5, 0.1)));
}

TEST_CASE("H of the soliton triple is -4k^2") {
    auto ev = make_evaluator({2.0, 1.0, Complex(0.0, -2.0)}, CaseLabel::SolitonDiscZero);
    const ParameterTriple t{2.0, 1.0, Complex(0.0, -2.0)};
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int n = 0; n < 100; ++n) {
        const Complex k(u(rng), u(rng));
        const Complex h = ev.H(t, k);
        const Complex w = k * k;
        CHECK(std::abs(h + 4.0 * w) < 1e-10 * (1.0 + std::abs(w)));
        CHECK(std::abs(2.0 * ev.omega(k) - h - (2.0 * w + 1.0) * (2.0 * w + 1.0)) <
              1e-10 * (1.0 + std::norm(w)));
    }
}

TEST_CASE("the (2 Omega - H) H factorisation identity") {
    std::mt19937_64 rng(11);
    for (const auto& fx : case_fixtures()) {
        auto ev = make_evaluator(fx.triple, fx.label);
        const auto& t = fx.triple;
        for (int n = 0; n < 1000; ++n) {
            const Complex k = random_off_cut_point(ev, rng, 2.5);
            const Complex om = ev.omega(k);
            const Complex h = ev.H(t, k);
            const Complex w = k * k;
            const Complex lhs = (2.0 * om - h) * h;
            const Complex rhs = -w * (2.0 * t.alpha * w - kI * std::conj(t.c)) *
                                (2.0 * t.alpha * w + kI * t.c);
            CHECK(std::abs(lhs - rhs) < 1e-10 * (1.0 + std::abs(lhs) + std::abs(rhs)));
        }
    }
}

TEST_CASE("identity at the origin forces H (2 Omega - H) = 0") {
    const ParameterTriple t{1.0, -1.5, Complex(0.0, -1.0)};
    auto ev = make_evaluator(t, CaseLabel::PwBLow);
    const Complex k(0.0, 1e-7);
    const Complex prod = (2.0 * ev.omega(k) - ev.H(t, k)) * ev.H(t, k);
    CHECK(std::abs(prod) < 1e-10);
}

TEST_CASE("E determinant, normalisation and symmetry") {
    std::mt19937_64 rng(13);
    for (const auto& fx : case_fixtures()) {
        auto ev = make_evaluator(fx.triple, fx.label);
        const auto& t = fx.triple;
        SUBCASE("det E = 1 and sigma1 conjugation") {
            for (int n = 0; n < 100; ++n) {
                Complex k = random_off_cut_point(ev, rng, 2.5);
                Matrix2 e;
                try {
                    e = ev.E(t, k);
                } catch (const PoleError&) {
                    continue;
                }
                CHECK(std::abs(e.det() - 1.0) < 1e-9);
                Matrix2 es;
                try {
                    es = ev.E(t, std::conj(k));
                } catch (const PoleError&) {
                    continue;
                }
                const Matrix2 s1 = Matrix2::sigma1();
                const Matrix2 lhs = s1 * conj(es) * s1;
                CHECK((lhs - e).max_norm() < 1e-9 * (1.0 + e.max_norm()));
            }
        }
    }
}

TEST_CASE("E approaches the identity at large k") {
    // The off-diagonal entries decay like alpha/(2|k|) (H ~ -alpha^2 k^2
    // against the cubic denominator), the diagonal like 1/|k|^2.
    for (const auto& fx : case_fixtures()) {
        auto ev = make_evaluator(fx.triple, fx.label);
        const Matrix2 e50 = ev.E(fx.triple, Complex(50.0, 11.0));
        const double bound50 = 0.8 * fx.triple.alpha / std::abs(Complex(50.0, 11.0));
        CHECK((e50 - Matrix2::identity()).max_norm() < bound50);
        const Matrix2 e200 = ev.E(fx.triple, Complex(200.0, 44.0));
        CHECK((e200 - Matrix2::identity()).max_norm() <
              0.3 * (e50 - Matrix2::identity()).max_norm());
    }
}

TEST_CASE("E has poles at the secondary points where 2 Omega = H") {
    const ParameterTriple t{2.0, 1.0, Complex(0.0, -2.0)};
    auto ev = make_evaluator(t, CaseLabel::SolitonDiscZero);
    // c = -2i gives 2 alpha k^2 - i conj(c) = 4k^2 + 2 = 0 at k = +-i/sqrt(2).
    const Complex pole(0.0, 1.0 / std::sqrt(2.0));
    CHECK_THROWS_AS((void)ev.E(t, pole), PoleError);
    const auto cands = secondary_point_candidates(t);
    REQUIRE(cands.size() == 4);
    bool found = false;
    for (const auto& z : cands)
        if (std::abs(z - pole) < 1e-12) found = true;
    CHECK(found);
}

TEST_CASE("background phi solves nothing at t=0 but equals E") {
    const ParameterTriple t{2.0, 1.0, Complex(0.0, -2.0)};
    auto ev = make_evaluator(t, CaseLabel::SolitonDiscZero);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int n = 0; n < 50; ++n) {
        Complex k(u(rng), u(rng));
        if (std::abs(k) < 0.1) continue;
        Matrix2 e, phi0, phi;
        try {
            e = ev.E(t, k);
            phi0 = ev.background_phi(t, 0.0, k);
            phi = ev.background_phi(t, 0.83, k);
        } catch (const PoleError&) {
            continue;
        }
        CHECK((phi0 - e).max_norm() < 1e-12 * (1.0 + e.max_norm()));
        CHECK(std::abs(phi.det() - 1.0) < 1e-9 * (1.0 + phi.max_norm()));
    }
}

TEST_CASE("branch cut sets satisfy the symmetry and pairing assumptions") {
    for (const auto& fx : case_fixtures()) {
        const auto inv = derive_invariants(fx.triple);
        const auto cuts = build_branch_cuts(inv, fx.label);
        // Endpoints are odd-order zeroes known to the root finder.
        const auto roots = omega_squared_roots(inv);
        for (const auto& bp : cuts.branch_points) {
            bool matched = false;
            for (const auto& r : roots)
                if (r.multiplicity % 2 == 1 &&
                    std::abs(r.root - bp.root) < 1e-6 * (1.0 + std::abs(bp.root)))
                    matched = true;
            CHECK(matched);
        }
        // Union of cuts invariant under k -> -k and k -> conj k.
        auto min_dist_to_set = [&](Complex p) {
            double d = std::numeric_limits<double>::infinity();
            for (const auto& c : cuts.cuts) d = std::min(d, point_polyline_distance(p, c.path));
            return d;
        };
        for (const auto& cut : cuts.cuts) {
            const auto samples = sample_polyline(cut.path, cut.path.length() / 16.0, 0.0);
            for (const auto& p : samples) {
                CHECK(min_dist_to_set(-p) < 1e-6 * (1.0 + std::abs(p)));
                CHECK(min_dist_to_set(std::conj(p)) < 1e-6 * (1.0 + std::abs(p)));
            }
        }
        // Finite cuts pair distinct odd zeroes.
        for (std::size_t i = 0; i < cuts.cuts.size(); ++i) {
            if (!cuts.cuts[i].to_infinity)
                CHECK(std::abs(cuts.cuts[i].path.front() - cuts.cuts[i].path.back()) > 1e-9);
        }
        // All layouts here keep distinct cuts disjoint (a stronger form of
        // the transversal-intersection assumption).
        int crossings = 0;
        for (std::size_t i = 0; i < cuts.cuts.size(); ++i)
            for (std::size_t j = i + 1; j < cuts.cuts.size(); ++j)
                for (std::size_t a = 1; a < cuts.cuts[i].path.size(); ++a)
                    for (std::size_t b = 1; b < cuts.cuts[j].path.size(); ++b)
                        if (segments_intersect(cuts.cuts[i].path.pts[a - 1],
                                               cuts.cuts[i].path.pts[a],
                                               cuts.cuts[j].path.pts[b - 1],
                                               cuts.cuts[j].path.pts[b]))
                            ++crossings;
        CHECK(crossings == 0);
    }
}

TEST_CASE("near-threshold plane-wave layouts pair the zeroes across an axis") {
    // Just inside the middle band the contour arms end on an axis junction
    // instead of escaping; the cut set then has two finite cuts.
    struct Row {
        double alpha, b;
        bool vertical; // paired across the real axis (else imaginary)
    };
    for (const Row row : {Row{0.8496559286956431, -0.34864089282574484, true},
                          Row{1.0961426999576771, 4.8, false}}) {
        const double a2 = row.alpha * row.alpha;
        const ParameterTriple t{row.alpha, a2 * a2 / 2.0 - row.b * row.b + a2 * row.b,
                                Complex(0.0, row.alpha * row.b)};
        REQUIRE(classify(t).case_label == CaseLabel::PwBMid);
        const auto inv = derive_invariants(t);
        const auto cuts = build_branch_cuts(inv, CaseLabel::PwBMid);
        if (!row.vertical && cuts.cuts.size() == 4) continue; // escaped arms: fine
        REQUIRE(cuts.cuts.size() == 2);
        for (const auto& cut : cuts.cuts) {
            CHECK_FALSE(cut.to_infinity);
            const Complex p = cut.path.front(), q = cut.path.back();
            if (row.vertical)
                CHECK(std::abs(p - std::conj(q)) < 1e-9);
            else
                CHECK(std::abs(p + std::conj(q)) < 1e-9);
        }
        // The evaluator accepts the layout and stays symmetric.
        OmegaEvaluator ev(inv, cuts);
        std::mt19937_64 rng(53);
        for (int n = 0; n < 50; ++n) {
            const Complex k = random_off_cut_point(ev, rng, 2.0);
            const Complex om = ev.omega(k);
            CHECK(std::abs(ev.omega(-k) - om) < 1e-11 * (1.0 + std::abs(om)));
            CHECK(std::abs(ev.omega(std::conj(k)) - std::conj(om)) <
                  1e-11 * (1.0 + std::abs(om)));
        }
    }
}

TEST_CASE("unsupported cases are rejected") {
    const auto inv = derive_invariants({1.0, 0.0, Complex(0.0, 0.0)});
    CHECK_THROWS_AS((void)build_branch_cuts(inv, CaseLabel::OutsideScope),
                    UnsupportedCaseError);
}

TEST_SUITE_END();
