#include <doctest.h>

#include <cmath>
#include <random>

#include "gi/exports.hpp"
#include "gi/pde_verify.hpp"

using namespace gi;

TEST_SUITE_BEGIN("pde_verify");

TEST_CASE("gi residual of exact solutions") {
    SUBCASE("soliton") {
        const auto rep =
            gi_residual(gi_soliton(1.0), {0.1, 5.0, 0.0, 5.0}, 1e-3);
        CHECK(rep.max_abs < 1e-6);
        CHECK(rep.mean_abs <= rep.max_abs);
    }
    SUBCASE("plane wave") {
        const auto rep =
            gi_residual(plane_wave(1.0, -1.0), {0.1, 5.0, 0.0, 5.0}, 1e-3);
        CHECK(rep.max_abs < 1e-8);
    }
    SUBCASE("zero solution") {
        SolutionProfile zero;
        zero.value = [](double, double) { return Complex(0.0, 0.0); };
        zero.dx = zero.value;
        const auto rep = gi_residual(zero, {0.1, 5.0, 0.0, 5.0}, 1e-3, 10, 10);
        CHECK(rep.max_abs == 0.0);
    }
}

TEST_CASE("gi residual converges at fourth order") {
    // Truncation-dominated range (the rounding floor sits near 1e-9 at
    // h = 1e-3): halving h divides the residual by ~16.
    const auto q = gi_soliton(1.0);
    const Rectangle region{0.3, 3.0, 0.0, 2.0};
    double h = 3.2e-2;
    double prev = gi_residual(q, region, h, 20, 20).max_abs;
    for (int halving = 0; halving < 3; ++halving) {
        h /= 2.0;
        const double cur = gi_residual(q, region, h, 20, 20).max_abs;
        const double factor = prev / cur;
        CHECK(factor > 12.0);
        CHECK(factor < 20.0);
        prev = cur;
    }
}

TEST_CASE("perturbed profiles are detected") {
    const auto q = gi_soliton(1.0);
    const auto bad = scaled_profile(q, 1.1);
    const Rectangle region{0.3, 3.0, 0.0, 2.0};
    const auto good_rep = gi_residual(q, region, 1e-3, 20, 20);
    const auto bad_rep = gi_residual(bad, region, 1e-3, 20, 20);
    CHECK(bad_rep.max_abs > 1e3 * good_rep.max_abs);
}

TEST_CASE("zero curvature residual") {
    const auto q = gi_soliton(1.0);
    SUBCASE("worked point") {
        CHECK(zero_curvature_residual(q, 1.0, 0.5, Complex(1.0, 0.5), 1e-3) < 1e-5);
    }
    SUBCASE("zero solution is exactly flat") {
        SolutionProfile zero;
        zero.value = [](double, double) { return Complex(0.0, 0.0); };
        zero.dx = zero.value;
        CHECK(zero_curvature_residual(zero, 0.7, 0.3, Complex(0.4, 1.2), 1e-3) == 0.0);
    }
    SUBCASE("random points and perturbation detection") {
        std::mt19937_64 rng(41);
        std::uniform_real_distribution<double> ux(0.3, 3.0), ut(0.0, 2.0), uk(-1.4, 1.4);
        const auto bad = scaled_profile(q, 1.1);
        for (int n = 0; n < 20; ++n) {
            const double x = ux(rng), t = ut(rng);
            const Complex k(uk(rng), uk(rng));
            const double good = zero_curvature_residual(q, x, t, k, 1e-3);
            CHECK(good < 1e-5);
            const double worse = zero_curvature_residual(bad, x, t, k, 1e-3);
            CHECK(worse > 1e3 * good);
        }
    }
}

TEST_CASE("background t-part residual") {
    SUBCASE("soliton triple") {
        const ParameterTriple t{2.0, 1.0, Complex(0.0, -2.0)};
        const auto inv = derive_invariants(t);
        OmegaEvaluator ev(inv, build_branch_cuts(inv, CaseLabel::SolitonDiscZero));
        CHECK(background_tpart_residual(t, ev, 0.7, Complex(1.0, 0.3), 1e-4) < 1e-6);
        CHECK(background_tpart_residual(t, ev, 0.0, Complex(0.4, -0.9), 1e-4) < 1e-6);
    }
    SUBCASE("plane-wave triple") {
        const ParameterTriple t{1.0, -1.5, Complex(0.0, -1.0)};
        const auto inv = derive_invariants(t);
        OmegaEvaluator ev(inv, build_branch_cuts(inv, CaseLabel::PwBLow));
        CHECK(background_tpart_residual(t, ev, 1.3, Complex(0.5, 0.5), 1e-4) < 1e-6);
    }
    SUBCASE("residual grows like the coefficient matrix at large k") {
        const ParameterTriple t{2.0, 1.0, Complex(0.0, -2.0)};
        const auto inv = derive_invariants(t);
        OmegaEvaluator ev(inv, build_branch_cuts(inv, CaseLabel::SolitonDiscZero));
        // The finite-difference error scales with d^5/dt^5 phi ~ |Omega|^5 h^4,
        // so it must still be far below one at |k| = 3 and h = 1e-6.
        const double res = background_tpart_residual(t, ev, 0.0, Complex(3.0, 0.2), 1e-6);
        CHECK(res < 1e-2);
    }
}

TEST_CASE("residual reports serialise to json") {
    const auto rep = gi_residual(gi_soliton(1.0), {0.5, 2.0, 0.0, 1.0}, 1e-3, 5, 5);
    const std::string j = to_json(rep);
    CHECK(j.find("\"max_abs\"") != std::string::npos);
    CHECK(j.find("\"mean_abs\"") != std::string::npos);
    CHECK(j.find("\"order\": 4") != std::string::npos);
}

TEST_SUITE_END();
