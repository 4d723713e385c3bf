#include <doctest.h>

#include <cmath>
#include <random>

#include "gi/scattering.hpp"

using namespace gi;

TEST_SUITE_BEGIN("scattering");

namespace {

OmegaEvaluator soliton_evaluator() {
    const auto inv = derive_invariants({2.0, 1.0, Complex(0.0, -2.0)});
    return OmegaEvaluator(inv, build_branch_cuts(inv, CaseLabel::SolitonDiscZero));
}

} // namespace

TEST_CASE("zero initial data gives the identity") {
    SolutionProfile zero;
    zero.value = [](double, double) { return Complex(0.0, 0.0); };
    zero.dx = zero.value;
    for (const Complex k : {Complex(0.7, 0.0), Complex(0.5, 0.5), Complex(-1.2, 0.4)}) {
        const auto r = compute_s(zero, k, 20.0, {}, ColumnRequest::Both);
        CHECK((r.s - Matrix2::identity()).max_norm() < 1e-12);
    }
}

TEST_CASE("determinant conservation for real k") {
    const auto q = gi_soliton(1.0);
    for (const double k : {0.8, 0.3, 1.7, -1.1}) {
        const auto r = compute_s(q, Complex(k, 0.0), default_x_max(q));
        REQUIRE(r.has_first);
        REQUIRE(r.has_second);
        CHECK(std::abs(r.s.det() - 1.0) < 1e-8);
    }
}

TEST_CASE("s(k) symmetry form at conjugate pairs") {
    const auto q = gi_soliton(1.0);
    // Points with small |Im k^2| so that both columns stay integrable.
    for (const Complex k : {Complex(0.9, 0.05), Complex(1.4, -0.08)}) {
        const auto r1 = compute_s(q, k, default_x_max(q), {}, ColumnRequest::Both);
        const auto r2 =
            compute_s(q, std::conj(k), default_x_max(q), {}, ColumnRequest::Both);
        const Matrix2 s1m = Matrix2::sigma1();
        const Matrix2 lhs = s1m * conj(r2.s) * s1m;
        CHECK((lhs - r1.s).max_norm() < 1e-8);
    }
}

TEST_CASE("a(k) is finite and nonzero in the first-quadrant sector") {
    const auto q = gi_soliton(1.0);
    const auto r = compute_s(q, Complex(0.5, 0.5), default_x_max(q));
    REQUIRE(r.has_second);
    const Complex a = r.s(1, 1);
    CHECK(std::isfinite(a.real()));
    CHECK(std::abs(a) > 1e-6);
}

TEST_CASE("column validity enforcement") {
    const auto q = gi_soliton(1.0);
    // Im k^2 = 2*1.5*1.5 = 4.5, x_max ~ 40: the first column would overflow.
    const Complex k(1.5, 1.5);
    CHECK_THROWS_AS((void)compute_s(q, k, default_x_max(q), {}, ColumnRequest::First),
                    ValidityError);
    const auto r = compute_s(q, k, default_x_max(q));
    CHECK(r.has_second);
    CHECK_FALSE(r.has_first);
}

TEST_CASE("refinement stability of a and b") {
    const auto q = gi_soliton(1.0);
    const Complex k(0.5, 0.4);
    const double xm = default_x_max(q);
    const auto base = compute_s(q, k, xm);
    const auto longer = compute_s(q, k, 2.0 * xm);
    StepControl tight;
    tight.rtol = 5e-12;
    tight.atol = 5e-14;
    const auto tighter = compute_s(q, k, xm, tight);
    CHECK(std::abs(base.s(1, 1) - longer.s(1, 1)) < 1e-7);
    CHECK(std::abs(base.s(0, 1) - longer.s(0, 1)) < 1e-7);
    CHECK(std::abs(base.s(1, 1) - tighter.s(1, 1)) < 1e-7);
}

TEST_CASE("background-exact S equals E") {
    const ParameterTriple t{2.0, 1.0, Complex(0.0, -2.0)};
    auto ev = soliton_evaluator();
    const auto q = gi_soliton(1.0);
    for (const Complex k : {Complex(0.5, 0.4), Complex(1.1, 0.2)}) {
        const Matrix2 S = compute_S_exact_background(t, ev, k, &q);
        CHECK((S - ev.E(t, k)).max_norm() == 0.0);
        CHECK(std::abs(S.det() - 1.0) < 1e-10);
    }
    // Large k: S -> I.
    CHECK((compute_S_exact_background(t, ev, Complex(60.0, 8.0)) -
           Matrix2::identity())
              .max_norm() < 2e-2);
    // A perturbed profile is rejected.
    const auto bad = scaled_profile(q, 1.0 + 1e-6);
    CHECK_THROWS_AS(
        (void)compute_S_exact_background(t, ev, Complex(0.5, 0.4), &bad),
        NotExactBackgroundError);
}

TEST_CASE("global relation for the soliton") {
    const ParameterTriple t{2.0, 1.0, Complex(0.0, -2.0)};
    auto ev = soliton_evaluator();
    const auto q = gi_soliton(1.0);
    SUBCASE("worked point") {
        CHECK(global_relation_residual(t, ev, q, Complex(0.5, 0.4)) < 1e-6);
    }
    SUBCASE("sweep over the sector") {
        std::mt19937_64 rng(47);
        std::uniform_real_distribution<double> ur(0.15, 3.0), ua(0.03, kPi / 4.0 - 0.03);
        double worst = 0.0;
        for (int n = 0; n < 50; ++n) {
            const Complex k = std::polar(ur(rng), ua(rng));
            worst = std::max(worst, global_relation_residual(t, ev, q, k));
        }
        CHECK(worst < 1e-6);
    }
    SUBCASE("real k (boundary, one-sided limit)") {
        CHECK(global_relation_residual(t, ev, q, Complex(0.9, 0.0)) < 1e-5);
    }
    SUBCASE("points outside the closure are rejected") {
        CHECK_THROWS_AS(
            (void)global_relation_residual(t, ev, q, Complex(0.5, 0.9)), // arg > pi/4
            RegionError);
    }
    SUBCASE("a perturbed profile fails the relation loudly") {
        const auto bad = scaled_profile(q, 1.1);
        const Complex k(0.5, 0.4);
        const double good = global_relation_residual(t, ev, q, k);
        const double worse = global_relation_residual(t, ev, bad, k);
        CHECK(worse > 1e3 * good);
    }
}

TEST_SUITE_END();
