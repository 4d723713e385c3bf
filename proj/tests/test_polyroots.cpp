#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "gi/polyroots.hpp"

using namespace gi;

TEST_SUITE_BEGIN("polyroots");

namespace {

int total_multiplicity(const std::vector<RootMult>& roots) {
    int m = 0;
    for (const auto& r : roots) m += r.multiplicity;
    return m;
}

bool contains_root(const std::vector<RootMult>& roots, Complex z, int mult,
                   double tol = 1e-8) {
    for (const auto& r : roots)
        if (std::abs(r.root - z) < tol && r.multiplicity == mult) return true;
    return false;
}

} // namespace

TEST_CASE("quartic solver on a factored polynomial") {
    // (w-1)(w-2i)(w+3)(w+i) expanded.
    const Complex r1(1, 0), r2(0, 2), r3(-3, 0), r4(0, -1);
    const Complex c3 = -(r1 + r2 + r3 + r4);
    const Complex c2 = r1 * r2 + r1 * r3 + r1 * r4 + r2 * r3 + r2 * r4 + r3 * r4;
    const Complex c1 = -(r1 * r2 * r3 + r1 * r2 * r4 + r1 * r3 * r4 + r2 * r3 * r4);
    const Complex c0 = r1 * r2 * r3 * r4;
    auto roots = durand_kerner_quartic(c3, c2, c1, c0);
    for (const Complex target : {r1, r2, r3, r4}) {
        const double d = std::min({std::abs(roots[0] - target), std::abs(roots[1] - target),
                                   std::abs(roots[2] - target), std::abs(roots[3] - target)});
        CHECK(d < 1e-10);
    }
}

TEST_CASE("soliton triple gives four double roots on the half-integer circle") {
    const auto inv = derive_invariants({2.0, 1.0, Complex(0.0, -2.0)});
    const auto roots = omega_squared_roots(inv);
    CHECK(total_multiplicity(roots) == 8);
    CHECK(roots.size() == 4);
    const double r = 1.0 / std::sqrt(2.0);
    for (int n = 0; n < 4; ++n) {
        const Complex z = std::polar(r, (2.0 * n + 1.0) * kPi / 4.0);
        CHECK(contains_root(roots, z, 2));
    }
}

TEST_CASE("plane-wave alpha=1 b=-1 root pattern") {
    const auto inv = derive_invariants({1.0, -1.5, Complex(0.0, -1.0)});
    const auto roots = omega_squared_roots(inv);
    CHECK(total_multiplicity(roots) == 8);
    CHECK(contains_root(roots, Complex(0.0, 0.0), 2));
    CHECK(contains_root(roots, Complex(1.0, 0.0), 1));
    CHECK(contains_root(roots, Complex(-1.0, 0.0), 1));
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(contains_root(roots, Complex(0.0, r), 2));
    CHECK(contains_root(roots, Complex(0.0, -r), 2));
}

TEST_CASE("x1 = x2 = 0 gives the eight odd-octant roots") {
    SpectralInvariants inv;
    inv.x1 = 0.0;
    inv.x2 = 0.0;
    inv.x3 = 4.0;
    inv.disc = -64.0;
    const auto roots = omega_squared_roots(inv);
    CHECK(roots.size() == 8);
    for (int n = 0; n < 8; ++n)
        CHECK(contains_root(roots, std::polar(1.0, (2.0 * n + 1.0) * kPi / 8.0), 1));
}

TEST_CASE("root set symmetry and coefficient reconstruction") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> ua(0.4, 1.6), ui(-1.5, 1.5), uw(-4.0, 4.0);
    for (int n = 0; n < 250; ++n) {
        const ParameterTriple t{ua(rng), uw(rng), Complex(ui(rng), ui(rng))};
        const auto inv = derive_invariants(t);
        const auto roots = omega_squared_roots(inv);
        CHECK(total_multiplicity(roots) == 8);
        // Closure under negation and conjugation.
        for (const auto& r : roots) {
            bool has_neg = false, has_conj = false;
            for (const auto& s : roots) {
                if (std::abs(s.root + r.root) < 1e-10 * (1.0 + std::abs(r.root)) &&
                    s.multiplicity == r.multiplicity)
                    has_neg = true;
                if (std::abs(s.root - std::conj(r.root)) < 1e-10 * (1.0 + std::abs(r.root)) &&
                    s.multiplicity == r.multiplicity)
                    has_conj = true;
            }
            CHECK(has_neg);
            CHECK(has_conj);
        }
        // The monic quartic in m rebuilt from the m-roots reproduces the
        // coefficients (x1/4, x2/4, x3/4).
        std::vector<Complex> m_roots;
        for (const auto& r : roots) {
            if (std::abs(r.root) < 1e-12) {
                for (int j = 0; j < r.multiplicity / 2; ++j) m_roots.push_back(0.0);
            } else if (r.root.imag() > 0.0 ||
                       (r.root.imag() == 0.0 && r.root.real() > 0.0)) {
                for (int j = 0; j < r.multiplicity; ++j) m_roots.push_back(r.root * r.root);
            }
        }
        REQUIRE(m_roots.size() == 4);
        Complex e1 = 0, e2 = 0, e3 = 0, e4 = 1;
        for (const auto& m : m_roots) e1 += m;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) e2 += m_roots[i] * m_roots[j];
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                for (int l = j + 1; l < 4; ++l) e3 += m_roots[i] * m_roots[j] * m_roots[l];
        for (const auto& m : m_roots) e4 *= m;
        const double scale = 1.0 + std::abs(inv.x1) + std::abs(inv.x2) + std::abs(inv.x3);
        CHECK(std::abs(e1) < 1e-9 * scale);
        CHECK(std::abs(e2 - inv.x1 / 4.0) < 1e-9 * scale);
        CHECK(std::abs(-e3 - inv.x2 / 4.0) < 1e-9 * scale);
        CHECK(std::abs(e4 - inv.x3 / 4.0) < 1e-9 * scale);
    }
}

TEST_SUITE_END();
