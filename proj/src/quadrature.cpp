#include "gi/quadrature.hpp"

#include <cmath>

namespace gi {

namespace {

// Gauss-Kronrod 15(7) nodes/weights on [-1, 1] (symmetric halves).
constexpr double kKronrodX[8] = {0.0,
                                 0.2077849550078985,
                                 0.4058451513773972,
                                 0.5860872354676911,
                                 0.7415311855993944,
                                 0.8648644233597691,
                                 0.9491079123427585,
                                 0.9914553711208126};
constexpr double kKronrodW[8] = {0.2094821410847278,
                                 0.2044329400752989,
                                 0.1903505780647854,
                                 0.1690047266392679,
                                 0.1406532597155259,
                                 0.1047900103222502,
                                 0.0630920926299786,
                                 0.0229353220105292};
constexpr double kGaussW[4] = {0.4179591836734694, 0.3818300505051189,
                               0.2797053914892767, 0.1294849661688697};

struct PanelResult {
    double kronrod;
    double err;
};

PanelResult panel(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double kron = kKronrodW[0] * f(mid);
    double gauss = kGaussW[0] * f(mid);
    for (int j = 1; j < 8; ++j) {
        const double fv = f(mid - half * kKronrodX[j]) + f(mid + half * kKronrodX[j]);
        kron += kKronrodW[j] * fv;
        if (j % 2 == 0) gauss += kGaussW[j / 2] * fv;
    }
    kron *= half;
    gauss *= half;
    return {kron, std::abs(kron - gauss)};
}

double integrate_rec(const std::function<double(double)>& f, double a, double b,
                     double tol, int depth) {
    const auto r = panel(f, a, b);
    if (r.err <= tol || depth <= 0) return r.kronrod;
    const double mid = 0.5 * (a + b);
    return integrate_rec(f, a, mid, tol / 2.0, depth - 1) +
           integrate_rec(f, mid, b, tol / 2.0, depth - 1);
}

} // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double abs_tol, int max_depth) {
    return integrate_rec(f, a, b, abs_tol, max_depth);
}

} // namespace gi
