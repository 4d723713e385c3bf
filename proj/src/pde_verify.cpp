#include "gi/pde_verify.hpp"

#include <cmath>
#include <sstream>

#include "gi/errors.hpp"

namespace gi {

namespace {

// Difference-first stencils: exact zeros on constant data.
template <typename F>
Complex diff4(const F& f, double x, double h) {
    return (8.0 * (f(x + h) - f(x - h)) - (f(x + 2.0 * h) - f(x - 2.0 * h))) /
           (12.0 * h);
}

template <typename F>
Complex diff4_second(const F& f, double x, double h) {
    const Complex f0 = f(x);
    return (16.0 * (f(x + h) + f(x - h) - 2.0 * f0) -
            (f(x + 2.0 * h) + f(x - 2.0 * h) - 2.0 * f0)) /
           (12.0 * h * h);
}

template <typename F>
Matrix2 mdiff4(const F& f, double x, double h) {
    Matrix2 out;
    const Matrix2 p2 = f(x + 2.0 * h), p1 = f(x + h), m1 = f(x - h), m2 = f(x - 2.0 * h);
    for (int i = 0; i < 4; ++i)
        out.e[i] = (8.0 * (p1.e[i] - m1.e[i]) - (p2.e[i] - m2.e[i])) / (12.0 * h);
    return out;
}

} // namespace

ResidualReport gi_residual(const SolutionProfile& q, const Rectangle& region,
                           double h, int nx, int nt) {
    if (!(h > 0.0)) throw DomainError("gi_residual: h must be positive");
    ResidualReport rep;
    rep.step = h;
    std::ostringstream desc;
    desc << nx << "x" << nt << " grid on [" << region.x0 << "," << region.x1
         << "]x[" << region.t0 << "," << region.t1 << "]";
    rep.grid = desc.str();
    double sum = 0.0;
    int count = 0;
    for (int i = 0; i < nx; ++i) {
        const double x = region.x0 + (region.x1 - region.x0) * (i + 0.5) / nx;
        for (int j = 0; j < nt; ++j) {
            const double t = region.t0 + (region.t1 - region.t0) * (j + 0.5) / nt;
            const Complex qv = q.value(x, t);
            const Complex qt = diff4([&](double s) { return q.value(x, s); }, t, h);
            const Complex qxx = diff4_second([&](double s) { return q.value(s, t); }, x, h);
            const Complex qx = diff4([&](double s) { return q.value(s, t); }, x, h);
            const double mod2 = std::norm(qv);
            const Complex residual = kI * qt + qxx + kI * qv * qv * std::conj(qx) +
                                     0.5 * mod2 * mod2 * qv;
            const double r = std::abs(residual);
            rep.max_abs = std::max(rep.max_abs, r);
            sum += r;
            ++count;
        }
    }
    rep.mean_abs = count ? sum / count : 0.0;
    return rep;
}

Matrix2 lax_U(Complex q, Complex k) {
    const Complex half_mod = -0.5 * kI * std::norm(q);
    return {half_mod, k * q, k * std::conj(q), -half_mod};
}

Matrix2 lax_V(Complex q, Complex q_x, Complex k) {
    const Complex k2 = k * k;
    const double mod2 = std::norm(q);
    const Complex diag = -kI * k2 * mod2 +
                         0.5 * (q_x * std::conj(q) - q * std::conj(q_x)) +
                         0.25 * kI * mod2 * mod2;
    // off-diagonal: 2 k^3 Q - i k Q_x sigma3
    const Complex v12 = 2.0 * k2 * k * q + kI * k * q_x;
    const Complex v21 = 2.0 * k2 * k * std::conj(q) - kI * k * std::conj(q_x);
    return {diag, v12, v21, -diag};
}

double zero_curvature_residual(const SolutionProfile& q, double x, double t,
                               Complex k, double h) {
    if (!(h > 0.0)) throw DomainError("zero_curvature_residual: h must be positive");
    const Complex k2 = k * k;
    const Complex k4 = k2 * k2;
    auto A = [&](double xx, double tt) {
        return -kI * k2 * Matrix2::sigma3() + lax_U(q.value(xx, tt), k);
    };
    auto B = [&](double xx, double tt) {
        return -2.0 * kI * k4 * Matrix2::sigma3() +
               lax_V(q.value(xx, tt), q.dx(xx, tt), k);
    };
    const Matrix2 At = mdiff4([&](double tt) { return A(x, tt); }, t, h);
    const Matrix2 Bx = mdiff4([&](double xx) { return B(xx, t); }, x, h);
    const Matrix2 res = At - Bx + commutator(A(x, t), B(x, t));
    return res.max_norm();
}

double background_tpart_residual(const ParameterTriple& triple,
                                 const OmegaEvaluator& ev, double t, Complex k,
                                 double h) {
    if (!(h > 0.0)) throw DomainError("background_tpart_residual: h must be positive");
    const Complex k4 = k * k * k * k;
    auto phi = [&](double tt) { return ev.background_phi(triple, tt, k); };
    const Matrix2 phi_t = mdiff4(phi, t, h);
    const Complex qb = std::polar(triple.alpha, triple.omega * t);
    const Complex qbx = triple.c * std::exp(kI * triple.omega * t);
    const Matrix2 vb = lax_V(qb, qbx, k);
    const Matrix2 res =
        phi_t + 2.0 * kI * k4 * Matrix2::sigma3() * phi(t) - vb * phi(t);
    return res.max_norm();
}

} // namespace gi
