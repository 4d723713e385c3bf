#include "gi/polyroots.hpp"

#include <algorithm>
#include <cmath>

#include "gi/errors.hpp"

namespace gi {

namespace {

Complex eval_quartic(Complex c3, Complex c2, Complex c1, Complex c0, Complex w) {
    return (((w + c3) * w + c2) * w + c1) * w + c0;
}

Complex eval_quartic_deriv(Complex c3, Complex c2, Complex c1, Complex w) {
    return ((4.0 * w + 3.0 * c3) * w + 2.0 * c2) * w + c1;
}

} // namespace

std::vector<Complex> durand_kerner_quartic(Complex c3, Complex c2, Complex c1,
                                           Complex c0, double tol, int max_iter) {
    const double radius =
        2.0 * std::max({1.0, std::abs(c3), std::sqrt(std::abs(c2)),
                        std::cbrt(std::abs(c1)), std::pow(std::abs(c0), 0.25)});
    std::vector<Complex> w(4);
    for (int j = 0; j < 4; ++j)
        w[j] = radius * std::polar(1.0, 0.37 + 2.0 * kPi * j / 4.0);

    for (int it = 0; it < max_iter; ++it) {
        double move = 0.0;
        for (int j = 0; j < 4; ++j) {
            Complex denom = 1.0;
            for (int l = 0; l < 4; ++l)
                if (l != j) denom *= w[j] - w[l];
            if (denom == Complex(0.0, 0.0)) {
                w[j] += radius * 1e-6 * Complex(1.0, 1.0);
                continue;
            }
            const Complex delta = eval_quartic(c3, c2, c1, c0, w[j]) / denom;
            w[j] -= delta;
            move = std::max(move, std::abs(delta));
        }
        if (move < 1e-15 * radius) break;
    }
    // Newton polish; skip steps that stall on (near-)multiple roots.
    for (int j = 0; j < 4; ++j) {
        for (int it = 0; it < 4; ++it) {
            const Complex d = eval_quartic_deriv(c3, c2, c1, w[j]);
            if (std::abs(d) < 1e-12 * radius * radius * radius) break;
            const Complex step = eval_quartic(c3, c2, c1, c0, w[j]) / d;
            if (std::abs(step) > 0.1 * radius) break;
            w[j] -= step;
        }
    }
    const double res_scale =
        std::max({1.0, std::abs(c0), std::abs(c1) * radius,
                  std::abs(c2) * radius * radius, radius * radius * radius * radius});
    for (int j = 0; j < 4; ++j) {
        if (std::abs(eval_quartic(c3, c2, c1, c0, w[j])) > tol * res_scale * 1e3)
            throw ConvergenceError("durand_kerner_quartic: residual cap not met");
    }
    return w;
}

Complex omega_squared_value(const SpectralInvariants& inv, Complex k) {
    const Complex w = k * k;
    return ((4.0 * w * w + inv.x1) * w + inv.x2) * w + inv.x3;
}

std::vector<RootMult> omega_squared_roots(const SpectralInvariants& inv, double tol) {
    if (!std::isfinite(inv.x1) || !std::isfinite(inv.x2) || !std::isfinite(inv.x3))
        throw DomainError("omega_squared_roots: non-finite invariants");
    // Monic quartic in m = k^2: m^4 + (x1/4) m^2 + (x2/4) m + x3/4.
    auto w = durand_kerner_quartic(0.0, inv.x1 / 4.0, inv.x2 / 4.0, inv.x3 / 4.0, tol);

    // Real coefficients: pair conjugates exactly. Roots with small imaginary
    // part relative to the coefficient scale are snapped to the real axis.
    const double w_scale = 1.0 + max_root_modulus({{w[0], 1}, {w[1], 1}, {w[2], 1}, {w[3], 1}});
    const double snap = std::max(tol, 1e-9) * w_scale;
    std::vector<bool> used(4, false);
    for (int i = 0; i < 4; ++i) {
        if (used[i]) continue;
        if (std::abs(w[i].imag()) <= snap) {
            w[i] = Complex(w[i].real(), 0.0);
            used[i] = true;
            continue;
        }
        int best = -1;
        double bestd = snap;
        for (int j = i + 1; j < 4; ++j) {
            if (used[j]) continue;
            const double d = std::abs(w[j] - std::conj(w[i]));
            if (d < bestd) { bestd = d; best = j; }
        }
        if (best >= 0) {
            const Complex avg = (w[i] + std::conj(w[best])) / 2.0;
            w[i] = avg;
            w[best] = std::conj(avg);
            used[i] = used[best] = true;
        }
    }

    // Cluster coinciding m-roots into multiplicities. A multiplicity-s root
    // is a simple root of the (s-1)-th derivative, so each cluster is
    // re-polished there to recover full accuracy.
    const double cluster = std::max(tol, 1e-7) * w_scale;
    const double c2 = inv.x1 / 4.0, c1 = inv.x2 / 4.0;
    auto polish_cluster = [&](Complex z, int count) {
        for (int it = 0; it < 6; ++it) {
            Complex f, df;
            switch (count) {
                case 2: // p' = 4w^3 + 2 c2 w + c1
                    f = (4.0 * z * z + 2.0 * c2) * z + c1;
                    df = 12.0 * z * z + 2.0 * c2;
                    break;
                case 3: // p'' = 12w^2 + 2 c2
                    f = 12.0 * z * z + 2.0 * c2;
                    df = 24.0 * z;
                    break;
                default: // p''' = 24w
                    return Complex(0.0, 0.0);
            }
            if (std::abs(df) < 1e-300) break;
            const Complex step = f / df;
            z -= step;
            if (std::abs(step) < 1e-16 * (1.0 + std::abs(z))) break;
        }
        return z;
    };
    std::vector<RootMult> m_roots;
    std::vector<bool> taken(4, false);
    for (int i = 0; i < 4; ++i) {
        if (taken[i]) continue;
        Complex sum = w[i];
        int count = 1;
        taken[i] = true;
        for (int j = i + 1; j < 4; ++j) {
            if (!taken[j] && std::abs(w[j] - w[i]) <= cluster) {
                sum += w[j];
                ++count;
                taken[j] = true;
            }
        }
        Complex root = sum / static_cast<double>(count);
        if (count > 1) root = polish_cluster(root, count);
        if (std::abs(root.imag()) <= snap) root = Complex(root.real(), 0.0);
        m_roots.push_back({root, count});
    }

    // Square roots: each m-root of multiplicity mu gives k = +-sqrt(m) with
    // multiplicity mu, except m = 0 which gives k = 0 with multiplicity 2 mu.
    std::vector<RootMult> out;
    for (const auto& [m, mu] : m_roots) {
        if (std::abs(m) <= cluster * cluster) {
            out.push_back({Complex(0.0, 0.0), 2 * mu});
            continue;
        }
        Complex r = std::sqrt(m);
        if (std::abs(r.imag()) <= snap * 1e-3) r = Complex(r.real(), 0.0);
        if (std::abs(r.real()) <= snap * 1e-3) r = Complex(0.0, r.imag());
        out.push_back({r, mu});
        out.push_back({-r, mu});
    }
    std::sort(out.begin(), out.end(), [](const RootMult& a, const RootMult& b) {
        return std::arg(a.root) < std::arg(b.root);
    });
    return out;
}

double max_root_modulus(const std::vector<RootMult>& roots) {
    double m = 0.0;
    for (const auto& r : roots) m = std::max(m, std::abs(r.root));
    return m;
}

} // namespace gi
