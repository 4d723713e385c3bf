#include "gi/closed_forms.hpp"

#include <cmath>

#include "gi/errors.hpp"
#include "gi/quadrature.hpp"

namespace gi {

SolutionProfile gi_soliton(double omega) {
    if (!(omega > 0.0)) throw DomainError("gi_soliton: omega must be positive");
    const double s = std::sqrt(omega);
    const double amp = 2.0 * std::pow(omega, 0.25);
    auto value = [=](double x, double t) -> Complex {
        const double phi = amp / std::sqrt(std::cosh(2.0 * s * x));
        const double theta = -std::atan(std::tanh(s * x)) + omega * t;
        return std::polar(phi, theta);
    };
    auto dx = [=](double x, double t) -> Complex {
        // q_x / q = -s (tanh(2sx) + i sech(2sx))
        const Complex q = value(x, t);
        return q * (-s) * Complex(std::tanh(2.0 * s * x), 1.0 / std::cosh(2.0 * s * x));
    };
    SolutionProfile p;
    p.kind = SolutionKind::GiSoliton;
    p.value = value;
    p.dx = dx;
    p.triple = soliton_parameters(omega);
    return p;
}

double dnls_phase_integral_quadrature(double omega, double d, double xi) {
    const double kappa = std::sqrt(4.0 * omega - d * d);
    const double a = d / (2.0 * std::sqrt(omega));
    auto phi2 = [=](double y) {
        return (4.0 * omega - d * d) /
               (std::sqrt(omega) * (std::cosh(kappa * y) - a));
    };
    // Window plus analytic exponential tail phi^2 ~ C e^{-kappa y}.
    const double window = xi + 40.0 / kappa;
    const double body = integrate_adaptive(phi2, xi, window, 1e-13);
    const double tail = phi2(window) / kappa;
    return body + tail;
}

double dnls_phase_integral_closed_form(double omega, double xi) {
    const double s = std::sqrt(omega);
    return kPi - 4.0 * std::atan(std::tanh(s * xi));
}

SolutionProfile dnls_soliton(double omega, double d) {
    if (!(omega > d * d / 4.0))
        throw DomainError("dnls_soliton: requires omega > d^2/4");
    const double kappa = std::sqrt(4.0 * omega - d * d);
    const double a = d / (2.0 * std::sqrt(omega));
    auto phi = [=](double xi) {
        return std::sqrt((4.0 * omega - d * d) /
                         (std::sqrt(omega) * (std::cosh(kappa * xi) - a)));
    };
    auto phase_integral = [=](double xi) {
        if (d == 0.0) return dnls_phase_integral_closed_form(omega, xi);
        return dnls_phase_integral_quadrature(omega, d, xi);
    };
    auto value = [=](double x, double t) -> Complex {
        const double xi = x + d * t;
        const double theta =
            omega * t - 0.5 * d * xi - 0.75 * phase_integral(xi);
        return std::polar(phi(xi), theta);
    };
    auto dx = [=](double x, double t) -> Complex {
        const double xi = x + d * t;
        const double p = phi(xi);
        const double dphi_over_phi =
            -0.5 * kappa * std::sinh(kappa * xi) / (std::cosh(kappa * xi) - a);
        // d theta / dx = -d/2 + (3/4) phi^2
        const double dtheta = -0.5 * d + 0.75 * p * p;
        return value(x, t) * Complex(dphi_over_phi, dtheta);
    };
    SolutionProfile out;
    out.kind = SolutionKind::DnlsSoliton;
    out.value = value;
    out.dx = dx;
    return out;
}

SolutionProfile plane_wave(double alpha, double b) {
    if (!(alpha > 0.0)) throw DomainError("plane_wave: alpha must be positive");
    const double a2 = alpha * alpha;
    const double omega = a2 * a2 / 2.0 - b * b + a2 * b;
    auto value = [=](double x, double t) -> Complex {
        return std::polar(alpha, omega * t + b * x);
    };
    auto dx = [=](double x, double t) -> Complex {
        return kI * b * value(x, t);
    };
    SolutionProfile out;
    out.kind = SolutionKind::PlaneWave;
    out.value = value;
    out.dx = dx;
    out.triple = ParameterTriple{alpha, omega, Complex(0.0, alpha * b)};
    return out;
}

namespace {

// Int_x^inf |u(y,t)|^2 dy with an exponential tail fit past the window.
double modulus_squared_tail_integral(const SolutionProfile& u, double x, double t) {
    auto f = [&](double y) { return std::norm(u.value(y, t)); };
    double window = x + 5.0;
    double fw = f(window);
    for (int grow = 0; grow < 40 && fw > 1e-15; ++grow) {
        window += 5.0;
        fw = f(window);
    }
    if (fw > 1e-15)
        throw TailError("gauge_transform: profile does not decay along the window");
    const double delta = 0.5;
    const double f0 = f(window - delta);
    double tail = 0.0;
    if (fw > 0.0 && f0 > fw) {
        const double lambda = std::log(f0 / fw) / delta;
        tail = fw / lambda;
    } else if (fw > 0.0) {
        throw TailError("gauge_transform: tail fit failed (non-decaying tail)");
    }
    return integrate_adaptive(f, x, window, 1e-13) + tail;
}

} // namespace

SolutionProfile gauge_transform(const SolutionProfile& u, GaugeDirection direction) {
    if (u.kind == SolutionKind::PlaneWave)
        throw TailError("gauge_transform: plane waves do not decay as x -> infinity");
    const double sign = (direction == GaugeDirection::DnlsToGi) ? 1.0 : -1.0;
    const SolutionProfile base = u;
    auto value = [base, sign](double x, double t) -> Complex {
        const double phase = modulus_squared_tail_integral(base, x, t);
        return base.value(x, t) * std::polar(1.0, sign * phase);
    };
    auto dx = [base, sign, value](double x, double t) -> Complex {
        // Product rule with the integrand value: d/dx Int_x^inf |u|^2 = -|u(x)|^2.
        const double phase = modulus_squared_tail_integral(base, x, t);
        const Complex rot = std::polar(1.0, sign * phase);
        const Complex ux = base.dx(x, t);
        const Complex uv = base.value(x, t);
        return (ux - kI * sign * std::norm(uv) * uv) * rot;
    };
    SolutionProfile out;
    out.kind = SolutionKind::GaugeImage;
    out.value = value;
    out.dx = dx;
    return out;
}

SolutionProfile scaled_profile(const SolutionProfile& q, Complex factor) {
    SolutionProfile out = q;
    auto value = q.value;
    auto dx = q.dx;
    out.value = [value, factor](double x, double t) { return factor * value(x, t); };
    out.dx = [dx, factor](double x, double t) { return factor * dx(x, t); };
    out.triple.reset();
    return out;
}

} // namespace gi
