#ifndef GI_TYPES_HPP
#define GI_TYPES_HPP

#include <array>
#include <cmath>
#include <complex>

namespace gi {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

inline constexpr Complex kI{0.0, 1.0};

// 2x2 complex matrix, row-major.  Used for E(k), eigenfunctions, U, V,
// s(k), S(k) and the Pauli-type constants sigma1/sigma3.
struct Matrix2 {
    std::array<Complex, 4> e{};   // [ e[0] e[1] ; e[2] e[3] ]

    Matrix2() = default;
    Matrix2(Complex a, Complex b, Complex c, Complex d) : e{a, b, c, d} {}

    static Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Matrix2 sigma1() { return {0.0, 1.0, 1.0, 0.0}; }
    static Matrix2 sigma3() { return {1.0, 0.0, 0.0, -1.0}; }

    Complex& operator()(int i, int j) { return e[2 * i + j]; }
    const Complex& operator()(int i, int j) const { return e[2 * i + j]; }

    Complex det() const { return e[0] * e[3] - e[1] * e[2]; }
    Complex trace() const { return e[0] + e[3]; }

    Matrix2 inverse() const {
        const Complex d = det();
        return {e[3] / d, -e[1] / d, -e[2] / d, e[0] / d};
    }

    double max_norm() const {
        double m = 0.0;
        for (const auto& z : e) m = std::max(m, std::abs(z));
        return m;
    }
};

inline Matrix2 operator+(const Matrix2& a, const Matrix2& b) {
    return {a.e[0] + b.e[0], a.e[1] + b.e[1], a.e[2] + b.e[2], a.e[3] + b.e[3]};
}

inline Matrix2 operator-(const Matrix2& a, const Matrix2& b) {
    return {a.e[0] - b.e[0], a.e[1] - b.e[1], a.e[2] - b.e[2], a.e[3] - b.e[3]};
}

inline Matrix2 operator*(const Matrix2& a, const Matrix2& b) {
    return {a.e[0] * b.e[0] + a.e[1] * b.e[2], a.e[0] * b.e[1] + a.e[1] * b.e[3],
            a.e[2] * b.e[0] + a.e[3] * b.e[2], a.e[2] * b.e[1] + a.e[3] * b.e[3]};
}

inline Matrix2 operator*(Complex s, const Matrix2& a) {
    return {s * a.e[0], s * a.e[1], s * a.e[2], s * a.e[3]};
}

inline Matrix2 operator*(double s, const Matrix2& a) { return Complex(s) * a; }

inline Matrix2 commutator(const Matrix2& a, const Matrix2& b) {
    return a * b - b * a;
}

// Entrywise complex conjugate (no transpose).
inline Matrix2 conj(const Matrix2& a) {
    return {std::conj(a.e[0]), std::conj(a.e[1]), std::conj(a.e[2]), std::conj(a.e[3])};
}

} // namespace gi

#endif
