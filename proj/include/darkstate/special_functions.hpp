// special_functions.hpp — sine/cosine integrals, dipole cross function and the collective Green's function

#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "darkstate/error.hpp"

namespace darkstate::sf {

struct SiCi {
    double si{0.0};
    double ci{0.0};
};

// Si(x) and Ci(x) for x > 0. Power series up to x = 4, continued fraction for E1(ix) above.
inline SiCi si_ci(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("si_ci: need finite x > 0");
    constexpr double euler = 0.57721566490153286061;
    if (x <= 4.0) {
        const double x2 = x * x;
        double si = 0.0, ci = 0.0;
        double term = x; // x^(2k+1)/(2k+1)! with sign
        for (int k = 0; k < 60; ++k) {
            const double add = term / (2 * k + 1);
            si += add;
            if (std::abs(add) < 1e-18 * std::abs(si)) break;
            term *= -x2 / ((2 * k + 2) * (2 * k + 3));
        }
        term = -x2 / 2.0; // (-1)^k x^(2k)/(2k)!, k = 1
        for (int k = 1; k < 60; ++k) {
            const double add = term / (2 * k);
            ci += add;
            if (std::abs(add) < 1e-18 * (std::abs(ci) + 1.0)) break;
            term *= -x2 / ((2 * k + 1) * (2 * k + 2));
        }
        return {si, euler + std::log(x) + ci};
    }
    using C = std::complex<double>;
    const double tiny = 1e-300;
    C b{1.0, x};
    C c{1.0 / tiny, 0.0};
    C d = 1.0 / b;
    C h = d;
    for (int i = 2; i < 10000; ++i) {
        const double a = -static_cast<double>((i - 1) * (i - 1));
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const C del = c * d;
        h *= del;
        if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < 1e-16) break;
    }
    h *= C{std::cos(x), -std::sin(x)};
    return {std::numbers::pi / 2.0 + h.imag(), -h.real()};
}

// sin(x)/x
inline double sinc(double x) {
    if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0 + x * x * x * x / 120.0;
    return std::sin(x) / x;
}

// cos(x)/x^2 - sin(x)/x^3, which tends to -1/3 and cancels badly for small x
inline double jc(double x) {
    if (std::abs(x) < 0.5) {
        const double x2 = x * x;
        double s = 0.0, p = 1.0, f = 6.0; // p = x^(2k-2), f = (2k+1)!
        for (int k = 1; k < 20; ++k) {
            const double t = (k % 2 ? -1.0 : 1.0) * 2.0 * k * p / f;
            s += t;
            if (std::abs(t) < 1e-18) break;
            p *= x2;
            f *= (2.0 * k + 2.0) * (2.0 * k + 3.0);
        }
        return s;
    }
    return std::cos(x) / (x * x) - std::sin(x) / (x * x * x);
}

// Orientation factors of a dipole pair; r12 is the z axis.
struct Orientation {
    double alpha{1.0}; // d1.d2 - (d1.r)(d2.r)
    double beta{1.0};  // d1.d2 - 3(d1.r)(d2.r)
    double dot() const { return 0.5 * (3.0 * alpha - beta); }
};

// Cross function F(x), x = omega * r12; F(0) = d1.d2.
inline double cross_function(double x, const Orientation& o) {
    x = std::abs(x);
    return 1.5 * (o.alpha * sinc(x) + o.beta * jc(x));
}

// Near-field part G'(x) of the collective Green's function, x > 0.
inline double cgf_near(double x, const Orientation& o) {
    const double c = std::cos(x), s = std::sin(x);
    return -0.375 * (o.alpha * c / x - o.beta * (s / (x * x) + c / (x * x * x)));
}

// Si/Ci part g(x), x > 0.
inline double cgf_sici(double x, const Orientation& o) {
    const auto [si, ci] = si_ci(x);
    const double c = std::cos(x), s = std::sin(x);
    const double a = -1.0 / (x * x) + (s * ci - c * si) / x;
    const double b = jc(x) * ci + (s / (x * x) + c / (x * x * x)) * si;
    return 0.75 / std::numbers::pi * (o.alpha * a + o.beta * b);
}

// Collective Green's function at x = omega * r12. Within the rotating-wave
// approximation only positive x contributes; otherwise negative x gives G' - g.
inline double cgf(double x, const Orientation& o, bool rwa = true) {
    if (x == 0.0 || !std::isfinite(x)) throw DomainError("cgf: x must be finite and nonzero");
    if (x > 0.0) return cgf_near(x, o) + cgf_sici(x, o);
    if (rwa) return 0.0;
    return cgf_near(-x, o) - cgf_sici(-x, o);
}

} // namespace darkstate::sf
