// quadrature.hpp — quadrature rules and 1-D log-domain optimisation used throughout

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>

#include "darkstate/error.hpp"

namespace darkstate::quad {

struct Rule {
    std::vector<double> x;
    std::vector<double> w;
    std::size_t size() const { return x.size(); }
};

// Composite 20-point Gauss-Legendre on [a, b] with `panels` equal panels.
inline Rule composite_gauss(double a, double b, int panels) {
    using G = boost::math::quadrature::gauss<double, 20>;
    const auto& ab = G::abscissa();
    const auto& wt = G::weights();
    Rule r;
    r.x.reserve(20 * panels);
    r.w.reserve(20 * panels);
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        for (std::size_t i = 0; i < ab.size(); ++i) {
            r.x.push_back(mid - 0.5 * h * ab[i]);
            r.w.push_back(0.5 * h * wt[i]);
            r.x.push_back(mid + 0.5 * h * ab[i]);
            r.w.push_back(0.5 * h * wt[i]);
        }
    }
    return r;
}

template <class F>
auto apply(const Rule& r, F&& f) {
    using T = decltype(f(0.0));
    T s{};
    for (std::size_t i = 0; i < r.size(); ++i) s += r.w[i] * f(r.x[i]);
    return s;
}

// Adaptive Gauss-Kronrod (31 points) with a hard failure if the error estimate
// stays above max(abs_tol, rel_tol * |I|).
template <class F>
double adaptive(F&& f, double a, double b, double rel_tol = 1e-10, double abs_tol = 0.0,
                unsigned max_depth = 20) {
    double err = 0.0, l1 = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, a, b, max_depth, rel_tol, &err, &l1);
    if (!std::isfinite(v) || err > std::max(abs_tol, 10.0 * rel_tol * std::max(std::abs(v), 1e-300)))
        throw NumericalError("adaptive quadrature did not converge", err);
    return v;
}

// Composite Simpson weights for n uniformly spaced samples (trapezoid correction on
// the last interval when n is even).
inline std::vector<double> simpson_weights(std::size_t n, double h) {
    std::vector<double> w(n, 0.0);
    if (n == 1) return w;
    if (n == 2) {
        w[0] = w[1] = 0.5 * h;
        return w;
    }
    const std::size_t m = (n % 2 == 1) ? n : n - 1; // odd count handled by Simpson
    for (std::size_t i = 0; i < m; ++i) {
        double c = (i == 0 || i == m - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        w[i] = c * h / 3.0;
    }
    if (m != n) {
        w[n - 2] += 0.5 * h;
        w[n - 1] += 0.5 * h;
    }
    return w;
}

// Transform of uniformly sampled data: sum_k w_k exp(s t_k) f_k with t_k = k h.
// Exact exponential recurrence keeps the phase accurate for long grids.
inline std::complex<double> laplace_sum(const std::vector<double>& w,
                                        const std::vector<std::complex<double>>& f,
                                        std::complex<double> s, double h) {
    std::complex<double> acc{0.0, 0.0};
    const std::complex<double> step = std::exp(s * h);
    std::complex<double> e{1.0, 0.0};
    const std::size_t n = std::min(w.size(), f.size());
    for (std::size_t k = 0; k < n; ++k) {
        if (k % 512 == 0) e = std::exp(s * (h * static_cast<double>(k)));
        acc += w[k] * e * f[k];
        e *= step;
    }
    return acc;
}

struct Minimum {
    double x{0.0};
    double f{0.0};
};

// Minimise f over [lo, hi] (both > 0) in log x: a coarse log-spaced scan picks the
// bracket, Brent's method refines it.
template <class F>
Minimum minimize_log(F&& f, double lo, double hi, int prescan, int bits = 40) {
    if (!(lo > 0.0) || !(hi > lo) || prescan < 3)
        throw InvalidParameter("minimize_log: need 0 < lo < hi and prescan >= 3");
    const double a = std::log(lo), b = std::log(hi);
    std::vector<double> fs(prescan);
    int best = 0;
    for (int i = 0; i < prescan; ++i) {
        fs[i] = f(std::exp(a + (b - a) * i / (prescan - 1)));
        if (fs[i] < fs[best]) best = i;
    }
    const double step = (b - a) / (prescan - 1);
    const double l = a + step * std::max(best - 1, 0);
    const double r = a + step * std::min(best + 1, prescan - 1);
    auto g = [&](double u) { return f(std::exp(u)); };
    auto res = boost::math::tools::brent_find_minima(g, l, r, bits);
    Minimum m{std::exp(res.first), res.second};
    if (fs[best] < m.f) m = {std::exp(a + step * best), fs[best]};
    return m;
}

} // namespace darkstate::quad
