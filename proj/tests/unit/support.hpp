// support.hpp — Test-only helpers: an independent adaptive quadrature oracle,
// finite differences, deterministic random spec generators and grid builders.
// Nothing here touches the implementation paths it is used to check.

#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "gapres/core.hpp"

namespace testsupport {

// Adaptive Simpson quadrature with absolute tolerance.
inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-10, int depth = 50) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

// Centered first derivative.
template <class F>
auto centered_diff(F&& f, double t, double h) {
    return (f(t + h) - f(t - h)) / (2.0 * h);
}

inline std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

// Random valid spec: weights normalized, both pseudomode rates nonnegative.
// u = 1 pins the perfect gap; u > 1 opens it.
inline gapres::ReservoirSpec random_spec(std::mt19937& rng, bool perfect_gap, bool resonant = true) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    gapres::ReservoirSpec s;
    s.omega_big0 = 1.0;
    s.gamma1 = std::pow(10.0, -0.5 + 1.8 * uni(rng)); // ~[0.3, 20]
    s.w2 = 0.02 + 3.0 * uni(rng);
    s.w1 = 1.0 + s.w2;
    const double u_max = std::min(3.0, 0.9 * (s.w1 / s.w2) * (s.w1 / s.w2));
    const double u = perfect_gap ? 1.0 : 1.0 + (u_max - 1.0) * uni(rng);
    s.gamma2 = s.gamma1 * s.w2 / s.w1 * u;
    s.omega_c = 0.0;
    s.omega_0 = resonant ? 0.0 : 0.5 * (uni(rng) - 0.5);
    return s;
}

} // namespace testsupport
