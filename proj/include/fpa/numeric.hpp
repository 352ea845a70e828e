#pragma once

#include <array>
#include <cmath>
#include <utility>

namespace fpa {

// 64-point Gauss-Legendre rule on [-1, 1]; nodes by Newton iteration on the
// Legendre recurrence, computed once. Exact for polynomials up to degree 127,
// which covers every piecewise-polynomial integrand in this project once the
// integration interval is split at the regime switches.
const std::array<std::pair<double, double>, 64>& gauss_legendre_64();

// Integrates f over [lo, hi] with the 64-point rule.
template <class Fn>
double integrate_gl64(Fn&& f, double lo, double hi) {
    if (!(hi > lo)) return 0.0;
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double sum = 0.0;
    for (const auto& [x, w] : gauss_legendre_64()) sum += w * f(mid + half * x);
    return sum * half;
}

// Golden-section minimization of a unimodal f on [lo, hi] to the given
// interval width; returns the midpoint of the final bracket.
template <class Fn>
double golden_section_min(Fn&& f, double lo, double hi, double width) {
    static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - (hi - lo) * inv_phi;
    double d = lo + (hi - lo) * inv_phi;
    double fc = f(c);
    double fd = f(d);
    while (hi - lo > width) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - (hi - lo) * inv_phi;
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + (hi - lo) * inv_phi;
            fd = f(d);
        }
    }
    return 0.5 * (lo + hi);
}

// Bisection for the smallest x in [lo, hi] with pred(x) true, assuming pred is
// false at lo, true at hi, and monotone. Converges to the given width.
template <class Fn>
double bisect_first_true(Fn&& pred, double lo, double hi, double width) {
    while (hi - lo > width) {
        const double mid = 0.5 * (lo + hi);
        if (pred(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace fpa
