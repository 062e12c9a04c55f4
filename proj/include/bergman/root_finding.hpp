#pragma once

#include <cmath>
#include <cstddef>
#include <utility>

#include "bergman/error.hpp"

namespace bergman {

struct BisectionResult {
    double root;
    double lo;
    double hi;
    std::size_t iterations;
};

/// Bisection on a bracket [lo, hi] where sign(f(lo)) != sign(f(hi)).
/// Stops when hi - lo <= abs_tol + rel_tol * |mid| or after max_iter halvings.
template <class F>
BisectionResult bisect(F&& f, double lo, double hi, double abs_tol, double rel_tol,
                       std::size_t max_iter = 200) {
    double f_lo = f(lo);
    const double f_hi = f(hi);
    if (std::isnan(f_lo) || std::isnan(f_hi) || (f_lo > 0.0) == (f_hi > 0.0)) {
        throw Error(ErrorCode::solver_failure, "bisection bracket does not change sign");
    }
    std::size_t it = 0;
    for (; it < max_iter; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= abs_tol + rel_tol * std::abs(mid) || mid <= lo || mid >= hi) break;
        const double f_mid = f(mid);
        if (std::isnan(f_mid)) throw Error(ErrorCode::solver_failure, "objective returned NaN");
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return {0.5 * (lo + hi), lo, hi, it};
}

/// Golden-section search for a local maximum of f on [a, b].
/// Returns (argmax, max value). -inf values are allowed.
template <class F>
std::pair<double, double> golden_section_max(F&& f, double a, double b, double rel_tol = 1e-13,
                                             std::size_t max_iter = 200) {
    constexpr double inv_phi = 0.6180339887498949;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (std::size_t it = 0; it < max_iter; ++it) {
        if (b - a <= rel_tol * (1.0 + std::abs(a) + std::abs(b))) break;
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
}

}  // namespace bergman
