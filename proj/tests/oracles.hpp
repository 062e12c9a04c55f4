#pragma once

// Brute-force reference computations for the tests. None of these call the
// library's integrators.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

/// Composite Simpson rule on n (even) sub-intervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, std::size_t n) {
    if (n % 2) ++n;
    const double h = (b - a) / static_cast<double>(n);
    double sum = f(a) + f(b);
    for (std::size_t i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + h * static_cast<double>(i));
    return sum * h / 3.0;
}

/// Midpoint Riemann sum on n cells.
inline double riemann(const std::function<double(double)>& f, double a, double b, std::size_t n) {
    const double h = (b - a) / static_cast<double>(n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += f(a + h * (static_cast<double>(i) + 0.5));
    return sum * h;
}

inline Complex horner(const std::vector<Complex>& c, Complex z) {
    Complex acc{};
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
    return acc;
}

/// (1/2pi) int |g(r e^{i phi})|^p dphi by the plain trapezoid rule on `nodes` points.
inline double circle_mean(const std::vector<Complex>& c, double r, int p, std::size_t nodes) {
    double sum = 0.0;
    for (std::size_t q = 0; q < nodes; ++q) {
        const double phi = 2.0 * std::numbers::pi * static_cast<double>(q) / static_cast<double>(nodes);
        sum += std::pow(std::abs(horner(c, std::polar(r, phi))), p);
    }
    return std::pow(sum / static_cast<double>(nodes), 1.0 / p);
}

/// (1/2pi) int_0^1 int |f|^p dphi 2 r v(r) dr on a dense tensor grid.
inline double bergman_norm_2d(const std::vector<Complex>& c, const std::function<double(double)>& v, int p,
                              std::size_t radial, std::size_t angular) {
    const double inner = simpson(
        [&](double r) { return std::pow(circle_mean(c, r, p, angular), p) * 2.0 * r * v(r); }, 0.0, 1.0, radial);
    return std::pow(inner, 1.0 / p);
}

inline double central_difference(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Average of M_1(sum theta_k a_k z^k, 1) over all sign vectors.
inline double sign_average(const std::vector<double>& a, std::size_t nodes) {
    const std::size_t len = a.size();
    double sum = 0.0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << len); ++mask) {
        std::vector<Complex> c(len);
        for (std::size_t k = 0; k < len; ++k) c[k] = ((mask >> k) & 1) ? -a[k] : a[k];
        sum += circle_mean(c, 1.0, 1, nodes);
    }
    return sum / static_cast<double>(std::size_t{1} << len);
}

}  // namespace oracle
