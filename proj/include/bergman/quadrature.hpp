#pragma once

// Adaptive Gauss-Legendre quadrature of exp(log_f(t)) carried out in the log domain.
//
// Integrands here are moments r^m dmu(r) after a change of variables, which can
// span thousands of orders of magnitude. Each panel is summed relative to its own
// largest node value and combined as a LogReal, so nothing over- or underflows
// before the final exponentiation.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include "bergman/error.hpp"
#include "bergman/log_real.hpp"
#include "bergman/root_finding.hpp"

namespace bergman {

struct QuadratureConfig {
    /// Per-panel relative agreement between one panel and its two halves.
    double rel_tol = 1e-13;
    std::size_t max_panels = 20000;
    std::size_t initial_panels = 24;
    /// Log-magnitude drop below the peak at which the integrand is treated as negligible.
    double drop = 80.0;
};

namespace detail {

inline constexpr std::size_t gl_order = 20;

struct GaussLegendreRule {
    std::array<double, gl_order> nodes{};
    std::array<double, gl_order> weights{};
};

inline GaussLegendreRule make_gauss_legendre() {
    GaussLegendreRule rule;
    constexpr std::size_t n = gl_order;
    for (std::size_t i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int newton = 0; newton < 100; ++newton) {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

inline const GaussLegendreRule& gauss_legendre() {
    static const GaussLegendreRule rule = make_gauss_legendre();
    return rule;
}

template <class LogF>
LogReal gl_panel(LogF& log_f, double a, double b) {
    const auto& rule = gauss_legendre();
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    std::array<double, gl_order> vals{};
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < gl_order; ++i) {
        const double v = log_f(mid + half * rule.nodes[i]);
        if (std::isnan(v)) {
            throw QuadratureFailure("integrand returned NaN", std::numeric_limits<double>::infinity());
        }
        vals[i] = v;
        hi = std::max(hi, v);
    }
    if (hi == -std::numeric_limits<double>::infinity()) return LogReal::zero();
    double acc = 0.0;
    for (std::size_t i = 0; i < gl_order; ++i) acc += rule.weights[i] * std::exp(vals[i] - hi);
    return LogReal::from_log(hi + std::log(acc * half));
}

/// |a - b| / scale, evaluated without leaving the log domain for the large parts.
inline double scaled_abs_diff(LogReal a, LogReal b, LogReal scale) {
    if (scale.is_zero()) return (a.is_zero() && b.is_zero()) ? 0.0 : std::numeric_limits<double>::infinity();
    return std::abs(std::exp(a.log() - scale.log()) - std::exp(b.log() - scale.log()));
}

}  // namespace detail

struct PeakWindow {
    double lo;
    double hi;
    double peak_t;
    double peak_log;
};

/// Locates the largest value of log_f on [a, b] (either end may be infinite) by
/// probing and golden-section refinement. Assumes the integrand eventually
/// decays toward infinite ends.
template <class LogF>
std::pair<double, double> find_log_peak(LogF&& log_f, double a, double b, double drop = 80.0) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, double>> probes;
    auto probe = [&](double t) { probes.emplace_back(t, log_f(t)); };

    if (std::isfinite(a) && std::isfinite(b)) {
        constexpr int n = 64;
        for (int i = 0; i <= n; ++i) probe(a + (b - a) * i / n);
    } else {
        const double anchor = std::isfinite(a) ? a : (std::isfinite(b) ? b : 0.0);
        probe(anchor);
        auto march = [&](double dir, double limit) {
            double best = probes.front().second;
            double prev = best;
            int falling = 0;
            for (int k = 0; k < 64; ++k) {
                double t = anchor + dir * 0.125 * (std::ldexp(1.0, k));
                if (std::isfinite(limit) && dir * (t - limit) >= 0.0) {
                    probe(limit);
                    break;
                }
                probe(t);
                const double v = probes.back().second;
                best = std::max(best, v);
                falling = v < prev ? falling + 1 : 0;
                prev = v;
                if (falling >= 2 && v < best - drop) break;
            }
        };
        if (!std::isfinite(b)) march(+1.0, b);
        if (!std::isfinite(a)) march(-1.0, a);
    }
    std::sort(probes.begin(), probes.end());
    std::size_t best = 0;
    for (std::size_t i = 1; i < probes.size(); ++i) {
        if (probes[i].second > probes[best].second) best = i;
    }
    if (probes[best].second == -inf) return probes[best];
    const double lo = probes[best > 0 ? best - 1 : 0].first;
    const double hi = probes[std::min(best + 1, probes.size() - 1)].first;
    if (hi <= lo) return probes[best];
    auto refined = golden_section_max(log_f, lo, hi);
    return refined.second >= probes[best].second ? refined : probes[best];
}

/// Peak location plus an interval around it outside of which log_f has dropped
/// by more than `drop` (clamped to [a, b]).
template <class LogF>
PeakWindow peak_window(LogF&& log_f, double a, double b, double drop = 80.0) {
    const auto [t0, f0] = find_log_peak(log_f, a, b, drop);
    if (!std::isfinite(f0)) return {t0, t0, t0, f0};

    double step0 = 1.0 / 16.0;
    {
        const double delta = 1e-4 * (1.0 + std::abs(t0));
        const double fl = (t0 - delta >= a) ? log_f(t0 - delta) : f0;
        const double fr = (t0 + delta <= b) ? log_f(t0 + delta) : f0;
        const double curv = -(fl - 2.0 * f0 + fr) / (delta * delta);
        if (std::isfinite(curv) && curv > 0.0) step0 = std::min(step0, 0.5 / std::sqrt(curv));
        step0 = std::max(step0, 1e-12 * (1.0 + std::abs(t0)));
    }
    auto edge = [&](double dir, double limit) {
        if (std::isfinite(limit) && log_f(limit) >= f0 - drop) return limit;
        double h = step0;
        for (int k = 0; k < 200; ++k, h *= 2.0) {
            const double t = t0 + dir * h;
            if (std::isfinite(limit) && dir * (t - limit) >= 0.0) return limit;
            if (log_f(t) < f0 - drop) return t;
        }
        throw QuadratureFailure("integrand does not decay", std::numeric_limits<double>::infinity());
    };
    return {edge(-1.0, a), edge(+1.0, b), t0, f0};
}

/// Adaptive quadrature of exp(log_f) over the finite interval [lo, hi]; `split`
/// (if inside) becomes a panel boundary.
template <class LogF>
LogReal integrate_log_window(LogF&& log_f, double lo, double hi, double split,
                             const QuadratureConfig& cfg = {}) {
    if (!(hi > lo)) return LogReal::zero();
    struct Panel {
        double a, b;
        LogReal estimate;
    };
    std::vector<Panel> stack;
    const std::size_t n0 = std::max<std::size_t>(cfg.initial_panels, 2);
    auto seed = [&](double a, double b, std::size_t count) {
        for (std::size_t i = 0; i < count; ++i) {
            const double pa = a + (b - a) * static_cast<double>(i) / static_cast<double>(count);
            const double pb = (i + 1 == count) ? b : a + (b - a) * static_cast<double>(i + 1) / static_cast<double>(count);
            stack.push_back({pa, pb, detail::gl_panel(log_f, pa, pb)});
        }
    };
    if (split > lo && split < hi) {
        const auto left = std::clamp<std::size_t>(
            static_cast<std::size_t>(std::lround(static_cast<double>(n0) * (split - lo) / (hi - lo))), 1, n0 - 1);
        seed(lo, split, left);
        seed(split, hi, n0 - left);
    } else {
        seed(lo, hi, n0);
    }

    LogReal initial;
    for (const auto& p : stack) initial += p.estimate;
    if (initial.is_zero()) return initial;

    const double width = hi - lo;
    LogReal total;
    double err_sum = 0.0;  // in units of `initial`
    std::size_t panels = stack.size();
    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        const double mid = 0.5 * (p.a + p.b);
        const LogReal left = detail::gl_panel(log_f, p.a, mid);
        const LogReal right = detail::gl_panel(log_f, mid, p.b);
        const LogReal refined = left + right;
        const double err = detail::scaled_abs_diff(p.estimate, refined, initial);
        const double local_scale = refined.is_zero() ? 0.0 : std::exp(refined.log() - initial.log());
        const double share = (p.b - p.a) / width;
        if (err <= cfg.rel_tol * std::max(local_scale, share) || mid <= p.a || mid >= p.b) {
            total += refined;
            err_sum += err;
            continue;
        }
        if (++panels > cfg.max_panels) {
            const double achieved = (err_sum + err) / std::max(local_scale, 1e-300);
            throw QuadratureFailure("adaptive Gauss-Legendre exceeded panel budget", achieved);
        }
        stack.push_back({p.a, mid, left});
        stack.push_back({mid, p.b, right});
    }
    return total;
}

/// Peak-centred quadrature of exp(log_f) over [a, b] (ends may be infinite).
template <class LogF>
LogReal integrate_log_peaked(LogF&& log_f, double a, double b, const QuadratureConfig& cfg = {}) {
    if (!(b > a)) return LogReal::zero();
    const PeakWindow w = peak_window(log_f, a, b, cfg.drop);
    if (!std::isfinite(w.peak_log)) return LogReal::zero();
    // Node values carry roughly eps * (|log f| + |t f'|) of absolute log error.
    const double half = std::max(w.peak_t - w.lo, w.hi - w.peak_t);
    const double slope = half > 0.0 ? cfg.drop / half : 0.0;
    const double t_mag = std::max({std::abs(w.lo), std::abs(w.hi), 1.0});
    QuadratureConfig local = cfg;
    local.rel_tol = std::max(cfg.rel_tol, 8.0 * std::numeric_limits<double>::epsilon() *
                                              (1.0 + std::abs(w.peak_log) + t_mag * slope));
    return integrate_log_window(log_f, w.lo, w.hi, w.peak_t, local);
}

}  // namespace bergman
