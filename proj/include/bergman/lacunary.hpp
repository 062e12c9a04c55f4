#pragma once

// Lacunary block decomposition (m_n, s_n, d_n) of a radial measure.
//
// Indexing: m[0..N] with m[0] = 0 for the balanced construction, s[0..N-1] and
// d[0..N-1]. Block n owns the data (m_n, s_n, d_n, m_{n+1}); s_n balances the
// moment of order m_n (inner mass = b * outer mass) and m_{n+1} balances s_n
// (inner mass = outer mass).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "bergman/error.hpp"
#include "bergman/log_real.hpp"
#include "bergman/root_finding.hpp"
#include "bergman/weight.hpp"

namespace bergman {

enum class DecompositionMethod { balanced, closed_form };

inline const char* to_string(DecompositionMethod m) {
    return m == DecompositionMethod::balanced ? "balanced" : "closed-form";
}

struct LacunaryDecomposition {
    double b = 6.0;
    std::vector<double> m;
    std::vector<double> s;
    std::vector<LogReal> d;
    DecompositionMethod method = DecompositionMethod::balanced;
    /// Index of entry 0 in the closed-form numbering (0 for balanced).
    std::size_t first_index = 0;

    std::size_t blocks() const noexcept { return s.size(); }
    std::size_t floor_m(std::size_t n) const { return static_cast<std::size_t>(std::floor(m.at(n))); }
    double log_s(std::size_t n) const { return std::log(s.at(n)); }
};

struct BalancingOptions {
    /// Bisection stopping width in the chart coordinate of s.
    double s_tol = 1e-13;
    double m_rel_tol = 1e-12;
    double m_max = 1e8;
    double recheck_tol = 1e-8;
    std::size_t max_iter = 200;
};

/// Balancing residuals of block n: (b-equation at m_n, 1-equation at m_{n+1}),
/// both as log(inner / (c * outer)).
struct BlockResiduals {
    double first;
    double second;
};

inline BlockResiduals block_residuals(const RadialMeasure& mu, const LacunaryDecomposition& dec, std::size_t n) {
    const double ts = mu.t_of_r(dec.s.at(n));
    const double first = balancing_residual_t(mu, dec.m.at(n), ts, dec.b);
    const double second = balancing_residual_t(mu, dec.m.at(n + 1), ts, 1.0);
    return {first, second};
}

/// d_n = int_0^s (r/s)^{m_n} dmu + int_s^R (r/s)^{m_{n+1}} dmu.
inline LogReal compute_dn(const RadialMeasure& mu, double m_n, double m_np1, double s_n) {
    if (!(m_n < m_np1)) throw Error(ErrorCode::invalid_parameter, "compute_dn needs m_n < m_{n+1}");
    if (!(s_n > 0.0 && s_n < mu.R())) throw Error(ErrorCode::invalid_parameter, "compute_dn needs 0 < s_n < R");
    const double ls = std::log(s_n);
    const double ts = mu.t_of_r(s_n);
    const LogReal inner = log_moment_t(mu, m_n, mu.t_min(), ts);
    const LogReal outer = log_moment_t(mu, m_np1, ts, mu.t_max());
    return LogReal::from_log(inner.log() - m_n * ls) + LogReal::from_log(outer.log() - m_np1 * ls);
}

namespace detail {

// Chart coordinate of the s solving inner = b * outer for the moment of order m.
inline double solve_balancing_s(const RadialMeasure& mu, double m, double b, const BalancingOptions& opt) {
    auto f = [&](double t) { return balancing_residual_t(mu, m, t, b); };
    const PeakWindow w = moment_window(mu, m, mu.t_min(), mu.t_max());
    const double step = std::max((w.hi - w.lo) / 16.0, 1e-6);

    double lo = w.peak_t;
    for (int k = 0; f(lo) >= 0.0; ++k) {
        if (k > 200) throw Error(ErrorCode::bracket_failure, "no lower bracket for s");
        lo = (mu.domain() == Domain::disc) ? lo * 0.5 : lo - step * std::ldexp(1.0, k);
    }
    double hi = w.peak_t + step;
    for (int k = 0; f(hi) <= 0.0; ++k) {
        if (k > 200) throw Error(ErrorCode::bracket_failure, "no upper bracket for s");
        hi = w.peak_t + step * std::ldexp(1.0, k + 1);
    }
    return bisect(f, lo, hi, opt.s_tol, opt.s_tol, opt.max_iter).root;
}

// Order m > m_prev with int_0^s r^m dmu = int_s^R r^m dmu.
inline double solve_balancing_m(const RadialMeasure& mu, double t_s, double m_prev, const BalancingOptions& opt) {
    auto g = [&](double m) {
        return log_moment_t(mu, m, mu.t_min(), t_s).log() - log_moment_t(mu, m, t_s, mu.t_max()).log();
    };
    double step = std::max(1.0, 0.5 * m_prev);
    double hi = m_prev + step;
    while (g(hi) >= 0.0) {
        step *= 2.0;
        hi = m_prev + step;
        if (hi > opt.m_max) {
            throw Error(ErrorCode::bracket_failure,
                        "no balancing order below m = " + std::to_string(opt.m_max));
        }
    }
    return bisect(g, m_prev, hi, opt.m_rel_tol, opt.m_rel_tol, opt.max_iter).root;
}

}  // namespace detail

/// Inductive construction seeded at m_0 = 0: s_n from the b-equation at m_n,
/// then m_{n+1} from the 1-equation at s_n. Both residuals are rechecked.
inline LacunaryDecomposition solve_balancing(const RadialMeasure& mu, double b, std::size_t blocks,
                                             const BalancingOptions& opt = {}) {
    if (!(b > 5.0)) throw Error(ErrorCode::invalid_parameter, "balancing constant must satisfy b > 5");
    if (blocks < 2) throw Error(ErrorCode::invalid_parameter, "need at least 2 blocks");

    LacunaryDecomposition dec;
    dec.b = b;
    dec.method = DecompositionMethod::balanced;
    dec.m.push_back(0.0);
    for (std::size_t n = 0; n < blocks; ++n) {
        const double ts = detail::solve_balancing_s(mu, dec.m[n], b, opt);
        dec.s.push_back(mu.r_of_t(ts));
        dec.m.push_back(detail::solve_balancing_m(mu, ts, dec.m[n], opt));
        dec.d.push_back(compute_dn(mu, dec.m[n], dec.m[n + 1], dec.s[n]));
    }

    for (std::size_t n = 0; n < blocks; ++n) {
        const auto res = block_residuals(mu, dec, n);
        const double rel1 = std::abs(std::expm1(res.first));
        const double rel2 = std::abs(std::expm1(res.second));
        if (!(rel1 <= opt.recheck_tol && rel2 <= opt.recheck_tol)) {
            throw Error(ErrorCode::solver_inconsistency,
                        "balancing residual recheck failed at n=" + std::to_string(n) + " (" +
                            std::to_string(rel1) + ", " + std::to_string(rel2) + ")");
        }
        if ((n > 0 && !(dec.s[n] > dec.s[n - 1])) || !(dec.m[n + 1] > dec.m[n]) || dec.d[n].is_zero()) {
            throw Error(ErrorCode::solver_inconsistency, "monotonicity lost at n=" + std::to_string(n));
        }
    }
    return dec;
}

/// m_n and s_n from the closed-form expressions for exponential weights
/// v(r) = exp(-alpha (1 - r^ell)^(-beta)), restricted to the valid sub-range.
struct ClosedFormRange {
    std::size_t first_n = 0;
    std::vector<double> m;
    std::vector<double> s;
};

inline double closed_form_m(double alpha, double beta, double ell, double n) {
    return ell * beta * beta * std::pow(beta / alpha, 1.0 / beta) * std::pow(n, 2.0 + 2.0 / beta) -
           ell * beta * beta * n * n;
}

inline double closed_form_s(double alpha, double beta, double ell, double n) {
    const double base = 1.0 - std::pow(alpha / beta, 1.0 / beta) * std::pow(n, -2.0 / beta);
    if (!(base > 0.0)) return 0.0;
    return std::pow(base, 1.0 / ell);
}

/// Evaluates the formulas for n in [n_first, n_last] and trims leading indices
/// with s_n <= 0, m_n <= 0 or non-increasing m.
inline ClosedFormRange closed_form_decomposition(double alpha, double beta, double ell, std::size_t n_first,
                                                 std::size_t n_last) {
    if (!(alpha > 0.0 && beta > 0.0 && ell > 0.0)) {
        throw Error(ErrorCode::invalid_parameter, "closed form needs alpha, beta, ell > 0");
    }
    n_first = std::max<std::size_t>(n_first, 1);
    if (n_last < n_first) throw Error(ErrorCode::degenerate_range, "empty index range");
    const std::size_t count = n_last - n_first + 1;
    std::vector<double> m(count), s(count);
    for (std::size_t i = 0; i < count; ++i) {
        const auto n = static_cast<double>(n_first + i);
        m[i] = closed_form_m(alpha, beta, ell, n);
        s[i] = closed_form_s(alpha, beta, ell, n);
    }
    std::size_t start = count;
    for (std::size_t i = count; i-- > 0;) {
        const bool ok = s[i] > 0.0 && s[i] < 1.0 && m[i] > 0.0 && (i + 1 == count || m[i] < m[i + 1]) &&
                        (i + 1 == count || s[i] < s[i + 1]);
        if (!ok) break;
        start = i;
    }
    if (start == count) throw Error(ErrorCode::degenerate_range, "no valid closed-form indices");
    ClosedFormRange out;
    out.first_n = n_first + start;
    out.m.assign(m.begin() + static_cast<std::ptrdiff_t>(start), m.end());
    out.s.assign(s.begin() + static_cast<std::ptrdiff_t>(start), s.end());
    return out;
}

/// Wraps a closed-form range as a decomposition; d_n are computed against mu.
inline LacunaryDecomposition to_decomposition(const ClosedFormRange& range, const RadialMeasure& mu, double b = 6.0) {
    if (range.m.size() < 2) throw Error(ErrorCode::degenerate_range, "closed-form range needs >= 2 entries");
    LacunaryDecomposition dec;
    dec.b = b;
    dec.method = DecompositionMethod::closed_form;
    dec.first_index = range.first_n;
    dec.m = range.m;
    dec.s.assign(range.s.begin(), range.s.end() - 1);
    for (std::size_t n = 0; n < dec.s.size(); ++n) dec.d.push_back(compute_dn(mu, dec.m[n], dec.m[n + 1], dec.s[n]));
    return dec;
}

/// de la Vallee Poussin tent of one block: t_k for k in (k_begin - 1, k_end].
struct TentCoefficients {
    std::size_t k_begin = 0;  // first index with (possibly) non-zero weight
    std::size_t peak = 0;
    std::vector<double> t;    // t[i] is the weight of k = k_begin + i

    std::size_t k_end() const noexcept { return k_begin + t.size() - 1; }
    double at(std::size_t k) const noexcept {
        return (k < k_begin || k > k_end()) ? 0.0 : t[k - k_begin];
    }
};

/// Tent rising on (floor m_prev, floor m_n] and falling on (floor m_n, floor m_next].
inline TentCoefficients vpoussin_coeffs(double m_prev, double m_n, double m_next) {
    if (!(m_prev < m_n && m_n < m_next)) throw Error(ErrorCode::invalid_parameter, "need m_prev < m_n < m_next");
    const auto a = static_cast<long long>(std::floor(m_prev));
    const auto c = static_cast<long long>(std::floor(m_n));
    const auto e = static_cast<long long>(std::floor(m_next));
    if (!(a < c && c < e)) throw Error(ErrorCode::degenerate_block, "collapsed block floors");
    TentCoefficients tent;
    tent.k_begin = static_cast<std::size_t>(a + 1);
    tent.peak = static_cast<std::size_t>(c);
    for (long long k = a + 1; k <= e; ++k) {
        tent.t.push_back(k <= c ? static_cast<double>(k - a) / static_cast<double>(c - a)
                                : static_cast<double>(e - k) / static_cast<double>(e - c));
    }
    return tent;
}

/// Tent of block n of a decomposition. Block 0 has no left neighbour: weight 1 on
/// [0, floor m_0] and the falling ramp after, so the tents sum to 1 on [0, floor m_{N-1}].
inline TentCoefficients block_tent(const LacunaryDecomposition& dec, std::size_t n) {
    if (n + 1 >= dec.m.size()) throw Error(ErrorCode::insufficient_blocks, "block index beyond decomposition");
    if (n > 0) return vpoussin_coeffs(dec.m[n - 1], dec.m[n], dec.m[n + 1]);
    const auto c = static_cast<long long>(std::floor(dec.m[0]));
    const auto e = static_cast<long long>(std::floor(dec.m[1]));
    if (!(c < e)) throw Error(ErrorCode::degenerate_block, "collapsed first block");
    TentCoefficients tent;
    tent.k_begin = 0;
    tent.peak = static_cast<std::size_t>(c);
    for (long long k = 0; k <= e; ++k) {
        tent.t.push_back(k <= c ? 1.0 : static_cast<double>(e - k) / static_cast<double>(e - c));
    }
    return tent;
}

enum class GapClass { bounded_plateau, growing };

inline const char* to_string(GapClass g) { return g == GapClass::growing ? "growing" : "bounded-plateau"; }

/// Heuristic evidence about sup_n (m_{n+1} - m_n); not a proof either way.
struct GapProfile {
    std::vector<double> gaps;
    GapClass classification = GapClass::bounded_plateau;
    double first_quartile_mean = 0.0;
    double last_quartile_mean = 0.0;
    double slope = 0.0;
    double slope_stderr = 0.0;
    double t_critical = 0.0;
    bool heuristic = true;
};

/// growing iff the last-quartile mean gap exceeds twice the first-quartile mean
/// and the least-squares slope of the gaps is positive at one-sided 95% confidence.
inline GapProfile gap_profile(std::span<const double> m) {
    if (m.size() < 21) throw Error(ErrorCode::invalid_parameter, "gap profile needs at least 20 blocks");
    GapProfile p;
    for (std::size_t i = 0; i + 1 < m.size(); ++i) p.gaps.push_back(m[i + 1] - m[i]);
    const std::size_t n = p.gaps.size();
    const std::size_t q = std::max<std::size_t>(n / 4, 1);
    p.first_quartile_mean = std::accumulate(p.gaps.begin(), p.gaps.begin() + static_cast<std::ptrdiff_t>(q), 0.0) / q;
    p.last_quartile_mean = std::accumulate(p.gaps.end() - static_cast<std::ptrdiff_t>(q), p.gaps.end(), 0.0) / q;

    const double xbar = (static_cast<double>(n) - 1.0) / 2.0;
    const double ybar = std::accumulate(p.gaps.begin(), p.gaps.end(), 0.0) / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = static_cast<double>(i) - xbar;
        sxx += dx * dx;
        sxy += dx * (p.gaps[i] - ybar);
    }
    p.slope = sxy / sxx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double fit = ybar + p.slope * (static_cast<double>(i) - xbar);
        ssr += (p.gaps[i] - fit) * (p.gaps[i] - fit);
    }
    p.slope_stderr = std::sqrt(ssr / static_cast<double>(n - 2) / sxx);
    p.t_critical = boost::math::quantile(boost::math::students_t(static_cast<double>(n - 2)), 0.95);
    const bool slope_positive = p.slope - p.t_critical * p.slope_stderr > 0.0;
    p.classification = (p.last_quartile_mean > 2.0 * p.first_quartile_mean && slope_positive) ? GapClass::growing
                                                                                               : GapClass::bounded_plateau;
    return p;
}

inline GapProfile gap_profile(const LacunaryDecomposition& dec) { return gap_profile(std::span<const double>(dec.m)); }

}  // namespace bergman
