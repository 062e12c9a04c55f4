#pragma once

// Weighted H^infinity side of the solid hull: argmax points r_m of r^m v(r),
// sequences satisfying condition (b), the hull norm sum_n sup |b_k| S_k, the
// solid-core norm of H^infinity_v, the coefficient pairing and multipliers.
//
// Pairing and area normalisation: <f, g> = sum_k f_k conj(g_k) W_k with
// W_k = int_0^1 r^{2k+1} v(r)^2 dr, i.e. the area integral of f conj(g) v^2
// against r dr dphi / (2 pi).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <numbers>
#include <vector>

#include "bergman/coeff_seq.hpp"
#include "bergman/error.hpp"
#include "bergman/log_real.hpp"
#include "bergman/root_finding.hpp"
#include "bergman/weight.hpp"

namespace bergman {

/// Global maximum point r_m in (0, 1) of r^m v(r), i.e. the root of r phi'(r) = m.
inline double max_point(const RadialWeight& weight, double m) {
    if (!weight.has_derivatives()) throw Error(ErrorCode::unsupported_weight, "max_point needs a phi' oracle");
    if (!(m > 0.0)) throw Error(ErrorCode::invalid_parameter, "max_point needs m > 0");
    auto f = [&](double r) { return weight.r_phi_prime(r) - m; };
    double hi = 0.5;
    for (int k = 2; !(f(hi) > 0.0); ++k) {
        if (k > 1000) throw Error(ErrorCode::solver_failure, "r phi'(r) does not exceed m below r = 1");
        hi = -std::expm1(-std::ldexp(1.0, k) * std::numbers::ln2 / 4.0);
        if (hi >= 1.0) throw Error(ErrorCode::solver_failure, "r phi'(r) does not exceed m below r = 1");
    }
    return bisect(f, 0.0, hi, 1e-16, 0.0, 400).root;
}

/// Cached log W_k, W_k = int_0^1 r^{2k+1} v(r)^2 dr. Filled eagerly up to
/// `cached_up_to`, read-only afterwards; larger k are computed on demand.
class PairingWeights {
public:
    PairingWeights(const RadialWeight& weight, std::size_t cached_up_to, QuadratureConfig quad = {})
        : measure_(RadialMeasure::squared_weight_line(weight, quad)) {
        log_w_.reserve(cached_up_to + 1);
        for (std::size_t k = 0; k <= cached_up_to; ++k) log_w_.push_back(compute(k));
    }

    double log_w(std::size_t k) const { return k < log_w_.size() ? log_w_[k] : compute(k); }
    double w(std::size_t k) const { return std::exp(log_w(k)); }
    std::size_t cached() const noexcept { return log_w_.size(); }

private:
    double compute(std::size_t k) const {
        return log_moment_t(measure_, 2.0 * static_cast<double>(k) + 1.0, measure_.t_min(), measure_.t_max()).log();
    }

    RadialMeasure measure_;
    std::vector<double> log_w_;
};

struct ConditionBOptions {
    double mu1 = 1.0;
    double margin = 1e-3;
    /// Largest k whose W_k is cached eagerly (further k are computed on demand).
    std::size_t w_cache_max = 4096;
    QuadratureConfig quad{};
};

/// Data of condition (b) and the hull weights.
///
/// mu[i] stores mu_{i+1}. Interval 0 is [0, mu_1] and uses r_{mu_1}; interval
/// j >= 1 is (mu_j, mu_{j+1}] and uses r_{mu_j}.
struct HullParameters {
    double b = 0.0;
    double K = 0.0;
    std::vector<double> mu;
    std::vector<double> r_mu;
    std::vector<double> log_v_r_mu;
    /// log of the lower and upper ratios for each consecutive pair (mu_n, mu_{n+1}).
    std::vector<double> log_lower_ratio;
    std::vector<double> log_upper_ratio;
    std::shared_ptr<const RadialWeight> weight;
    std::shared_ptr<const PairingWeights> pairing;

    std::size_t intervals() const noexcept { return mu.size(); }
    std::size_t max_index() const { return static_cast<std::size_t>(std::floor(mu.back())); }

    std::size_t interval_of(std::size_t k) const {
        const auto it = std::lower_bound(mu.begin(), mu.end(), static_cast<double>(k));
        if (it == mu.end()) throw Error(ErrorCode::insufficient_blocks, "index beyond last hull interval");
        return static_cast<std::size_t>(it - mu.begin());
    }
    std::size_t radius_index(std::size_t interval) const noexcept { return interval == 0 ? 0 : interval - 1; }

    double log_sigma(std::size_t k) const {
        return static_cast<double>(k) * std::log(r_mu[radius_index(interval_of(k))]);
    }
    double log_S(std::size_t k) const {
        const std::size_t j = radius_index(interval_of(k));
        return pairing->log_w(k) - log_v_r_mu[j] - static_cast<double>(k) * std::log(r_mu[j]);
    }
    double sigma(std::size_t k) const { return std::exp(log_sigma(k)); }
    double S(std::size_t k) const { return std::exp(log_S(k)); }
};

namespace detail {

// log of (r_a / r_c)^m v(r_a) / v(r_c).
inline double log_ratio(const RadialWeight& w, double m, double r_a, double r_c) {
    return m * (std::log(r_a) - std::log(r_c)) + w.log_eval(r_a) - w.log_eval(r_c);
}

}  // namespace detail

/// Greedy construction: mu_{n+1} is the smallest mu' whose lower ratio reaches
/// b (1 + margin); then the upper ratio must stay <= K.
inline HullParameters find_condition_b_sequence(const RadialWeight& weight, double b, double K, std::size_t count,
                                                const ConditionBOptions& opt = {}) {
    if (!(b > 2.0)) throw Error(ErrorCode::invalid_parameter, "condition (b) needs b > 2");
    if (!(K > b)) throw Error(ErrorCode::invalid_parameter, "condition (b) needs K > b");
    if (count < 2) throw Error(ErrorCode::invalid_parameter, "need at least two mu values");
    if (!(opt.mu1 > 0.0)) throw Error(ErrorCode::invalid_parameter, "mu_1 must be positive");

    HullParameters hp;
    hp.b = b;
    hp.K = K;
    hp.weight = std::make_shared<const RadialWeight>(weight);
    hp.mu.push_back(opt.mu1);
    hp.r_mu.push_back(max_point(weight, opt.mu1));
    const double target = std::log(b * (1.0 + opt.margin));

    for (std::size_t n = 0; n + 1 < count; ++n) {
        const double mu_n = hp.mu[n];
        const double r_n = hp.r_mu[n];
        auto lower = [&](double mu_next) {
            return detail::log_ratio(weight, mu_n, r_n, max_point(weight, mu_next)) - target;
        };
        double hi = 2.0 * mu_n;
        while (lower(hi) < 0.0) {
            hi *= 2.0;
            if (hi > 1e15) throw Error(ErrorCode::bracket_failure, "lower ratio never reaches b");
        }
        const auto br = bisect(lower, mu_n, hi, 0.0, 1e-14);
        double mu_next = br.hi;
        while (lower(mu_next) < 0.0) mu_next = std::nextafter(mu_next, std::numeric_limits<double>::infinity());
        const double r_next = max_point(weight, mu_next);

        const double log_lower = detail::log_ratio(weight, mu_n, r_n, r_next);
        const double log_upper = detail::log_ratio(weight, mu_next, r_next, r_n);
        if (log_upper > std::log(K)) throw ConditionBViolation(n + 1, std::exp(log_upper), K);
        hp.mu.push_back(mu_next);
        hp.r_mu.push_back(r_next);
        hp.log_lower_ratio.push_back(log_lower);
        hp.log_upper_ratio.push_back(log_upper);
    }
    for (double r : hp.r_mu) hp.log_v_r_mu.push_back(weight.log_eval(r));
    hp.pairing = std::make_shared<const PairingWeights>(weight, std::min(hp.max_index(), opt.w_cache_max), opt.quad);
    return hp;
}

namespace detail {

inline void require_hull_degree(const CoeffSeq& c, const HullParameters& hp) {
    if (c.effective_degree() > hp.max_index()) {
        throw Error(ErrorCode::insufficient_blocks, "degree exceeds the last hull interval");
    }
}

// Calls fn(interval, k) for every non-zero coefficient, intervals ascending.
template <class Fn>
void for_each_in_intervals(const CoeffSeq& c, const HullParameters& hp, Fn&& fn) {
    const std::size_t deg = c.effective_degree();
    std::size_t j = 0;
    for (std::size_t k = 0; k <= deg; ++k) {
        if (c[k] == Complex{}) continue;
        while (static_cast<double>(k) > hp.mu[j]) ++j;
        fn(j, k);
    }
}

}  // namespace detail

/// ||b||_{mu,S} = sum over intervals of sup_k |b_k| S_k.
inline double hull_norm(const CoeffSeq& bc, const HullParameters& hp) {
    detail::require_hull_degree(bc, hp);
    std::vector<double> sup(hp.intervals(), 0.0);
    detail::for_each_in_intervals(bc, hp, [&](std::size_t j, std::size_t k) {
        sup[j] = std::max(sup[j], std::exp(std::log(std::abs(bc[k])) + hp.log_S(k)));
    });
    double total = 0.0;
    for (double s : sup) total += s;
    return total;
}

/// ||b||_{v,s} = sup over intervals of v(r_n) sum_k |b_k| sigma_k.
inline double hinfty_core_norm(const CoeffSeq& bc, const HullParameters& hp) {
    detail::require_hull_degree(bc, hp);
    std::vector<double> sums(hp.intervals(), 0.0);
    detail::for_each_in_intervals(bc, hp, [&](std::size_t j, std::size_t k) {
        const std::size_t ri = hp.radius_index(j);
        sums[j] += std::exp(hp.log_v_r_mu[ri] + std::log(std::abs(bc[k])) +
                            static_cast<double>(k) * std::log(hp.r_mu[ri]));
    });
    return sums.empty() ? 0.0 : *std::max_element(sums.begin(), sums.end());
}

namespace detail {

// log max_phi |sum_j c_j (r e^{i phi})^j|.
inline double log_circle_max(std::span<const Complex> c, double log_r) {
    constexpr double neg_inf = -std::numeric_limits<double>::infinity();
    double scale = neg_inf;
    std::size_t last = 0;
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (c[j] == Complex{}) continue;
        last = j;
        scale = std::max(scale, std::log(std::abs(c[j])) + (j == 0 ? 0.0 : static_cast<double>(j) * log_r));
    }
    if (scale == neg_inf) return neg_inf;
    if (log_r == neg_inf) return scale;
    const std::span<const Complex> used = c.first(last + 1);
    const std::size_t nodes = std::bit_ceil(std::max<std::size_t>(16, 8 * (last + 1)));
    const auto vals = circle_samples(used, log_r, scale, nodes);
    std::size_t best = 0;
    for (std::size_t q = 1; q < nodes; ++q) {
        if (std::abs(vals[q]) > std::abs(vals[best])) best = q;
    }
    // circle_samples uses e^{-i phi_q}; refine |h(phi)| around phi = -2 pi q / nodes.
    std::vector<Complex> scaled(used.size());
    for (std::size_t j = 0; j < used.size(); ++j) {
        scaled[j] = used[j] == Complex{} ? Complex{} : used[j] * std::exp(static_cast<double>(j) * log_r - scale);
    }
    auto mag = [&](double phi) {
        const Complex z = std::polar(1.0, phi);
        Complex acc{};
        for (std::size_t j = scaled.size(); j-- > 0;) acc = acc * z + scaled[j];
        return std::abs(acc);
    };
    const double h = 2.0 * std::numbers::pi / static_cast<double>(nodes);
    const double phi0 = -h * static_cast<double>(best);
    const auto [phi, val] = golden_section_max(mag, phi0 - h, phi0 + h, 1e-15, 200);
    return scale + std::log(std::max(val, std::abs(vals[best])));
}

}  // namespace detail

struct HInftyNormResult {
    double value = 0.0;       // sampled lower bound of sup v |f|
    double best_r = 0.0;
    std::size_t grid = 0;     // radial grid size of the accepted estimate
    double last_change = 0.0; // relative change of the last doubling
};

/// sup_z v(|z|) |f(z)| on a radial grid uniform in t = -log(1 - r) (refined toward
/// r = 1), golden-section refinement at the best node, grid doubling until the
/// estimate changes by less than rel_tol. Always a lower bound of the true sup.
inline HInftyNormResult hinfty_norm_report(const CoeffSeq& f, const RadialWeight& weight, double rel_tol = 1e-6) {
    HInftyNormResult res;
    if (f.is_zero()) return res;
    const auto c = f.coeffs().first(f.effective_degree() + 1);
    constexpr double t_max = 36.0;
    auto g = [&](double t) {
        if (t <= 0.0) return weight.log_eval(0.0) + detail::log_circle_max(c, -std::numeric_limits<double>::infinity());
        const double u = std::exp(-t);
        return weight.log_eval_comp(u) + detail::log_circle_max(c, std::log1p(-u));
    };
    double prev = -std::numeric_limits<double>::infinity();
    for (std::size_t n = 512; n <= (std::size_t{1} << 15); n *= 2) {
        std::size_t best = 0;
        double best_val = -std::numeric_limits<double>::infinity();
        const double h = t_max / static_cast<double>(n);
        for (std::size_t i = 0; i <= n; ++i) {
            const double v = g(h * static_cast<double>(i));
            if (v > best_val) {
                best_val = v;
                best = i;
            }
        }
        const double a = h * static_cast<double>(best > 0 ? best - 1 : 0);
        const double b = h * static_cast<double>(std::min(best + 1, n));
        const auto [t_star, refined] = golden_section_max(g, a, b, 1e-14, 200);
        const double val = std::max(refined, best_val);
        const double est = std::exp(val);
        res.grid = n;
        res.last_change = std::isfinite(prev) ? std::abs(est - std::exp(prev)) / est : 1.0;
        res.value = est;
        res.best_r = refined >= best_val ? -std::expm1(-t_star) : -std::expm1(-h * static_cast<double>(best));
        if (res.last_change < rel_tol) break;
        prev = val;
    }
    return res;
}

inline double hinfty_norm(const CoeffSeq& f, const RadialWeight& weight) {
    return hinfty_norm_report(f, weight).value;
}

/// <f, g> = sum_k f_k conj(g_k) W_k using cached pairing weights.
inline Complex dual_pairing(const CoeffSeq& f, const CoeffSeq& g, const PairingWeights& w) {
    Complex total{};
    const std::size_t n = std::min(f.size(), g.size());
    for (std::size_t k = 0; k < n; ++k) {
        const Complex a = f[k], c = g[k];
        if (a == Complex{} || c == Complex{}) continue;
        const double lmag = std::log(std::abs(a)) + std::log(std::abs(c)) + w.log_w(k);
        total += std::polar(std::exp(lmag), std::arg(a) - std::arg(c));
    }
    return total;
}

inline Complex dual_pairing(const CoeffSeq& f, const CoeffSeq& g, const RadialWeight& weight) {
    const PairingWeights w(weight, std::min(f.size(), g.size()));
    return dual_pairing(f, g, w);
}

/// M_theta f = sum theta_k f_k z^k, |theta_k| <= 1. The result satisfies
/// |(M_theta f)_k| <= |f_k| exactly in floating point.
inline CoeffSeq coefficient_multiplier(const CoeffSeq& f, std::span<const Complex> theta) {
    if (theta.size() < f.size()) throw Error(ErrorCode::invalid_multiplier, "multiplier shorter than coefficient list");
    std::vector<Complex> out(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (!(std::abs(theta[k]) <= 1.0)) {
            throw Error(ErrorCode::invalid_multiplier, "|theta_k| > 1 at k=" + std::to_string(k));
        }
        Complex p = theta[k] * f[k];
        const double bound = std::abs(f[k]);
        while (std::abs(p) > bound) p *= 1.0 - 0x1p-52;
        out[k] = p;
    }
    return CoeffSeq(std::move(out));
}

/// Sampled check of the Laplacian positivity behind class W_0. Evidence only.
struct W0Report {
    std::size_t samples = 0;
    double min_laplacian = 0.0;
    double argmin_r = 0.0;
    /// max |rho(r_i) - rho(r_{i+1})| / |r_i - r_{i+1}| with rho = 1/sqrt(Laplacian).
    double rho_lipschitz = 0.0;
    bool pass = false;
};

inline W0Report w0_diagnostic(const RadialWeight& weight, std::size_t samples = 1024) {
    if (!weight.has_derivatives()) throw Error(ErrorCode::unsupported_weight, "W0 diagnostic needs phi', phi''");
    if (samples < 2) throw Error(ErrorCode::invalid_parameter, "need at least 2 samples");
    W0Report rep;
    rep.samples = samples;
    rep.min_laplacian = std::numeric_limits<double>::infinity();
    double prev_rho = 0.0, prev_r = 0.0;
    for (std::size_t i = 1; i <= samples; ++i) {
        const double r = static_cast<double>(i) / static_cast<double>(samples + 1);
        const double lap = weight.phi_second(r) + weight.phi_prime(r) / r;
        if (lap < rep.min_laplacian || std::isnan(lap)) {
            rep.min_laplacian = lap;
            rep.argmin_r = r;
        }
        const double rho = lap > 0.0 ? 1.0 / std::sqrt(lap) : std::numeric_limits<double>::infinity();
        if (i > 1) {
            const double q = std::abs(rho - prev_rho) / (r - prev_r);
            rep.rho_lipschitz = std::isnan(q) ? std::numeric_limits<double>::infinity() : std::max(rep.rho_lipschitz, q);
        }
        prev_rho = rho;
        prev_r = r;
    }
    rep.pass = rep.min_laplacian > 0.0 && std::isfinite(rep.min_laplacian);
    return rep;
}

}  // namespace bergman
