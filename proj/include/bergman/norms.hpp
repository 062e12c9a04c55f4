#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "bergman/coeff_seq.hpp"
#include "bergman/error.hpp"
#include "bergman/lacunary.hpp"
#include "bergman/log_real.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/weight.hpp"

namespace bergman {

// The radial tolerance sits above the circle-mean accuracy so panel tests are
// not driven by sampling noise.
struct NormConfig {
    QuadratureConfig radial{1e-6, 4000, 4, 35.0};
    CircleMeanConfig circle{1e-8};
};

/// log ||f||_p for p in {1, 2}.
inline double log_bergman_norm(const CoeffSeq& f, const RadialMeasure& mu, int p, const NormConfig& cfg = {}) {
    if (p != 1 && p != 2) throw Error(ErrorCode::invalid_parameter, "Bergman norm supports p = 1 or p = 2");
    if (f.is_zero()) return -std::numeric_limits<double>::infinity();
    const auto coeffs = f.coeffs();
    const std::size_t deg = f.effective_degree();

    if (p == 2) {
        // ||f||_2^2 = sum_k |a_k|^2 int r^{2k} dmu
        LogReal acc;
        for (std::size_t k = 0; k <= deg; ++k) {
            if (coeffs[k] == Complex{}) continue;
            acc += LogReal::from_log(2.0 * std::log(std::abs(coeffs[k]))) *
                   log_moment_t(mu, 2.0 * static_cast<double>(k), mu.t_min(), mu.t_max());
        }
        return 0.5 * acc.log();
    }

    // The mass of M_1(f, r) dmu lies between the windows of the extreme moments.
    auto window = [&](double m) {
        return peak_window([&](double t) { return mu.log_moment_integrand(m, t); }, mu.t_min(), mu.t_max(),
                           cfg.radial.drop);
    };
    const PeakWindow lo_w = window(0.0);
    const PeakWindow hi_w = window(static_cast<double>(deg));
    const double lo = std::min(lo_w.lo, hi_w.lo);
    const double hi = std::max(lo_w.hi, hi_w.hi);
    const auto used = coeffs.first(deg + 1);
    auto log_f = [&](double t) {
        const double dens = mu.log_density_t(t);
        if (dens == -std::numeric_limits<double>::infinity()) return dens;
        return log_circle_mean(used, mu.log_r_of_t(t), 1, 0, cfg.circle) + dens;
    };
    return integrate_log_window(log_f, lo, hi, std::numeric_limits<double>::quiet_NaN(), cfg.radial).log();
}

/// ||f||_p = ((1/2pi) int_0^R int_0^2pi |f(r e^{i phi})|^p dphi dmu(r))^(1/p).
inline double bergman_norm(const CoeffSeq& f, const RadialMeasure& mu, int p = 1, const NormConfig& cfg = {}) {
    return std::exp(log_bergman_norm(f, mu, p, cfg));
}

/// T_n g: coefficients of g multiplied by the block-n tent, zero outside it.
inline CoeffSeq block_operator(const CoeffSeq& g, const LacunaryDecomposition& dec, std::size_t n) {
    if (n >= dec.blocks()) throw Error(ErrorCode::insufficient_blocks, "block index beyond decomposition");
    const TentCoefficients tent = block_tent(dec, n);
    std::vector<Complex> out(std::min(g.size(), tent.k_end() + 1));
    for (std::size_t k = tent.k_begin; k < out.size(); ++k) out[k] = tent.at(k) * g[k];
    return CoeffSeq(std::move(out));
}

/// sum_n d_n M_1(T_n g, s_n). Needs deg g <= floor(m_{N-1}), where the tents
/// form a partition of unity.
inline double equivalent_norm(const CoeffSeq& g, const LacunaryDecomposition& dec, const NormConfig& cfg = {}) {
    const std::size_t N = dec.blocks();
    if (N < 2) throw Error(ErrorCode::insufficient_blocks, "decomposition has fewer than 2 blocks");
    if (g.is_zero()) return 0.0;
    const std::size_t deg = g.effective_degree();
    if (deg > dec.floor_m(N - 1)) {
        throw Error(ErrorCode::insufficient_blocks,
                    "degree " + std::to_string(deg) + " exceeds floor(m_{N-1}) = " + std::to_string(dec.floor_m(N - 1)));
    }
    double total = 0.0;
    std::vector<Complex> block;
    for (std::size_t n = 0; n < N; ++n) {
        const TentCoefficients tent = block_tent(dec, n);
        if (tent.k_begin > deg) break;
        const std::size_t k_hi = std::min(tent.k_end(), deg);
        block.assign(k_hi - tent.k_begin + 1, Complex{});
        bool any = false;
        for (std::size_t k = tent.k_begin; k <= k_hi; ++k) {
            block[k - tent.k_begin] = tent.at(k) * g[k];
            any = any || block[k - tent.k_begin] != Complex{};
        }
        if (!any) continue;
        const double lm = log_circle_mean(block, dec.log_s(n), 1, tent.k_begin, cfg.circle);
        total += std::exp(dec.d[n].log() + lm);
    }
    return total;
}

/// Coefficient range [first, last] of the solid-core block n: block 0 is
/// [0, floor m_1], block n >= 1 is (floor m_n, floor m_{n+1}].
inline std::pair<std::size_t, std::size_t> core_block_range(const LacunaryDecomposition& dec, std::size_t n) {
    const std::size_t last = dec.floor_m(n + 1);
    return {n == 0 ? 0 : dec.floor_m(n) + 1, last};
}

/// sum_n d_n (sum_{k in block n} |g_k|^2 s_n^{2k})^(1/2).
///
/// Every step is monotone in each |g_k| (the per-block shift depends only on the
/// decomposition), so shrinking coefficient moduli never increases the result,
/// also in floating point.
inline double solid_core_norm(const CoeffSeq& g, const LacunaryDecomposition& dec) {
    const std::size_t N = dec.blocks();
    if (g.is_zero()) return 0.0;
    const std::size_t deg = g.effective_degree();
    if (deg > dec.floor_m(N)) {
        throw Error(ErrorCode::insufficient_blocks,
                    "degree " + std::to_string(deg) + " exceeds floor(m_N) = " + std::to_string(dec.floor_m(N)));
    }
    double total = 0.0;
    for (std::size_t n = 0; n < N; ++n) {
        const auto [first, last] = core_block_range(dec, n);
        if (first > deg) break;
        if (last < first) continue;
        const double ls = dec.log_s(n);
        const double shift = std::max(static_cast<double>(first) * ls, static_cast<double>(last) * ls);
        double acc = 0.0;
        for (std::size_t k = first; k <= std::min(last, deg); ++k) {
            const Complex c = g[k];
            if (c == Complex{}) continue;
            const double x = std::log(std::abs(c)) + (static_cast<double>(k) * ls - shift);
            acc += std::exp(2.0 * x);
        }
        if (acc == 0.0) continue;
        total += std::exp(dec.d[n].log() + shift + 0.5 * std::log(acc));
    }
    return total;
}

}  // namespace bergman
