#pragma once

// Corpus-level checks of the two-sided estimates: equivalent norm against the
// Bergman norm, block additivity, Khintchine averages, and the solid-core and
// solid-hull sandwiches. All functions are deterministic for fixed inputs;
// corpus items are evaluated concurrently and collected by index.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "bergman/coeff_seq.hpp"
#include "bergman/corpus.hpp"
#include "bergman/error.hpp"
#include "bergman/hull.hpp"
#include "bergman/lacunary.hpp"
#include "bergman/norms.hpp"
#include "bergman/parallel.hpp"
#include "bergman/weight.hpp"

namespace bergman {

struct RatioStats {
    double min = std::numeric_limits<double>::quiet_NaN();
    double max = std::numeric_limits<double>::quiet_NaN();
    double spread = std::numeric_limits<double>::quiet_NaN();  // max / min
    std::size_t count = 0;
};

inline RatioStats ratio_stats(std::span<const double> xs) {
    RatioStats s;
    for (double x : xs) {
        if (!std::isfinite(x)) continue;
        s.min = s.count == 0 ? x : std::min(s.min, x);
        s.max = s.count == 0 ? x : std::max(s.max, x);
        ++s.count;
    }
    if (s.count > 0) s.spread = s.max / s.min;
    return s;
}

struct EquivalenceReport {
    std::vector<double> equivalent;  // equivalent_norm(g)
    std::vector<double> bergman;     // bergman_norm(g, mu, 1)
    std::vector<double> ratios;      // NaN for the zero polynomial
    RatioStats stats;
};

inline EquivalenceReport equivalence_report(const std::vector<CoeffSeq>& corpus, const LacunaryDecomposition& dec,
                                            const RadialMeasure& mu, const NormConfig& cfg = {}) {
    EquivalenceReport rep;
    const std::size_t n = corpus.size();
    rep.equivalent.resize(n);
    rep.bergman.resize(n);
    rep.ratios.resize(n);
    parallel_for(n, [&](std::size_t i) {
        rep.equivalent[i] = equivalent_norm(corpus[i], dec, cfg);
        rep.bergman[i] = bergman_norm(corpus[i], mu, 1, cfg);
        rep.ratios[i] = corpus[i].is_zero() ? std::numeric_limits<double>::quiet_NaN()
                                            : rep.equivalent[i] / rep.bergman[i];
    });
    rep.stats = ratio_stats(rep.ratios);
    return rep;
}

struct AdditivityRecord {
    double norm_h = 0.0;
    double sum_parts = 0.0;
    double ratio = 0.0;  // sum_parts / norm_h
    bool lower_holds = false;
};

struct AdditivityReport {
    std::vector<AdditivityRecord> items;
    double observed_C = 0.0;  // max sum_parts / norm_h
    bool all_lower_hold = true;
    double tolerance = 0.0;
};

/// ||h||_1 <= sum_j ||h_j||_1 <= C ||h||_1 on block-aligned sums.
inline AdditivityReport block_additivity_report(const std::vector<BlockAlignedItem>& items, const RadialMeasure& mu,
                                                double rel_tol = 1e-6, const NormConfig& cfg = {}) {
    AdditivityReport rep;
    rep.tolerance = rel_tol;
    rep.items.resize(items.size());
    parallel_for(items.size(), [&](std::size_t i) {
        AdditivityRecord& r = rep.items[i];
        r.norm_h = bergman_norm(items[i].h, mu, 1, cfg);
        for (const auto& part : items[i].parts) r.sum_parts += bergman_norm(part, mu, 1, cfg);
        r.ratio = r.sum_parts / r.norm_h;
        r.lower_holds = r.norm_h <= r.sum_parts * (1.0 + rel_tol);
    });
    for (const auto& r : rep.items) {
        rep.observed_C = std::max(rep.observed_C, r.ratio);
        rep.all_lower_hold = rep.all_lower_hold && r.lower_holds;
    }
    return rep;
}

struct KhintchineResult {
    double average = 0.0;  // mean of M_1(sum theta_k a_k z^k, 1) over sign patterns
    double bound = 0.0;    // a1 * ||a||_2
    double margin = 0.0;   // average - bound
    bool exhaustive = true;
    std::size_t patterns = 0;
    std::vector<int> best_signs;  // maximising pattern
    double best_value = 0.0;
};

/// Sign averages at radius 1. Up to 14 coefficients all 2^len patterns are
/// enumerated; longer inputs use 4096 seeded samples and are flagged.
inline KhintchineResult khintchine_check(std::span<const double> a, double a1 = std::numbers::sqrt2 / 2.0,
                                         std::uint64_t seed = 0) {
    if (a.empty()) throw Error(ErrorCode::invalid_parameter, "khintchine_check needs at least one coefficient");
    if (!(a1 > 0.0 && a1 <= 1.0)) throw Error(ErrorCode::invalid_parameter, "Khintchine constant must lie in (0, 1]");
    const std::size_t len = a.size();
    KhintchineResult res;
    res.exhaustive = len <= 14;
    res.patterns = res.exhaustive ? (std::size_t{1} << len) : 4096;

    auto rng = item_rng(seed, 0);
    std::vector<std::uint64_t> masks(res.patterns);
    for (std::size_t p = 0; p < res.patterns; ++p) masks[p] = res.exhaustive ? p : rng();

    std::vector<double> values(res.patterns);
    parallel_for(res.patterns, [&](std::size_t p) {
        std::vector<Complex> c(len);
        for (std::size_t k = 0; k < len; ++k) c[k] = ((masks[p] >> (k % 64)) & 1) ? -a[k] : a[k];
        values[p] = circle_mean(CoeffSeq(std::move(c)), 1.0, 1);
    });
    double sum = 0.0;
    std::size_t best = 0;
    for (std::size_t p = 0; p < res.patterns; ++p) {
        sum += values[p];
        if (values[p] > values[best]) best = p;
    }
    double sq = 0.0;
    for (double x : a) sq += x * x;
    res.average = sum / static_cast<double>(res.patterns);
    res.bound = a1 * std::sqrt(sq);
    res.margin = res.average - res.bound;
    res.best_value = values[best];
    for (std::size_t k = 0; k < len; ++k) res.best_signs.push_back(((masks[best] >> (k % 64)) & 1) ? -1 : 1);
    return res;
}

/// theta_k = U_k e^{i psi_k} with U_k, psi_k uniform; |theta_k| <= 1.
inline std::vector<Complex> random_multiplier(std::mt19937_64& rng, std::size_t size) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Complex> theta(size);
    for (auto& t : theta) {
        const double u = unit(rng);
        t = std::polar(u, 2.0 * std::numbers::pi * unit(rng));
    }
    return theta;
}

struct SandwichRecord {
    double bergman = 0.0;
    double hull = std::numeric_limits<double>::quiet_NaN();
    double core = std::numeric_limits<double>::quiet_NaN();
    double hull_ratio = std::numeric_limits<double>::quiet_NaN();  // hull_norm / bergman_norm
    double core_ratio = std::numeric_limits<double>::quiet_NaN();  // max_theta bergman(M g) / solid_core(g)
    bool core_solid = true;  // solid_core_norm(M g) <= solid_core_norm(g) for every theta
    bool hull_solid = true;  // hull_norm(M g) <= hull_norm(g) for every theta
};

struct SandwichReport {
    std::vector<SandwichRecord> items;
    double C_hull = std::numeric_limits<double>::quiet_NaN();
    double C_core = std::numeric_limits<double>::quiet_NaN();
    bool all_core_solid = true;
    bool all_hull_solid = true;
};

/// Hull side needs `hp` and `mu` built from the same weight; core side needs `dec`
/// for `mu`. Either side may be omitted. Multipliers for item i come from
/// item_rng(seed, i).
inline SandwichReport sandwich_report(const std::vector<CoeffSeq>& corpus, const LacunaryDecomposition* dec,
                                      const HullParameters* hp, const RadialMeasure& mu, std::uint64_t seed,
                                      std::size_t multipliers = 16, const NormConfig& cfg = {}) {
    SandwichReport rep;
    rep.items.resize(corpus.size());
    parallel_for(corpus.size(), [&](std::size_t i) {
        const CoeffSeq& g = corpus[i];
        SandwichRecord& r = rep.items[i];
        if (g.is_zero()) {
            r.hull = r.core = 0.0;
            return;
        }
        r.bergman = bergman_norm(g, mu, 1, cfg);
        if (hp) {
            r.hull = hull_norm(g, *hp);
            r.hull_ratio = r.hull / r.bergman;
        }
        if (dec) r.core = solid_core_norm(g, *dec);
        auto rng = item_rng(seed, i);
        double worst = 0.0;
        for (std::size_t j = 0; j < multipliers; ++j) {
            const auto theta = random_multiplier(rng, g.size());
            const CoeffSeq mg = coefficient_multiplier(g, theta);
            if (hp) r.hull_solid = r.hull_solid && hull_norm(mg, *hp) <= r.hull;
            if (dec) {
                r.core_solid = r.core_solid && solid_core_norm(mg, *dec) <= r.core;
                worst = std::max(worst, bergman_norm(mg, mu, 1, cfg));
            }
        }
        if (dec) r.core_ratio = worst / r.core;
    });
    std::vector<double> hull_r, core_r;
    for (const auto& r : rep.items) {
        hull_r.push_back(r.hull_ratio);
        core_r.push_back(r.core_ratio);
        rep.all_core_solid = rep.all_core_solid && r.core_solid;
        rep.all_hull_solid = rep.all_hull_solid && r.hull_solid;
    }
    rep.C_hull = ratio_stats(hull_r).max;
    rep.C_core = ratio_stats(core_r).max;
    return rep;
}

struct ProjectionGrowthRow {
    std::size_t K = 0;
    double sup_ratio = 0.0;  // sup over the family of M_1(P_K g, 1) / M_1(g, 1)
};

/// Report-only: growth of the Dirichlet projection on the unit circle along the
/// block boundaries K = floor(m_n). The family holds the shifted Fejér kernels
/// z^{K-c} F_c with c in {K/4, K/2, K} (M_1 = 1) and `random_count` unit-modulus
/// polynomials of degree 2K.
inline std::vector<ProjectionGrowthRow> projection_growth(const LacunaryDecomposition& dec, std::size_t max_K,
                                                          std::size_t random_count = 4, std::uint64_t seed = 0) {
    std::vector<std::size_t> Ks;
    for (std::size_t n = 1; n <= dec.blocks(); ++n) {
        const std::size_t K = dec.floor_m(n);
        if (K > max_K) break;
        if (K >= 1 && (Ks.empty() || K > Ks.back())) Ks.push_back(K);
    }
    std::vector<ProjectionGrowthRow> rows(Ks.size());
    parallel_for(Ks.size(), [&](std::size_t idx) {
        const std::size_t K = Ks[idx];
        std::vector<CoeffSeq> family;
        for (std::size_t c : {std::max<std::size_t>(K / 4, 1), std::max<std::size_t>(K / 2, 1), K}) {
            std::vector<Complex> f(K + c + 1);
            for (std::size_t k = 0; k <= 2 * c; ++k) {
                const double dist = std::abs(static_cast<double>(k) - static_cast<double>(c));
                f[K - c + k] = 1.0 - dist / static_cast<double>(c + 1);
            }
            family.emplace_back(std::move(f));
        }
        auto rng = item_rng(seed, K);
        for (std::size_t j = 0; j < random_count; ++j) {
            std::vector<Complex> f(2 * K + 1);
            for (auto& a : f) a = draw_coefficient(rng, CoefficientLaw::unit_modulus, 1.0);
            family.emplace_back(std::move(f));
        }
        double sup = 0.0;
        for (const auto& g : family) {
            sup = std::max(sup, circle_mean(dirichlet_project(g, K), 1.0, 1) / circle_mean(g, 1.0, 1));
        }
        rows[idx] = {K, sup};
    });
    return rows;
}

}  // namespace bergman
