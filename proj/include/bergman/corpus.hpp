#pragma once

// Seeded random polynomial corpora. Item i draws from its own mt19937_64 seeded
// with seed_seq{seed, seed >> 32, i}, so corpora are reproducible and items can be
// generated (or evaluated) in any order.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "bergman/coeff_seq.hpp"
#include "bergman/error.hpp"
#include "bergman/lacunary.hpp"
#include "bergman/norms.hpp"

namespace bergman {

enum class CoefficientLaw { complex_gaussian, unit_modulus, sparse };

inline const char* to_string(CoefficientLaw law) {
    switch (law) {
        case CoefficientLaw::complex_gaussian: return "complex-gaussian";
        case CoefficientLaw::unit_modulus: return "unit-modulus";
        case CoefficientLaw::sparse: return "sparse";
    }
    return "?";
}

inline CoefficientLaw parse_coefficient_law(std::string_view s) {
    if (s == "complex-gaussian") return CoefficientLaw::complex_gaussian;
    if (s == "unit-modulus" || s == "unit-modulus-random-phase") return CoefficientLaw::unit_modulus;
    if (s == "sparse") return CoefficientLaw::sparse;
    throw Error(ErrorCode::invalid_parameter, "unknown coefficient law '" + std::string(s) + "'");
}

struct CorpusSpec {
    std::uint64_t seed = 0;
    std::size_t count = 1;
    std::size_t degree_bound = 1;
    CoefficientLaw law = CoefficientLaw::complex_gaussian;
    /// Probability of a non-zero coefficient for the sparse law.
    double density = 0.5;
    bool block_aligned = false;
};

inline std::mt19937_64 item_rng(std::uint64_t seed, std::size_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(std::uint64_t{index} >> 32)};
    return std::mt19937_64(seq);
}

/// One coefficient from the law. Complex gaussian has E|a|^2 = 1.
inline Complex draw_coefficient(std::mt19937_64& rng, CoefficientLaw law, double density) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    switch (law) {
        case CoefficientLaw::complex_gaussian: {
            const double re = normal(rng);
            return {re, normal(rng)};
        }
        case CoefficientLaw::unit_modulus: return std::polar(1.0, 2.0 * std::numbers::pi * unit(rng));
        case CoefficientLaw::sparse: {
            if (!(unit(rng) < density)) return {};
            const double re = normal(rng);
            return {re, normal(rng)};
        }
    }
    return {};
}

inline void validate(const CorpusSpec& spec) {
    if (spec.count < 1) throw Error(ErrorCode::invalid_parameter, "corpus count must be >= 1");
    if (spec.degree_bound < 1) throw Error(ErrorCode::invalid_parameter, "corpus degree bound must be >= 1");
    if (spec.law == CoefficientLaw::sparse && !(spec.density >= 0.0 && spec.density <= 1.0)) {
        throw Error(ErrorCode::invalid_parameter, "sparse density must lie in [0, 1]");
    }
}

/// Polynomials with degree uniform in [1, D] and i.i.d. coefficients.
inline std::vector<CoeffSeq> build_corpus(const CorpusSpec& spec) {
    validate(spec);
    std::vector<CoeffSeq> out;
    out.reserve(spec.count);
    for (std::size_t i = 0; i < spec.count; ++i) {
        auto rng = item_rng(spec.seed, i);
        std::uniform_int_distribution<std::size_t> deg(1, spec.degree_bound);
        std::vector<Complex> c(deg(rng) + 1);
        for (auto& a : c) a = draw_coefficient(rng, spec.law, spec.density);
        out.emplace_back(std::move(c));
    }
    return out;
}

/// h = sum_j h_j with h_j supported in the solid-core block n_j, n_{j+1} - n_j >= 2
/// (counted among blocks with non-empty coefficient range).
struct BlockAlignedItem {
    CoeffSeq h;
    std::vector<CoeffSeq> parts;
    std::vector<std::size_t> blocks;
};

/// Blocks eligible are those whose coefficient range ends at or below the degree bound.
inline std::vector<BlockAlignedItem> build_block_aligned_corpus(const CorpusSpec& spec, const LacunaryDecomposition& dec) {
    validate(spec);
    // Blocks with collapsed floors have empty coefficient ranges and are skipped.
    std::vector<std::size_t> eligible;
    for (std::size_t n = 0; n < dec.blocks(); ++n) {
        const auto [first, last] = core_block_range(dec, n);
        if (last > spec.degree_bound) break;
        if (first <= last) eligible.push_back(n);
    }
    const std::size_t available = eligible.size();
    if (available == 0) throw Error(ErrorCode::insufficient_blocks, "no decomposition block fits the degree bound");

    std::vector<BlockAlignedItem> out;
    out.reserve(spec.count);
    for (std::size_t i = 0; i < spec.count; ++i) {
        auto rng = item_rng(spec.seed, i);
        std::uniform_int_distribution<std::size_t> start(0, available > 3 ? 1 : 0);
        std::uniform_int_distribution<std::size_t> extra(0, 1);
        BlockAlignedItem item;
        for (std::size_t i = start(rng); i < available; i += 2 + extra(rng)) item.blocks.push_back(eligible[i]);
        std::vector<Complex> total(core_block_range(dec, item.blocks.back()).second + 1);
        for (std::size_t n : item.blocks) {
            const auto [first, last] = core_block_range(dec, n);
            std::vector<Complex> part(last + 1);
            bool any = false;
            for (std::size_t k = first; k <= last; ++k) {
                part[k] = draw_coefficient(rng, spec.law, spec.density);
                any = any || part[k] != Complex{};
            }
            if (!any) part[last] = 1.0;
            for (std::size_t k = first; k <= last; ++k) total[k] += part[k];
            item.parts.emplace_back(std::move(part));
        }
        item.h = CoeffSeq(std::move(total));
        out.push_back(std::move(item));
    }
    return out;
}

}  // namespace bergman
