#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "bergman/hull.hpp"
#include "bergman/norms.hpp"
#include "oracles.hpp"

using namespace bergman;

namespace {

RadialWeight example() { return RadialWeight::exponential(1, 1, 2); }

std::vector<Complex> random_coeffs(std::mt19937_64& rng, std::size_t len) {
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<Complex> c(len);
    for (auto& a : c) a = {n(rng), n(rng)};
    return c;
}

// Interval index of k by linear scan: 0 for k <= mu_1, else the n with mu_n < k <= mu_{n+1}.
std::size_t scan_interval(const HullParameters& hp, std::size_t k) {
    std::size_t j = 0;
    while (static_cast<double>(k) > hp.mu[j]) ++j;
    return j;
}

}  // namespace

TEST(MaxPoint, QuadraticOracles) {
    // r/(1-r)^2 = 2  <=>  2r^2 - 5r + 2 = 0
    EXPECT_NEAR(max_point(RadialWeight::exponential(1, 1, 1), 2.0), (5.0 - 3.0) / 4.0, 1e-12);
    // 2u/(1-u)^2 = 4 with u = r^2  <=>  2u^2 - 5u + 2 = 0
    EXPECT_NEAR(max_point(example(), 4.0), std::sqrt(0.5), 1e-12);
}

TEST(MaxPoint, SmallOrderNearZero) {
    EXPECT_LT(max_point(RadialWeight::exponential(1, 1, 1), 1e-3), 0.05);
    EXPECT_LT(max_point(example(), 1e-3), 0.05);
    EXPECT_LT(max_point(RadialWeight::power(2.0), 1e-3), 0.05);
}

TEST(MaxPoint, IsArgmax) {
    const auto w = example();
    for (double m : {0.5, 7.0, 300.0}) {
        const double r = max_point(w, m);
        auto f = [&](double x) { return m * std::log(x) + w.log_eval(x); };
        EXPECT_GE(f(r), f(r * (1 - 1e-6)));
        EXPECT_GE(f(r), f(r + (1 - r) * 1e-6));
    }
}

TEST(MaxPoint, Errors) {
    EXPECT_THROW(max_point(RadialWeight::tabulated({0.0, 0.5}, {1.0, 0.5}), 2.0), Error);
    EXPECT_THROW(max_point(example(), 0.0), Error);
}

TEST(ConditionB, ExampleWeightRecheck) {
    const auto w = example();
    const auto hp = find_condition_b_sequence(w, 2.5, 50.0, 50);
    ASSERT_EQ(hp.mu.size(), 50u);
    for (std::size_t n = 0; n + 1 < hp.mu.size(); ++n) {
        const double x = hp.r_mu[n], y = hp.r_mu[n + 1];
        const double lower = std::pow(x / y, hp.mu[n]) * std::exp(-1 / (1 - x * x) + 1 / (1 - y * y));
        const double upper = std::pow(y / x, hp.mu[n + 1]) * std::exp(-1 / (1 - y * y) + 1 / (1 - x * x));
        EXPECT_GE(lower, 2.5 * (1 - 1e-9));
        EXPECT_LE(upper, 50.0 * (1 + 1e-9));
        EXPECT_LT(x, y);
    }
}

TEST(ConditionB, ViolationCarriesIndex) {
    try {
        find_condition_b_sequence(example(), 2.5, 3.0, 10);
        FAIL();
    } catch (const ConditionBViolation& e) {
        EXPECT_GE(e.index(), 1u);
        EXPECT_GT(e.upper_ratio(), 3.0);
    }
    EXPECT_THROW(find_condition_b_sequence(example(), 2.0, 25.0, 10), Error);
}

TEST(HullParameters, SigmaAndSIdentities) {
    const auto hp = find_condition_b_sequence(example(), 2.5, 25.0, 10);
    for (std::size_t k = 0; k <= hp.max_index(); k += 7) {
        const std::size_t j = hp.radius_index(hp.interval_of(k));
        EXPECT_EQ(hp.interval_of(k), scan_interval(hp, k));
        EXPECT_GT(hp.sigma(k), 0.0);
        EXPECT_LE(hp.sigma(k), 1.0);
        const double w = hp.pairing->w(k);
        EXPECT_NEAR(hp.S(k) * std::exp(hp.log_v_r_mu[j]) * hp.sigma(k) / w, 1.0, 1e-10);
    }
    const std::size_t k = static_cast<std::size_t>(std::floor(hp.mu[3])) + 1;
    EXPECT_NEAR(hp.sigma(k) / hp.sigma(k + 1), 1.0 / hp.r_mu[3], 1e-12);
}

TEST(HullNorm, BruteForce) {
    const auto hp = find_condition_b_sequence(example(), 2.5, 25.0, 8);
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        const CoeffSeq b(random_coeffs(rng, hp.max_index() + 1));
        std::vector<double> sup(hp.mu.size(), 0.0), sums(hp.mu.size(), 0.0);
        for (std::size_t k = 0; k <= hp.max_index(); ++k) {
            const std::size_t j = scan_interval(hp, k);
            const std::size_t ri = j == 0 ? 0 : j - 1;
            sup[j] = std::max(sup[j], std::abs(b[k]) * hp.S(k));
            sums[j] += std::abs(b[k]) * std::pow(hp.r_mu[ri], static_cast<double>(k)) * example().eval(hp.r_mu[ri]);
        }
        double hull = 0.0;
        for (double s : sup) hull += s;
        EXPECT_NEAR(hull_norm(b, hp) / hull, 1.0, 1e-12);
        EXPECT_NEAR(hinfty_core_norm(b, hp) / *std::max_element(sums.begin(), sums.end()), 1.0, 1e-12);
    }
}

TEST(HullNorm, UnitVectorsAndZero) {
    const auto hp = find_condition_b_sequence(example(), 2.5, 25.0, 8);
    EXPECT_EQ(hull_norm(CoeffSeq::zero(4), hp), 0.0);
    EXPECT_EQ(hinfty_core_norm(CoeffSeq::zero(4), hp), 0.0);
    for (std::size_t k : {0, 1, 2, 9, 40}) {
        EXPECT_NEAR(hull_norm(CoeffSeq::monomial(k), hp) / hp.S(k), 1.0, 1e-14);
    }
    EXPECT_THROW(hull_norm(CoeffSeq::monomial(hp.max_index() + 1), hp), Error);
}

TEST(HullNorm, Solidity) {
    const auto hp = find_condition_b_sequence(example(), 2.5, 25.0, 8);
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        const CoeffSeq b(random_coeffs(rng, hp.max_index() + 1));
        std::vector<Complex> theta(b.size());
        for (auto& t : theta) t = std::polar(u(rng), 6.28 * u(rng));
        const auto mb = coefficient_multiplier(b, theta);
        EXPECT_LE(hull_norm(mb, hp), hull_norm(b, hp));
        EXPECT_LE(hinfty_core_norm(mb, hp), hinfty_core_norm(b, hp));
    }
}

TEST(HInfty, ClosedForms) {
    const auto w = RadialWeight::exponential(1, 1, 1);
    EXPECT_NEAR(hinfty_norm(CoeffSeq::monomial(2), w), std::exp(-2.0) / 4.0, 1e-9);
    EXPECT_NEAR(hinfty_norm(CoeffSeq({1.0}), w), std::exp(-1.0), 1e-12);
    EXPECT_NEAR(hinfty_norm(CoeffSeq({Complex(3, 4)}), w), 5.0 * std::exp(-1.0), 1e-12);
}

TEST(HInfty, LowerBoundOfDenseSearch) {
    const auto w = example();
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 3; ++trial) {
        const auto c = random_coeffs(rng, 10);
        double dense = 0.0;
        for (int i = 0; i < 2000; ++i) {
            const double r = i / 2000.0;
            for (int q = 0; q < 256; ++q) {
                dense = std::max(dense, w.eval(r) * std::abs(oracle::horner(c, std::polar(r, 2 * std::numbers::pi * q / 256))));
            }
        }
        const double got = hinfty_norm(CoeffSeq(c), w);
        EXPECT_GE(got, dense * (1 - 1e-9));
        EXPECT_LE(got, dense * 1.01);
    }
}

TEST(Pairing, WeightsAgainstSimpson) {
    const auto w = example();
    const PairingWeights pw(w, 50);
    for (std::size_t k : {0, 1, 10, 50}) {
        const double ref = oracle::simpson(
            [&](double r) { return std::pow(r, 2.0 * k + 1) * std::exp(2 * w.log_eval(r)); }, 0.0, 1.0 - 1e-12, 200000);
        EXPECT_NEAR(pw.w(k) / ref, 1.0, 1e-9) << k;
    }
    EXPECT_EQ(pw.cached(), 51u);
    EXPECT_GT(pw.w(200), 0.0);
}

TEST(Pairing, UnitWeightAndOrthogonality) {
    const auto one = RadialWeight::constant();
    for (std::size_t k : {0, 1, 9}) {
        EXPECT_NEAR(dual_pairing(CoeffSeq::monomial(k), CoeffSeq::monomial(k), one).real(), 1.0 / (2 * k + 2), 1e-12);
    }
    EXPECT_EQ(dual_pairing(CoeffSeq::monomial(2), CoeffSeq::monomial(3), example()), Complex{});
}

TEST(Pairing, AgainstGridAndHoelder) {
    const auto w = example();
    const auto mu = RadialMeasure::weighted_area(w);
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 5; ++trial) {
        const auto f = random_coeffs(rng, 6), g = random_coeffs(rng, 8);
        // (1/2pi) int int f conj(g) v^2 r dr dphi on a dense grid
        Complex ref{};
        const std::size_t nodes = 32;
        const double re = oracle::simpson(
            [&](double r) {
                Complex acc{};
                for (std::size_t q = 0; q < nodes; ++q) {
                    const Complex z = std::polar(r, 2 * std::numbers::pi * q / nodes);
                    acc += oracle::horner(f, z) * std::conj(oracle::horner(g, z));
                }
                return (acc / double(nodes)).real() * std::exp(2 * w.log_eval(r)) * r;
            },
            0.0, 1.0 - 1e-12, 100000);
        const double im = oracle::simpson(
            [&](double r) {
                Complex acc{};
                for (std::size_t q = 0; q < nodes; ++q) {
                    const Complex z = std::polar(r, 2 * std::numbers::pi * q / nodes);
                    acc += oracle::horner(f, z) * std::conj(oracle::horner(g, z));
                }
                return (acc / double(nodes)).imag() * std::exp(2 * w.log_eval(r)) * r;
            },
            0.0, 1.0 - 1e-12, 100000);
        ref = {re, im};
        const Complex got = dual_pairing(CoeffSeq(f), CoeffSeq(g), w);
        EXPECT_LT(std::abs(got - ref) / std::abs(ref), 1e-5);
        EXPECT_LE(std::abs(got), bergman_norm(CoeffSeq(f), mu) * hinfty_norm(CoeffSeq(g), w) * (1 + 2e-5));
    }
}

TEST(Multiplier, Cases) {
    const CoeffSeq f({1.0, 1.0, 1.0});
    const std::vector<Complex> ones(3, 1.0), zeros(3, 0.0), alt{1.0, -1.0, 1.0}, bad{1.0, 1.5, 0.0};
    EXPECT_EQ(coefficient_multiplier(f, ones), f);
    EXPECT_TRUE(coefficient_multiplier(f, zeros).is_zero());
    EXPECT_EQ(coefficient_multiplier(f, alt), CoeffSeq({1.0, -1.0, 1.0}));
    try {
        coefficient_multiplier(f, bad);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::invalid_multiplier);
    }
}

TEST(W0, Diagnostic) {
    const auto rep = w0_diagnostic(example(), 1024);
    EXPECT_TRUE(rep.pass);
    EXPECT_GT(rep.min_laplacian, 0.0);
    EXPECT_EQ(rep.samples, 1024u);
    EXPECT_FALSE(w0_diagnostic(RadialWeight::constant(), 64).pass);
    const auto power = w0_diagnostic(RadialWeight::power(2.0), 256);
    EXPECT_TRUE(std::isfinite(power.min_laplacian));
    EXPECT_THROW(w0_diagnostic(RadialWeight::tabulated({0.0, 0.5}, {1.0, 0.5})), Error);
}
