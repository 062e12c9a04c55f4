#include <cmath>

#include <gtest/gtest.h>

#include "bergman/lacunary.hpp"
#include "oracles.hpp"

using namespace bergman;

TEST(ClosedForm, Substitution) {
    EXPECT_DOUBLE_EQ(closed_form_m(1, 1, 1, 2), 12.0);
    EXPECT_DOUBLE_EQ(closed_form_s(1, 1, 1, 2), 0.75);
    EXPECT_DOUBLE_EQ(closed_form_m(1, 1, 1, 3), 72.0);
    EXPECT_NEAR(closed_form_s(1, 1, 1, 3), 8.0 / 9.0, 1e-15);
}

TEST(ClosedForm, TrimsInvalidLeadingIndices) {
    const auto range = closed_form_decomposition(1, 1, 1, 1, 10);
    EXPECT_EQ(range.first_n, 2u);
    ASSERT_EQ(range.m.size(), 9u);
    for (std::size_t i = 0; i < range.m.size(); ++i) {
        const double n = static_cast<double>(range.first_n + i);
        EXPECT_NEAR(range.m[i] / (std::pow(n, 4) - n * n), 1.0, 1e-12);
        EXPECT_NEAR(range.s[i] / (1.0 - 1.0 / (n * n)), 1.0, 1e-12);
    }
}

TEST(ClosedForm, GapsGrow) {
    const auto range = closed_form_decomposition(1, 1, 1, 2, 61);
    EXPECT_EQ(gap_profile(range.m).classification, GapClass::growing);
}

TEST(ComputeDn, UnitMeasureElementary) {
    // 1/2 + 2 * int_{1/sqrt2}^1 2 r^3 dr = 1/2 + 3/4
    const auto mu = RadialMeasure::weighted_area(RadialWeight::constant());
    const double s = std::sqrt(0.5);
    const double ref = oracle::simpson([](double r) { return 2.0 * r; }, 0.0, s, 1000) +
                       oracle::simpson([&](double r) { return std::pow(r / s, 2) * 2.0 * r; }, s, 1.0, 1000);
    EXPECT_NEAR(ref, 5.0 / 4.0, 1e-12);
    EXPECT_NEAR(compute_dn(mu, 0, 2, s).value(), ref, 1e-10);
}

TEST(ComputeDn, PlaneBlockFiveAgainstDenseGrid) {
    const auto mu = RadialMeasure::plane_exp_log2();
    const auto dec = solve_balancing(mu, 6.0, 8);
    const std::size_t n = 5;
    const double ls = std::log(dec.s[n]);
    auto f = [&](double t) {
        const double m = t < ls ? dec.m[n] : dec.m[n + 1];
        return std::exp(m * (t - ls) - t * t + t);
    };
    const double ref = oracle::riemann(f, -40.0, ls, 400000) + oracle::riemann(f, ls, 80.0, 400000);
    EXPECT_NEAR(dec.d[n].value() / ref, 1.0, 1e-6);
}

TEST(ComputeDn, RejectsEqualOrders) {
    const auto mu = RadialMeasure::weighted_area(RadialWeight::constant());
    EXPECT_THROW(compute_dn(mu, 3, 3, 0.5), Error);
}

TEST(Balancing, ShapeAndMonotonicity) {
    const auto mu = RadialMeasure::weighted_area(RadialWeight::exponential(1, 1, 2));
    const auto dec = solve_balancing(mu, 6.0, 12);
    ASSERT_EQ(dec.m.size(), 13u);
    ASSERT_EQ(dec.s.size(), 12u);
    EXPECT_EQ(dec.m[0], 0.0);
    for (std::size_t n = 0; n < dec.blocks(); ++n) {
        EXPECT_LT(dec.m[n], dec.m[n + 1]);
        if (n > 0) {
            EXPECT_LT(dec.s[n - 1], dec.s[n]);
        }
        EXPECT_TRUE(std::isfinite(dec.d[n].log()));
        const auto res = block_residuals(mu, dec, n);
        EXPECT_LT(std::abs(res.first), 1e-8);
        EXPECT_LT(std::abs(res.second), 1e-8);
    }
}

TEST(Balancing, Deterministic) {
    const auto mu = RadialMeasure::plane_exp_log2();
    const auto a = solve_balancing(mu, 6.0, 10);
    const auto b = solve_balancing(mu, 6.0, 10);
    EXPECT_EQ(a.m, b.m);
    EXPECT_EQ(a.s, b.s);
    for (std::size_t n = 0; n < a.blocks(); ++n) EXPECT_EQ(a.d[n].log(), b.d[n].log());
}

TEST(Balancing, RejectsSmallB) {
    const auto mu = RadialMeasure::plane_exp_log2();
    try {
        solve_balancing(mu, 5.0, 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::invalid_parameter);
    }
}

TEST(Balancing, PlaneGapsPlateau) {
    const auto dec = solve_balancing(RadialMeasure::plane_exp_log2(), 6.0, 100);
    const auto gp = gap_profile(dec);
    EXPECT_EQ(gp.classification, GapClass::bounded_plateau);
    EXPECT_NEAR(gp.last_quartile_mean, 1.51, 0.05);
}

TEST(Tent, ShapeAndRange) {
    const auto t = vpoussin_coeffs(0, 4, 8);
    EXPECT_EQ(t.at(4), 1.0);
    EXPECT_EQ(t.at(2), 0.5);
    EXPECT_EQ(t.at(6), 0.5);
    EXPECT_EQ(t.at(0), 0.0);
    EXPECT_EQ(t.at(8), 0.0);
    EXPECT_EQ(t.at(9), 0.0);
    for (std::size_t k = 0; k <= 10; ++k) {
        EXPECT_GE(t.at(k), 0.0);
        EXPECT_LE(t.at(k), 1.0);
    }
}

TEST(Tent, CollapsedFloorsRejected) {
    try {
        vpoussin_coeffs(0.2, 0.7, 5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::degenerate_block);
    }
}

TEST(Tent, PartitionOfUnityOnDecomposition) {
    const auto dec = solve_balancing(RadialMeasure::weighted_area(RadialWeight::exponential(1, 1, 2)), 6.0, 8);
    for (std::size_t k = 0; k <= dec.floor_m(dec.blocks() - 1); ++k) {
        double sum = 0.0;
        for (std::size_t n = 0; n < dec.blocks(); ++n) sum += block_tent(dec, n).at(k);
        EXPECT_NEAR(sum, 1.0, 1e-15) << k;
    }
}

TEST(Gaps, ConstantIsPlateau) {
    std::vector<double> m;
    for (int n = 0; n <= 40; ++n) m.push_back(3.0 * n);
    EXPECT_EQ(gap_profile(m).classification, GapClass::bounded_plateau);
}

TEST(Gaps, NeedsTwentyBlocks) {
    const std::vector<double> m{0, 1, 2, 3};
    EXPECT_THROW(gap_profile(m), Error);
}
