#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "bergman/weight.hpp"
#include "oracles.hpp"

using namespace bergman;

TEST(Weight, ExponentialValues) {
    const auto w = make_builtin_weight("exponential", {1, 1, 1});
    EXPECT_NEAR(w.eval(0.0), std::exp(-1.0), 1e-15);
    EXPECT_NEAR(w.eval(0.5), std::exp(-2.0), 1e-15);
}

TEST(Weight, PhiPrimeMatchesFiniteDifference) {
    const auto w = RadialWeight::exponential(1, 2, 2);
    const double fd = oracle::central_difference([&](double r) { return w.phi(r); }, 0.7, 1e-6);
    EXPECT_NEAR(w.phi_prime(0.7) / fd, 1.0, 1e-6);
    const double fd2 = oracle::central_difference([&](double r) { return w.phi_prime(r); }, 0.7, 1e-6);
    EXPECT_NEAR(w.phi_second(0.7) / fd2, 1.0, 1e-6);
}

TEST(Weight, PowerDerivatives) {
    const auto w = RadialWeight::power(2.0);
    for (double r : {0.1, 0.5, 0.9}) {
        const double fd = oracle::central_difference([&](double x) { return w.phi(x); }, r, 1e-6);
        EXPECT_NEAR(w.phi_prime(r) / fd, 1.0, 1e-6) << r;
    }
}

TEST(Weight, RejectsBadParameters) {
    EXPECT_THROW(RadialWeight::exponential(0, 1, 1), Error);
    EXPECT_THROW(RadialWeight::power(-1), Error);
    try {
        make_builtin_weight("gaussian", {1});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::unsupported_family);
    }
}

TEST(Weight, TabulatedRejectsIncreasing) {
    EXPECT_THROW(RadialWeight::tabulated({0.0, 0.5, 0.9}, {1.0, 2.0, 0.1}), Error);
    const auto w = RadialWeight::tabulated({0.0, 0.5, 0.9}, {1.0, 0.5, 0.1});
    EXPECT_NEAR(w.eval(0.5), 0.5, 1e-12);
}

TEST(Moment, UnitMeasureElementary) {
    const auto mu = RadialMeasure::weighted_area(RadialWeight::constant());
    EXPECT_NEAR(log_moment(mu, 0, 0, 1).log(), 0.0, 1e-10);
    EXPECT_NEAR(log_moment(mu, 3, 0, 1).log(), std::log(0.4), 1e-10);
}

TEST(Moment, PlaneGaussianClosedForm) {
    // int_0^inf r e^{-log^2 r} dr = sqrt(pi) e^{(m+1)^2/4} with m = 1.
    const auto mu = RadialMeasure::plane_exp_log2();
    const double want = 0.5 * std::log(std::numbers::pi) + 1.0;
    EXPECT_NEAR(log_moment(mu, 1, 0, mu.R()).log(), want, 1e-10);
    EXPECT_NEAR(want, 1.57236, 1e-5);
}

TEST(Moment, ExponentialAgainstSimpson) {
    const auto w = RadialWeight::exponential(1, 1, 2);
    const auto mu = RadialMeasure::weighted_area(w);
    for (double m : {0.0, 3.0, 40.0}) {
        const double ref = oracle::simpson([&](double r) { return std::pow(r, m) * 2.0 * r * w.eval(r); }, 0.0,
                                           1.0 - 1e-9, 200000);
        EXPECT_NEAR(log_moment(mu, m, 0, 1).log(), std::log(ref), 1e-9) << m;
    }
}

TEST(Moment, LargeOrdersStayFinite) {
    const auto disc = RadialMeasure::weighted_area(RadialWeight::exponential(1, 1, 1));
    const auto plane = RadialMeasure::plane_exp_log2();
    for (double m : {0.0, 1.0, 10.0, 100.0, 1e4, 1e6}) {
        EXPECT_TRUE(std::isfinite(log_moment(disc, m, 0, 1).log())) << m;
        EXPECT_TRUE(std::isfinite(log_moment(plane, m, 0, plane.R()).log())) << m;
    }
}

TEST(Moment, SplittingAdds) {
    const auto mu = RadialMeasure::weighted_area(RadialWeight::exponential(1, 1, 1));
    for (double m : {2.0, 500.0}) {
        for (double s : {0.3, 0.9, 0.99}) {
            const LogReal whole = log_moment(mu, m, 0, 1);
            const LogReal split = log_moment(mu, m, 0, s) + log_moment(mu, m, s, 1);
            EXPECT_NEAR(split.log(), whole.log(), 1e-9);
        }
    }
}

TEST(Moment, RejectsBadBounds) {
    const auto mu = RadialMeasure::weighted_area(RadialWeight::constant());
    EXPECT_THROW(log_moment(mu, 1, 0.5, 0.2), Error);
    EXPECT_THROW(log_moment(mu, -1, 0, 1), Error);
}

TEST(Residual, UnitMeasureRoots) {
    const auto mu = RadialMeasure::weighted_area(RadialWeight::constant());
    EXPECT_NEAR(balancing_residual(mu, 0, std::sqrt(0.5), 1), 0.0, 1e-10);
    EXPECT_NEAR(balancing_residual(mu, 0, std::sqrt(3.0) / 2.0, 3), 0.0, 1e-10);
}

TEST(Residual, PlaneRootAgainstRiemannSum) {
    // Root of int_0^s r e^{-log^2 r} dr = int_s^inf; located on a dense grid in t = log r.
    const auto mu = RadialMeasure::plane_exp_log2();
    auto density = [](double t) { return std::exp(2.0 * t - t * t); };
    const double total = oracle::riemann(density, -30.0, 30.0, 600000);
    double lo = -5, hi = 5;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (oracle::riemann(density, -30.0, mid, 300000) < 0.5 * total ? lo : hi) = mid;
    }
    const double s_ref = std::exp(0.5 * (lo + hi));
    double a = 0.5, b = 5.0;
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (a + b);
        (balancing_residual(mu, 1, mid, 1) < 0 ? a : b) = mid;
    }
    EXPECT_NEAR(0.5 * (a + b) / s_ref, 1.0, 1e-6);
}

TEST(Residual, MonotoneInS) {
    const auto mu = RadialMeasure::weighted_area(RadialWeight::exponential(1, 1, 1));
    for (double m : {0.0, 1.0, 10.0, 100.0, 1000.0}) {
        double prev = -std::numeric_limits<double>::infinity();
        for (int i = 1; i <= 100; ++i) {
            const double s = 1.0 - std::pow(0.93, i);
            const double r = balancing_residual(mu, m, s, 6);
            EXPECT_GT(r, prev) << "m=" << m << " s=" << s;
            prev = r;
        }
    }
}

TEST(Residual, DecreasingInM) {
    const auto mu = RadialMeasure::weighted_area(RadialWeight::exponential(1, 1, 1));
    const double s = 0.9;
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 100; ++i) {
        const double m = 2.0 * i;
        const double r = balancing_residual(mu, m, s, 1);
        EXPECT_LT(r, prev) << m;
        prev = r;
    }
}
