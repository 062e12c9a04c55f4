#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <limits>
#include <span>

namespace bergman {

/// Non-negative real stored by its natural logarithm. Zero is log = -inf.
/// Sums use a max-shift so magnitudes like e^(1e6) never overflow.
class LogReal {
public:
    constexpr LogReal() noexcept : log_(-std::numeric_limits<double>::infinity()) {}

    static constexpr LogReal from_log(double log_value) noexcept {
        LogReal r;
        r.log_ = log_value;
        return r;
    }
    static LogReal from_value(double value) noexcept {
        return from_log(value > 0.0 ? std::log(value)
                                    : -std::numeric_limits<double>::infinity());
    }
    static constexpr LogReal zero() noexcept { return LogReal{}; }
    static constexpr LogReal one() noexcept { return from_log(0.0); }

    constexpr double log() const noexcept { return log_; }
    double value() const noexcept { return std::exp(log_); }
    constexpr bool is_zero() const noexcept {
        return log_ == -std::numeric_limits<double>::infinity();
    }

    LogReal& operator+=(LogReal other) noexcept {
        *this = *this + other;
        return *this;
    }

    friend LogReal operator+(LogReal a, LogReal b) noexcept {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        const double hi = std::max(a.log_, b.log_);
        const double lo = std::min(a.log_, b.log_);
        return from_log(hi + std::log1p(std::exp(lo - hi)));
    }
    friend LogReal operator*(LogReal a, LogReal b) noexcept {
        if (a.is_zero() || b.is_zero()) return zero();
        return from_log(a.log_ + b.log_);
    }
    friend LogReal operator/(LogReal a, LogReal b) noexcept { return from_log(a.log_ - b.log_); }

    friend constexpr auto operator<=>(LogReal a, LogReal b) noexcept { return a.log_ <=> b.log_; }
    friend constexpr bool operator==(LogReal a, LogReal b) noexcept { return a.log_ == b.log_; }

private:
    double log_;
};

/// log(sum exp(x_i)), -inf for an empty or all -inf input.
inline double log_sum_exp(std::span<const double> xs) noexcept {
    double hi = -std::numeric_limits<double>::infinity();
    for (double x : xs) hi = std::max(hi, x);
    if (!std::isfinite(hi)) return hi;
    double acc = 0.0;
    for (double x : xs) acc += std::exp(x - hi);
    return hi + std::log(acc);
}

}  // namespace bergman
