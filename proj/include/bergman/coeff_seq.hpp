#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include <fftw3.h>

#include "bergman/error.hpp"

namespace bergman {

using Complex = std::complex<double>;

/// Taylor coefficients a_0 ... a_D of a polynomial. Trailing zeros are allowed;
/// degree() is always size() - 1.
class CoeffSeq {
public:
    CoeffSeq() : coeffs_{Complex{}} {}
    explicit CoeffSeq(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) coeffs_.emplace_back();
    }

    static CoeffSeq zero(std::size_t degree = 0) { return CoeffSeq(std::vector<Complex>(degree + 1)); }
    static CoeffSeq monomial(std::size_t k, Complex c = 1.0) {
        std::vector<Complex> a(k + 1);
        a[k] = c;
        return CoeffSeq(std::move(a));
    }

    std::size_t degree() const noexcept { return coeffs_.size() - 1; }
    std::size_t size() const noexcept { return coeffs_.size(); }

    /// Index of the highest non-zero coefficient, 0 for the zero polynomial.
    std::size_t effective_degree() const noexcept {
        for (std::size_t k = coeffs_.size(); k-- > 0;) {
            if (coeffs_[k] != Complex{}) return k;
        }
        return 0;
    }
    bool is_zero() const noexcept {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](Complex c) { return c == Complex{}; });
    }

    Complex operator[](std::size_t k) const noexcept { return k < coeffs_.size() ? coeffs_[k] : Complex{}; }
    Complex& at(std::size_t k) {
        if (k >= coeffs_.size()) coeffs_.resize(k + 1);
        return coeffs_[k];
    }

    std::span<const Complex> coeffs() const noexcept { return coeffs_; }
    std::vector<Complex>& mutable_coeffs() noexcept { return coeffs_; }

    Complex evaluate(Complex z) const {
        Complex acc{};
        for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * z + coeffs_[k];
        return acc;
    }

    friend CoeffSeq operator+(const CoeffSeq& a, const CoeffSeq& b) {
        std::vector<Complex> out(std::max(a.size(), b.size()));
        for (std::size_t k = 0; k < out.size(); ++k) out[k] = a[k] + b[k];
        return CoeffSeq(std::move(out));
    }
    friend CoeffSeq operator*(Complex lambda, const CoeffSeq& a) {
        std::vector<Complex> out(a.coeffs_);
        for (auto& c : out) c *= lambda;
        return CoeffSeq(std::move(out));
    }
    friend bool operator==(const CoeffSeq& a, const CoeffSeq& b) {
        const std::size_t n = std::max(a.size(), b.size());
        for (std::size_t k = 0; k < n; ++k) {
            if (a[k] != b[k]) return false;
        }
        return true;
    }

private:
    std::vector<Complex> coeffs_;
};

/// P_n g: keeps coefficients 0..n.
inline CoeffSeq dirichlet_project(const CoeffSeq& g, std::size_t n) {
    const auto c = g.coeffs();
    return CoeffSeq(std::vector<Complex>(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(std::min(n + 1, c.size()))));
}

/// Coefficients with index in [lo, hi] (inclusive); others zeroed.
inline CoeffSeq restrict_range(const CoeffSeq& g, std::size_t lo, std::size_t hi) {
    std::vector<Complex> out(std::min(hi + 1, g.size()));
    for (std::size_t k = lo; k < out.size(); ++k) out[k] = g[k];
    return CoeffSeq(std::move(out));
}

namespace detail {

// In-place forward DFT (e^{-2 pi i jk/n}) through FFTW. Plans are created once
// per size under a lock (the planner is not thread-safe); execution on new
// arrays is.
inline void fft_inplace(std::vector<Complex>& data) {
    static std::mutex planner_mutex;
    static std::map<std::size_t, fftw_plan> plans;
    const std::size_t n = data.size();
    if (n < 2) return;
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex);
        auto it = plans.find(n);
        if (it == plans.end()) {
            std::vector<Complex> scratch(n);
            auto* tmp = reinterpret_cast<fftw_complex*>(scratch.data());
            it = plans.emplace(n, fftw_plan_dft_1d(static_cast<int>(n), tmp, tmp, FFTW_FORWARD,
                                                   FFTW_ESTIMATE | FFTW_UNALIGNED)).first;
        }
        plan = it->second;
    }
    fftw_execute_dft(plan, buf, buf);
}

inline double fast_abs(Complex z) noexcept { return std::sqrt(std::norm(z)); }

}  // namespace detail

struct CircleMeanConfig {
    double rel_tol = 1e-8;
    std::size_t max_nodes = std::size_t{1} << 20;
    /// Accepted at the node cap; zeros right on the circle stall the doubling.
    double cap_tol = 1e-6;
};

/// Values of sum_j c_j (r e^{i phi_q})^j on phi_q = 2 pi (q + 1/2) / nodes when
/// `half_shift`, else 2 pi q / nodes (q = 0..nodes-1), scaled by exp(-scale_log).
/// The conjugate orientation e^{-i phi} is used; moduli are unaffected.
inline std::vector<Complex> circle_samples(std::span<const Complex> c, double log_r, double scale_log,
                                           std::size_t nodes, bool half_shift = false) {
    std::vector<Complex> buf(nodes);
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (c[j] == Complex{}) continue;
        const double lr = j == 0 ? 0.0 : static_cast<double>(j) * log_r;
        Complex term = c[j] * std::exp(lr - scale_log);
        if (half_shift) {
            const std::size_t jj = j % (2 * nodes);
            term *= std::polar(1.0, -std::numbers::pi * static_cast<double>(jj) / static_cast<double>(nodes));
        }
        buf[j % nodes] += term;
    }
    detail::fft_inplace(buf);
    return buf;
}

/// log M_p(h, r) for h(z) = z^offset * sum_j c_j z^j, p in {1, 2}.
/// p = 2 is exact via Parseval; p = 1 uses the periodic trapezoid rule with node
/// doubling until successive estimates agree to cfg.rel_tol.
inline double log_circle_mean(std::span<const Complex> c, double log_r, int p, std::size_t offset = 0,
                              const CircleMeanConfig& cfg = {}) {
    constexpr double neg_inf = -std::numeric_limits<double>::infinity();
    if (p != 1 && p != 2) throw Error(ErrorCode::invalid_parameter, "circle mean supports p = 1 or p = 2");
    if (log_r == neg_inf) {
        if (offset > 0 || c.empty()) return neg_inf;
        return c[0] == Complex{} ? neg_inf : std::log(std::abs(c[0]));
    }
    // Per-term log magnitudes; the largest sets the scale.
    double scale = neg_inf;
    std::size_t nonzero = 0;
    std::size_t last = 0;
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (c[j] == Complex{}) continue;
        ++nonzero;
        last = j;
        scale = std::max(scale, std::log(std::abs(c[j])) + (j == 0 ? 0.0 : static_cast<double>(j) * log_r));
    }
    if (nonzero == 0) return neg_inf;
    const double shift = offset == 0 ? 0.0 : static_cast<double>(offset) * log_r;
    if (nonzero == 1) return scale + shift;

    if (p == 2) {
        double acc = 0.0;
        for (std::size_t j = 0; j < c.size(); ++j) {
            if (c[j] == Complex{}) continue;
            const double lm = std::log(std::abs(c[j])) + (j == 0 ? 0.0 : static_cast<double>(j) * log_r);
            acc += std::exp(2.0 * (lm - scale));
        }
        return scale + 0.5 * std::log(acc) + shift;
    }

    const std::span<const Complex> used = c.first(last + 1);
    std::size_t nodes = std::bit_ceil(std::max<std::size_t>(256, 8 * (last + 1)));
    auto sum_abs = [](const std::vector<Complex>& vals) {
        double acc = 0.0;
        for (const Complex& v : vals) acc += detail::fast_abs(v);
        return acc;
    };
    // Each doubling only evaluates the new (odd) nodes of the finer grid.
    double sum = sum_abs(circle_samples(used, log_r, scale, nodes));
    double coarse = sum / static_cast<double>(nodes);
    sum += sum_abs(circle_samples(used, log_r, scale, nodes, true));
    nodes *= 2;
    double fine = sum / static_cast<double>(nodes);
    // Near-zeros on the circle make |h| kink-like, with O(N^-2) trapezoid error;
    // the Richardson value fine + (fine - coarse) / 3 is tracked as well.
    double extrap = fine + (fine - coarse) / 3.0;
    double extrap_prev = std::numeric_limits<double>::quiet_NaN();
    while (std::abs(fine - coarse) > cfg.rel_tol * fine) {
        if (std::abs(extrap - extrap_prev) <= cfg.rel_tol * std::abs(extrap)) {
            fine = extrap;
            break;
        }
        if (2 * nodes > cfg.max_nodes) {
            if (std::abs(fine - coarse) <= cfg.cap_tol * fine) break;
            throw QuadratureFailure("circle mean did not converge within node budget",
                                    std::abs(fine - coarse) / fine);
        }
        sum += sum_abs(circle_samples(used, log_r, scale, nodes, true));
        nodes *= 2;
        coarse = fine;
        fine = sum / static_cast<double>(nodes);
        extrap_prev = extrap;
        extrap = fine + (fine - coarse) / 3.0;
    }
    return scale + std::log(fine) + shift;
}

/// M_p(g, r) = ((1/2pi) int |g(r e^{i phi})|^p dphi)^(1/p).
inline double circle_mean(const CoeffSeq& g, double r, int p, const CircleMeanConfig& cfg = {}) {
    if (!(r >= 0.0)) throw Error(ErrorCode::invalid_parameter, "radius must be >= 0");
    const double log_r = r == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(r);
    return std::exp(log_circle_mean(g.coeffs(), log_r, p, 0, cfg));
}

}  // namespace bergman
