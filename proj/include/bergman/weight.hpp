#pragma once

// Radial weights v(r) = exp(-phi(r)), radial measures on [0, R) and their moments.
//
// All measures are handled in a chart t in which the moment integrands are well
// shaped: r = 1 - e^(-t) on the disc (resolves the boundary layer of exponential
// weights) and r = e^t in the plane (log-normal shapes become Gaussians).

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bergman/error.hpp"
#include "bergman/log_real.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

enum class WeightFamily { exponential, power, constant, tabulated };

inline const char* to_string(WeightFamily f) {
    switch (f) {
        case WeightFamily::exponential: return "exponential";
        case WeightFamily::power: return "power";
        case WeightFamily::constant: return "constant";
        case WeightFamily::tabulated: return "tabulated";
    }
    return "unknown";
}

struct ExponentialParams {
    double alpha;
    double beta;
    double ell;
};

/// Decreasing radial weight on the unit disc.
///
/// Families:
///  - exponential: v(r) = exp(-alpha (1 - r^ell)^(-beta))
///  - power:       v(r) = (1 - r)^gamma
///  - constant:    v = 1 (the gamma -> 0 limit; usable for measures only)
///  - tabulated:   log-linear interpolation of sampled values, decaying like
///                 (1 - r) beyond the last node. No derivative oracles.
class RadialWeight {
public:
    static RadialWeight exponential(double alpha, double beta, double ell) {
        if (!(alpha > 0.0 && beta > 0.0 && ell > 0.0)) {
            throw Error(ErrorCode::invalid_parameter, "exponential weight needs alpha, beta, ell > 0");
        }
        RadialWeight w(WeightFamily::exponential);
        w.exp_ = {alpha, beta, ell};
        w.admit();
        return w;
    }

    static RadialWeight power(double gamma) {
        if (!(gamma > 0.0)) throw Error(ErrorCode::invalid_parameter, "power weight needs gamma > 0");
        RadialWeight w(WeightFamily::power);
        w.gamma_ = gamma;
        w.admit();
        return w;
    }

    static RadialWeight constant() { return RadialWeight(WeightFamily::constant); }

    static RadialWeight tabulated(std::vector<double> r, std::vector<double> v) {
        if (r.size() < 2 || r.size() != v.size()) {
            throw Error(ErrorCode::invalid_parameter, "tabulated weight needs >= 2 matching (r, v) samples");
        }
        RadialWeight w(WeightFamily::tabulated);
        auto table = std::make_shared<Table>();
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (!(r[i] >= 0.0 && r[i] < 1.0) || (i > 0 && !(r[i] > r[i - 1]))) {
                throw Error(ErrorCode::invalid_parameter, "tabulated radii must increase inside [0, 1)");
            }
            if (!(v[i] > 0.0)) throw Error(ErrorCode::invalid_parameter, "tabulated weight values must be positive");
            table->r.push_back(r[i]);
            table->log_v.push_back(std::log(v[i]));
        }
        w.table_ = std::move(table);
        w.admit();
        return w;
    }

    WeightFamily family() const noexcept { return family_; }
    const ExponentialParams& exponential_params() const noexcept { return exp_; }
    double gamma() const noexcept { return gamma_; }
    /// Sample radii and log values of a tabulated weight (empty otherwise).
    std::vector<double> table_r() const { return table_ ? table_->r : std::vector<double>{}; }
    std::vector<double> table_log_v() const { return table_ ? table_->log_v : std::vector<double>{}; }

    /// log v at r = 1 - u; accurate for tiny u.
    double log_eval_comp(double u) const {
        switch (family_) {
            case WeightFamily::exponential: {
                if (u <= 0.0) return -std::numeric_limits<double>::infinity();
                const double w = one_minus_r_pow_ell(u);
                return -exp_.alpha * std::pow(w, -exp_.beta);
            }
            case WeightFamily::power:
                return u <= 0.0 ? -std::numeric_limits<double>::infinity() : gamma_ * std::log(u);
            case WeightFamily::constant:
                return 0.0;
            case WeightFamily::tabulated:
                return table_log_eval(1.0 - u, u);
        }
        return 0.0;
    }

    double log_eval(double r) const {
        if (family_ == WeightFamily::tabulated) return table_log_eval(r, 1.0 - r);
        return log_eval_comp(1.0 - r);
    }
    double eval(double r) const { return std::exp(log_eval(r)); }
    double phi(double r) const { return -log_eval(r); }

    bool has_derivatives() const noexcept { return family_ != WeightFamily::tabulated; }

    double phi_prime(double r) const {
        switch (family_) {
            case WeightFamily::exponential: {
                const auto [a, b, l] = exp_;
                const double w = one_minus_r_pow_ell(1.0 - r);
                return a * b * l * std::pow(r, l - 1.0) * std::pow(w, -b - 1.0);
            }
            case WeightFamily::power: return gamma_ / (1.0 - r);
            case WeightFamily::constant: return 0.0;
            case WeightFamily::tabulated: break;
        }
        throw Error(ErrorCode::unsupported_weight, "tabulated weight has no derivative oracle");
    }

    double phi_second(double r) const {
        switch (family_) {
            case WeightFamily::exponential: {
                const auto [a, b, l] = exp_;
                const double w = one_minus_r_pow_ell(1.0 - r);
                const double dw = -l * std::pow(r, l - 1.0);
                const double d2w = -l * (l - 1.0) * std::pow(r, l - 2.0);
                return a * b * (b + 1.0) * std::pow(w, -b - 2.0) * dw * dw -
                       a * b * std::pow(w, -b - 1.0) * d2w;
            }
            case WeightFamily::power: return gamma_ / ((1.0 - r) * (1.0 - r));
            case WeightFamily::constant: return 0.0;
            case WeightFamily::tabulated: break;
        }
        throw Error(ErrorCode::unsupported_weight, "tabulated weight has no derivative oracle");
    }

    /// r * phi'(r); the stationarity condition of r^m v(r) is m = r phi'(r).
    double r_phi_prime(double r) const {
        if (family_ == WeightFamily::exponential) {
            const auto [a, b, l] = exp_;
            const double w = one_minus_r_pow_ell(1.0 - r);
            return a * b * l * std::pow(r, l) * std::pow(w, -b - 1.0);
        }
        return r * phi_prime(r);
    }

private:
    struct Table {
        std::vector<double> r;
        std::vector<double> log_v;
    };

    explicit RadialWeight(WeightFamily f) : family_(f) {}

    // 1 - r^ell with r = 1 - u, without cancellation.
    double one_minus_r_pow_ell(double u) const {
        return -std::expm1(exp_.ell * std::log1p(-u));
    }

    double table_log_eval(double r, double u) const {
        const auto& t = *table_;
        if (r <= t.r.front()) return t.log_v.front();
        if (r >= t.r.back()) {
            if (u <= 0.0) return -std::numeric_limits<double>::infinity();
            return t.log_v.back() + std::log(u / (1.0 - t.r.back()));
        }
        const auto it = std::upper_bound(t.r.begin(), t.r.end(), r);
        const std::size_t i = static_cast<std::size_t>(it - t.r.begin());
        const double x = (r - t.r[i - 1]) / (t.r[i] - t.r[i - 1]);
        return (1.0 - x) * t.log_v[i - 1] + x * t.log_v[i];
    }

    // Sampled admission test: positivity, monotonicity on 256 points, decay toward r = 1.
    void admit() const {
        constexpr int grid = 256;
        double prev = log_eval(0.0);
        for (int i = 1; i < grid; ++i) {
            const double lv = log_eval(static_cast<double>(i) / grid);
            if (std::isnan(lv) || lv == std::numeric_limits<double>::infinity()) {
                throw Error(ErrorCode::invalid_parameter, "weight is not finite on the sample grid");
            }
            if (lv > prev + 1e-12 * (1.0 + std::abs(prev))) {
                throw Error(ErrorCode::invalid_parameter, "weight is not non-increasing on the sample grid");
            }
            prev = lv;
        }
        if (!(log_eval(0.0) > -std::numeric_limits<double>::infinity())) {
            throw Error(ErrorCode::invalid_parameter, "weight must be positive at r = 0");
        }
        const double near_edge = log_eval_comp(1e-300);
        if (!(near_edge < log_eval(0.0) - std::log(2.0))) {
            throw Error(ErrorCode::invalid_parameter, "weight does not decay toward the boundary");
        }
    }

    WeightFamily family_;
    ExponentialParams exp_{1.0, 1.0, 1.0};
    double gamma_ = 0.0;
    std::shared_ptr<const Table> table_;
};

inline RadialWeight make_builtin_weight(std::string_view family, const std::vector<double>& params) {
    auto need = [&](std::size_t n) {
        if (params.size() != n) {
            throw Error(ErrorCode::invalid_parameter,
                        std::string(family) + " expects " + std::to_string(n) + " parameters");
        }
    };
    if (family == "exponential") {
        need(3);
        return RadialWeight::exponential(params[0], params[1], params[2]);
    }
    if (family == "power") {
        need(1);
        return RadialWeight::power(params[0]);
    }
    if (family == "constant") {
        need(0);
        return RadialWeight::constant();
    }
    throw Error(ErrorCode::unsupported_family, std::string(family));
}

enum class Domain { disc, plane };

enum class DensityKind { weighted_area, line_density };

/// Absolutely continuous radial measure mu on [0, R), R = 1 (disc) or infinity (plane).
class RadialMeasure {
public:
    /// log of dmu/dt in the chart coordinate t, including the Jacobian dr/dt.
    using ChartDensity = std::function<double(double t)>;

    /// dmu(r) = 2 r v(r) dr on the disc, so that ||1||_1 = 1 when v = 1.
    static RadialMeasure weighted_area(RadialWeight weight, QuadratureConfig quad = {}) {
        RadialMeasure m(Domain::disc, DensityKind::weighted_area, quad);
        auto w = std::make_shared<const RadialWeight>(std::move(weight));
        m.weight_ = w;
        m.density_ = [w](double t) {
            if (t <= 0.0) return -std::numeric_limits<double>::infinity();
            const double u = std::exp(-t);
            return std::numbers::ln2 + std::log1p(-u) + w->log_eval_comp(u) - t;
        };
        m.label_ = std::string("weighted-area:") + to_string(w->family());
        return m;
    }

    /// dmu(r) = w(r) dr on the disc; log_w receives (r, 1 - r).
    static RadialMeasure disc_line_density(std::function<double(double r, double u)> log_w,
                                           std::string label, QuadratureConfig quad = {}) {
        RadialMeasure m(Domain::disc, DensityKind::line_density, quad);
        m.density_ = [log_w = std::move(log_w)](double t) {
            if (t <= 0.0) return t == 0.0 ? log_w(0.0, 1.0) : -std::numeric_limits<double>::infinity();
            const double u = std::exp(-t);
            return log_w(1.0 - u, u) - t;
        };
        m.label_ = std::move(label);
        return m;
    }

    /// dmu(r) = w(r) dr on [0, infinity); log_w receives log r.
    static RadialMeasure plane_line_density(std::function<double(double log_r)> log_w, std::string label,
                                            QuadratureConfig quad = {}) {
        RadialMeasure m(Domain::plane, DensityKind::line_density, quad);
        m.density_ = [log_w = std::move(log_w)](double t) { return log_w(t) + t; };
        m.label_ = std::move(label);
        return m;
    }

    /// dmu(r) = exp(-log^2 r) dr on [0, infinity).
    static RadialMeasure plane_exp_log2(QuadratureConfig quad = {}) {
        return plane_line_density([](double lr) { return -lr * lr; }, "plane:exp-log2", quad);
    }

    /// dmu(r) = v(r)^2 dr on the disc; moment 2k+1 of it is the pairing weight W_k.
    static RadialMeasure squared_weight_line(const RadialWeight& weight, QuadratureConfig quad = {}) {
        auto w = std::make_shared<const RadialWeight>(weight);
        return disc_line_density([w](double, double u) { return 2.0 * w->log_eval_comp(u); },
                                 std::string("line:v^2:") + to_string(weight.family()), quad);
    }

    Domain domain() const noexcept { return domain_; }
    DensityKind kind() const noexcept { return kind_; }
    double R() const noexcept { return domain_ == Domain::disc ? 1.0 : std::numeric_limits<double>::infinity(); }
    const RadialWeight* weight() const noexcept { return weight_.get(); }
    const QuadratureConfig& quadrature() const noexcept { return quad_; }
    const std::string& label() const noexcept { return label_; }

    double t_of_r(double r) const {
        if (domain_ == Domain::disc) {
            return r >= 1.0 ? std::numeric_limits<double>::infinity() : -std::log1p(-r);
        }
        return r <= 0.0 ? -std::numeric_limits<double>::infinity() : std::log(r);
    }
    double r_of_t(double t) const { return domain_ == Domain::disc ? -std::expm1(-t) : std::exp(t); }
    double log_r_of_t(double t) const {
        if (domain_ == Domain::disc) {
            return t <= 0.0 ? -std::numeric_limits<double>::infinity() : std::log1p(-std::exp(-t));
        }
        return t;
    }
    double t_min() const noexcept {
        return domain_ == Domain::disc ? 0.0 : -std::numeric_limits<double>::infinity();
    }
    double t_max() const noexcept { return std::numeric_limits<double>::infinity(); }

    double log_density_t(double t) const { return density_(t); }

    /// log of r^m dmu/dt at chart coordinate t.
    double log_moment_integrand(double m, double t) const {
        const double d = density_(t);
        if (m == 0.0 || d == -std::numeric_limits<double>::infinity()) return d;
        return m * log_r_of_t(t) + d;
    }

private:
    RadialMeasure(Domain d, DensityKind k, QuadratureConfig q) : domain_(d), kind_(k), quad_(q) {}

    Domain domain_;
    DensityKind kind_;
    QuadratureConfig quad_;
    ChartDensity density_;
    std::shared_ptr<const RadialWeight> weight_;
    std::string label_;
};

/// Window in chart coordinates holding the mass of r^m dmu (drop below the peak
/// larger than the quadrature drop is discarded).
inline PeakWindow moment_window(const RadialMeasure& mu, double m, double t_lo, double t_hi) {
    return peak_window([&](double t) { return mu.log_moment_integrand(m, t); }, t_lo, t_hi,
                       mu.quadrature().drop);
}

/// Same as log_moment but with bounds given in chart coordinates.
inline LogReal log_moment_t(const RadialMeasure& mu, double m, double t_lo, double t_hi) {
    if (!(t_hi > t_lo)) return LogReal::zero();
    return integrate_log_peaked([&](double t) { return mu.log_moment_integrand(m, t); }, t_lo, t_hi,
                                mu.quadrature());
}

/// log of the integral of r^m dmu(r) over [lower, upper].
inline LogReal log_moment(const RadialMeasure& mu, double m, double lower, double upper) {
    if (!(m >= 0.0)) throw Error(ErrorCode::invalid_parameter, "moment order must be >= 0");
    if (!(lower >= 0.0 && lower <= upper && upper <= mu.R())) {
        throw Error(ErrorCode::invalid_parameter, "moment bounds must satisfy 0 <= lower <= upper <= R");
    }
    return log_moment_t(mu, m, mu.t_of_r(lower), mu.t_of_r(upper));
}

/// log int_0^s r^m dmu - log(b int_s^R r^m dmu), with s given by its chart coordinate.
inline double balancing_residual_t(const RadialMeasure& mu, double m, double t_s, double b) {
    const LogReal inner = log_moment_t(mu, m, mu.t_min(), t_s);
    const LogReal outer = log_moment_t(mu, m, t_s, mu.t_max());
    return inner.log() - std::log(b) - outer.log();
}

/// log int_0^s r^m dmu - log(b int_s^R r^m dmu). Increasing in s.
inline double balancing_residual(const RadialMeasure& mu, double m, double s, double b) {
    if (!(s > 0.0 && s < mu.R())) throw Error(ErrorCode::invalid_parameter, "s must lie in (0, R)");
    if (!(m >= 0.0) || !(b > 0.0)) throw Error(ErrorCode::invalid_parameter, "need m >= 0 and b > 0");
    return balancing_residual_t(mu, m, mu.t_of_r(s), b);
}

}  // namespace bergman
