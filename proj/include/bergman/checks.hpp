#pragma once

// Self-test suite and acceptance suite shared by the CLI and the test binaries.
// Each check fills one CheckRecord. Rechecks use Boost quadrature and direct
// formula evaluation rather than the library's own integrator.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "json.hpp"

#include "bergman/coeff_seq.hpp"
#include "bergman/corpus.hpp"
#include "bergman/error.hpp"
#include "bergman/harness.hpp"
#include "bergman/hull.hpp"
#include "bergman/json_io.hpp"
#include "bergman/lacunary.hpp"
#include "bergman/norms.hpp"
#include "bergman/parallel.hpp"
#include "bergman/report.hpp"
#include "bergman/weight.hpp"

namespace bergman::checks {

using nlohmann::json;

/// Runs `body` and appends its record; exceptions turn into a failed record.
inline void run(ReportDoc& doc, const std::string& id, const std::string& description, double tolerance,
                const std::function<void(CheckRecord&)>& body) {
    CheckRecord rec;
    rec.id = id;
    rec.description = description;
    rec.tolerance = tolerance;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(rec);
    } catch (const std::exception& e) {
        rec.pass = false;
        rec.observed["error"] = e.what();
    }
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    doc.add(std::move(rec));
}

inline bool rel_close(double got, double want, double tol) {
    return std::abs(got - want) <= tol * std::max(std::abs(want), 1e-300);
}

namespace recheck {

// log of int over [t_lo, t_hi] of exp(log_f), via adaptive Gauss-Kronrod on
// the window where log_f is within 60 nats of its sampled maximum.
template <class LogF>
double log_integral(LogF&& log_f, double t_lo, double t_hi) {
    t_lo = std::max(t_lo, -400.0);
    const double hi_cap = std::min(t_hi, 400.0);
    constexpr int samples = 16000;
    double peak = -std::numeric_limits<double>::infinity();
    double peak_t = t_lo;
    for (int i = 0; i <= samples; ++i) {
        const double t = t_lo + (hi_cap - t_lo) * i / samples;
        const double v = log_f(t);
        if (v > peak) {
            peak = v;
            peak_t = t;
        }
    }
    if (!std::isfinite(peak)) return peak;
    const double step = (hi_cap - t_lo) / samples;
    double a = peak_t, b = peak_t;
    while (a > t_lo && log_f(a) > peak - 60.0) a = std::max(t_lo, a - step);
    while (b < hi_cap && log_f(b) > peak - 60.0) b = std::min(hi_cap, b + step);
    // Several sub-intervals so a narrow peak is not missed by the first rule.
    constexpr int pieces = 64;
    double sum = 0.0;
    for (int i = 0; i < pieces; ++i) {
        const double pa = a + (b - a) * i / pieces, pb = a + (b - a) * (i + 1) / pieces;
        sum += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            [&](double t) { return std::exp(log_f(t) - peak); }, pa, pb, 10, 1e-12);
    }
    return peak + std::log(sum);
}

inline double log_moment(const RadialMeasure& mu, double m, double t_lo, double t_hi) {
    return log_integral([&](double t) { return mu.log_moment_integrand(m, t); }, t_lo, t_hi);
}

/// W_k = int_0^1 r^{2k+1} v(r)^2 dr directly in r.
inline double pairing_weight(const RadialWeight& w, std::size_t k) {
    auto f = [&](double r) { return std::pow(r, 2.0 * static_cast<double>(k) + 1.0) * std::exp(2.0 * w.log_eval(r)); };
    double sum = 0.0;
    constexpr int pieces = 32;
    for (int i = 0; i < pieces; ++i) {
        sum += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, double(i) / pieces,
                                                                             double(i + 1) / pieces, 12, 1e-13);
    }
    return sum;
}

/// (1/2pi) int int f conj(g) v^2 r dr dphi: exact trapezoid in phi, Gauss-Kronrod in r.
inline Complex pairing_2d(const CoeffSeq& f, const CoeffSeq& g, const RadialWeight& w) {
    const std::size_t nodes = 2 * (f.size() + g.size()) + 8;
    auto angular = [&](double r) {
        Complex acc{};
        for (std::size_t q = 0; q < nodes; ++q) {
            const Complex z = std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(q) / static_cast<double>(nodes));
            acc += f.evaluate(z) * std::conj(g.evaluate(z));
        }
        return acc / static_cast<double>(nodes) * std::exp(2.0 * w.log_eval(r)) * r;
    };
    Complex sum{};
    constexpr int pieces = 16;
    for (int i = 0; i < pieces; ++i) {
        const double a = double(i) / pieces, b = double(i + 1) / pieces;
        const double re = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            [&](double r) { return angular(r).real(); }, a, b, 8, 1e-10);
        const double im = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            [&](double r) { return angular(r).imag(); }, a, b, 8, 1e-10);
        sum += Complex(re, im);
    }
    return sum;
}

}  // namespace recheck

// ---------------------------------------------------------------- trivial ---

inline ReportDoc trivial_suite() {
    ReportDoc doc("trivial", config_digest(json{{"suite", "trivial"}}));
    const auto unit = RadialMeasure::weighted_area(RadialWeight::constant());
    const auto exp111 = RadialWeight::exponential(1, 1, 1);
    const auto exp112 = RadialWeight::exponential(1, 1, 2);

    run(doc, "weight.exp-at-0", "exponential(1,1,1): v(0) = e^-1", 1e-14, [&](CheckRecord& r) {
        const double v = exp111.eval(0.0);
        r.observed = {{"v", v}};
        r.pass = rel_close(v, std::exp(-1.0), r.tolerance);
    });
    run(doc, "weight.exp-at-half", "exponential(1,1,1): v(1/2) = e^-2", 1e-14, [&](CheckRecord& r) {
        const double v = exp111.eval(0.5);
        r.observed = {{"v", v}};
        r.pass = rel_close(v, std::exp(-2.0), r.tolerance);
    });
    run(doc, "moment.unit-m0", "log int 2r dr over [0,1] = 0", 1e-10, [&](CheckRecord& r) {
        const double v = log_moment(unit, 0, 0, 1).log();
        r.observed = {{"log_moment", v}};
        r.pass = std::abs(v) <= r.tolerance;
    });
    run(doc, "moment.unit-m3", "log int r^3 2r dr over [0,1] = log(2/5)", 1e-10, [&](CheckRecord& r) {
        const double v = log_moment(unit, 3, 0, 1).log();
        r.observed = {{"log_moment", v}};
        r.pass = std::abs(v - std::log(0.4)) <= r.tolerance;
    });
    run(doc, "residual.b1", "unit measure, m=0, b=1: residual vanishes at 1/sqrt2", 1e-10, [&](CheckRecord& r) {
        const double v = balancing_residual(unit, 0, std::sqrt(0.5), 1);
        r.observed = {{"residual", v}};
        r.pass = std::abs(v) <= r.tolerance;
    });
    run(doc, "residual.b3", "unit measure, m=0, b=3: residual vanishes at sqrt3/2", 1e-10, [&](CheckRecord& r) {
        const double v = balancing_residual(unit, 0, std::sqrt(3.0) / 2.0, 3);
        r.observed = {{"residual", v}};
        r.pass = std::abs(v) <= r.tolerance;
    });
    run(doc, "balancing.shape", "N=2: |m|=3, |s|=2, |d|=2, m_0=0", 0, [&](CheckRecord& r) {
        const auto dec = solve_balancing(unit, 6.0, 2);
        r.observed = {{"m", dec.m.size()}, {"s", dec.s.size()}, {"d", dec.d.size()}, {"m0", dec.m[0]}};
        r.pass = dec.m.size() == 3 && dec.s.size() == 2 && dec.d.size() == 2 && dec.m[0] == 0.0;
    });
    run(doc, "closed-form.n1-degenerate", "alpha=beta=ell=1: s_1 = 0 and n=1 is trimmed", 0, [&](CheckRecord& r) {
        const auto range = closed_form_decomposition(1, 1, 1, 1, 5);
        r.observed = {{"s1", closed_form_s(1, 1, 1, 1)}, {"first_n", range.first_n}};
        r.pass = closed_form_s(1, 1, 1, 1) == 0.0 && range.first_n == 2;
    });
    run(doc, "compute-dn.equal-m", "m_n = m_{n+1} is rejected", 0, [&](CheckRecord& r) {
        try {
            compute_dn(unit, 2, 2, 0.5);
            r.pass = false;
        } catch (const Error& e) {
            r.observed = {{"error", to_string(e.code())}};
            r.pass = e.code() == ErrorCode::invalid_parameter;
        }
    });
    run(doc, "tent.peak", "tent (0,4,8): t_4 = 1", 0, [&](CheckRecord& r) {
        const auto t = vpoussin_coeffs(0, 4, 8);
        r.observed = {{"t4", t.at(4)}};
        r.pass = t.at(4) == 1.0;
    });
    run(doc, "tent.midpoints", "tent (0,4,8): t_2 = t_6 = 1/2", 0, [&](CheckRecord& r) {
        const auto t = vpoussin_coeffs(0, 4, 8);
        r.observed = {{"t2", t.at(2)}, {"t6", t.at(6)}};
        r.pass = t.at(2) == 0.5 && t.at(6) == 0.5;
    });
    run(doc, "tent.partition", "overlapping tents sum to 1 on the interior", 1e-15, [&](CheckRecord& r) {
        const std::vector<double> m{0, 3.5, 9.2, 20.7, 41.1, 80.3};
        double worst = 0.0;
        for (std::size_t k = 4; k <= 41; ++k) {
            double sum = 0.0;
            for (std::size_t n = 1; n + 1 < m.size(); ++n) sum += vpoussin_coeffs(m[n - 1], m[n], m[n + 1]).at(k);
            worst = std::max(worst, std::abs(sum - 1.0));
        }
        r.observed = {{"max_deviation", worst}};
        r.pass = worst <= r.tolerance;
    });
    run(doc, "gaps.constant", "m_n = 3n gives bounded-plateau", 0, [&](CheckRecord& r) {
        std::vector<double> m;
        for (int n = 0; n <= 40; ++n) m.push_back(3.0 * n);
        const auto gp = gap_profile(m);
        r.observed = {{"classification", to_string(gp.classification)}};
        r.pass = gp.classification == GapClass::bounded_plateau;
    });
    run(doc, "circle.monomial", "M_1(z^k, r) = M_2(z^k, r) = r^k", 1e-14, [&](CheckRecord& r) {
        bool ok = true;
        for (std::size_t k : {0, 1, 5, 40}) {
            for (double rad : {0.3, 0.9, 1.0}) {
                const auto g = CoeffSeq::monomial(k);
                ok = ok && rel_close(circle_mean(g, rad, 1), std::pow(rad, k), r.tolerance) &&
                     rel_close(circle_mean(g, rad, 2), std::pow(rad, k), r.tolerance);
            }
        }
        r.pass = ok;
    });
    run(doc, "circle.parseval", "M_2(1+z, 1) = sqrt2", 1e-14, [&](CheckRecord& r) {
        const double v = circle_mean(CoeffSeq({1.0, 1.0}), 1.0, 2);
        r.observed = {{"M2", v}};
        r.pass = rel_close(v, std::numbers::sqrt2, r.tolerance);
    });
    run(doc, "bergman.monomials", "||z^k||_1 = 2/(k+2) on 2r dr", 1e-6, [&](CheckRecord& r) {
        double worst = 0.0;
        for (std::size_t k : {0, 1, 3, 10}) {
            worst = std::max(worst, std::abs(bergman_norm(CoeffSeq::monomial(k), unit) * (k + 2.0) / 2.0 - 1.0));
        }
        r.observed = {{"max_rel_error", worst}};
        r.pass = worst <= r.tolerance;
    });
    run(doc, "dirichlet.truncate", "P_2(1+z+z^2+z^3) = 1+z+z^2", 0, [&](CheckRecord& r) {
        r.pass = dirichlet_project(CoeffSeq({1.0, 1.0, 1.0, 1.0}), 2) == CoeffSeq({1.0, 1.0, 1.0});
    });
    run(doc, "dirichlet.identity", "P_D g = g for D >= deg g", 0, [&](CheckRecord& r) {
        const CoeffSeq g({1.0, Complex(0, 2), 3.0});
        r.pass = dirichlet_project(g, 2) == g && dirichlet_project(g, 10) == g;
    });
    run(doc, "dirichlet.zero", "P_0(z^5) = 0", 0, [&](CheckRecord& r) {
        r.pass = dirichlet_project(CoeffSeq::monomial(5), 0).is_zero();
    });
    const auto dec_unit = solve_balancing(unit, 6.0, 5);
    run(doc, "block.empty-overlap", "g beyond floor m_{n+1} gives T_n g = 0", 0, [&](CheckRecord& r) {
        const std::size_t k = dec_unit.floor_m(3) + 1;
        r.pass = block_operator(CoeffSeq::monomial(k), dec_unit, 2).is_zero();
    });
    run(doc, "block.peak", "T_n z^{floor m_n} = z^{floor m_n}", 0, [&](CheckRecord& r) {
        const std::size_t k = dec_unit.floor_m(2);
        r.pass = block_operator(CoeffSeq::monomial(k), dec_unit, 2) == CoeffSeq::monomial(k);
    });
    run(doc, "equivalent.zero", "equivalent norm of 0 is 0", 0, [&](CheckRecord& r) {
        r.pass = equivalent_norm(CoeffSeq::zero(10), dec_unit) == 0.0;
    });
    run(doc, "solid-core.zero", "solid-core norm of 0 is 0", 0, [&](CheckRecord& r) {
        r.pass = solid_core_norm(CoeffSeq::zero(10), dec_unit) == 0.0;
    });
    run(doc, "solid-core.single-term", "z^k inside block n gives d_n s_n^k", 1e-13, [&](CheckRecord& r) {
        const std::size_t n = 2, k = dec_unit.floor_m(2) + 3;
        const double want = std::exp(dec_unit.d[n].log() + static_cast<double>(k) * dec_unit.log_s(n));
        const double got = solid_core_norm(CoeffSeq::monomial(k), dec_unit);
        r.observed = {{"got", got}, {"want", want}};
        r.pass = rel_close(got, want, r.tolerance);
    });
    run(doc, "max-point.small-m", "r_{0.001} < 0.05 for built-in families", 0, [&](CheckRecord& r) {
        const double a = max_point(exp111, 1e-3), b = max_point(exp112, 1e-3);
        const double c = max_point(RadialWeight::power(1.0), 1e-3);
        r.observed = {{"exp111", a}, {"exp112", b}, {"power1", c}};
        r.pass = a < 0.05 && b < 0.05 && c < 0.05;
    });
    const auto hp = find_condition_b_sequence(exp112, 2.5, 25.0, 8);
    run(doc, "hull.sigma-ratio", "sigma_k / sigma_{k+1} = 1 / r_{mu_n} inside an interval", 1e-12, [&](CheckRecord& r) {
        const std::size_t k = static_cast<std::size_t>(std::floor(hp.mu[2])) + 1;
        const double ratio = hp.sigma(k) / hp.sigma(k + 1);
        r.observed = {{"ratio", ratio}, {"inv_r", 1.0 / hp.r_mu[2]}};
        r.pass = rel_close(ratio, 1.0 / hp.r_mu[2], r.tolerance);
    });
    run(doc, "hull.zero", "hull norm and H-infinity core norm of 0 are 0", 0, [&](CheckRecord& r) {
        r.pass = hull_norm(CoeffSeq::zero(5), hp) == 0.0 && hinfty_core_norm(CoeffSeq::zero(5), hp) == 0.0;
    });
    run(doc, "hull.unit-vector", "e_k gives S_k and v(r_mu_n) sigma_k", 1e-13, [&](CheckRecord& r) {
        bool ok = true;
        for (std::size_t k : {0, 1, 5, 20}) {
            const auto e = CoeffSeq::monomial(k);
            const std::size_t j = hp.radius_index(hp.interval_of(k));
            ok = ok && rel_close(hull_norm(e, hp), hp.S(k), r.tolerance) &&
                 rel_close(hinfty_core_norm(e, hp), std::exp(hp.log_v_r_mu[j]) * hp.sigma(k), r.tolerance);
        }
        r.pass = ok;
    });
    run(doc, "hinfty.constant", "sup v |c| = |c| v(0)", 1e-12, [&](CheckRecord& r) {
        const double one = hinfty_norm(CoeffSeq({1.0}), exp112);
        const double c = hinfty_norm(CoeffSeq({Complex(3, 4)}), exp112);
        r.observed = {{"f=1", one}, {"f=3+4i", c}};
        r.pass = rel_close(one, exp112.eval(0), r.tolerance) && rel_close(c, 5.0 * exp112.eval(0), r.tolerance);
    });
    run(doc, "pairing.orthogonal", "<z^j, z^k> = 0 for j != k", 0, [&](CheckRecord& r) {
        bool ok = true;
        for (std::size_t j = 0; j < 6; ++j) {
            for (std::size_t k = 0; k < 6; ++k) {
                if (j != k) ok = ok && dual_pairing(CoeffSeq::monomial(j), CoeffSeq::monomial(k), exp112) == Complex{};
            }
        }
        r.pass = ok;
    });
    run(doc, "pairing.unit-weight", "v = 1: <z^k, z^k> = 1/(2k+2)", 1e-10, [&](CheckRecord& r) {
        const auto one = RadialWeight::constant();
        double worst = 0.0;
        for (std::size_t k : {0, 1, 7, 30}) {
            const double got = dual_pairing(CoeffSeq::monomial(k), CoeffSeq::monomial(k), one).real();
            worst = std::max(worst, std::abs(got * (2.0 * k + 2.0) - 1.0));
        }
        r.observed = {{"max_rel_error", worst}};
        r.pass = worst <= r.tolerance;
    });
    run(doc, "multiplier.cases", "theta = 1, theta = 0 and theta_k = (-1)^k", 0, [&](CheckRecord& r) {
        const CoeffSeq f({1.0, 1.0, 1.0});
        const std::vector<Complex> ones(3, 1.0), zeros(3, 0.0), alt{1.0, -1.0, 1.0};
        r.pass = coefficient_multiplier(f, ones) == f && coefficient_multiplier(f, zeros).is_zero() &&
                 coefficient_multiplier(f, alt) == CoeffSeq({1.0, -1.0, 1.0});
    });
    run(doc, "w0.constant-fails", "v = 1 has zero Laplacian and fails", 0, [&](CheckRecord& r) {
        // The constant weight carries zero derivative oracles.
        const auto rep = w0_diagnostic(RadialWeight::constant(), 64);
        r.observed = {{"min_laplacian", rep.min_laplacian}};
        r.pass = !rep.pass;
    });
    run(doc, "corpus.deterministic", "seed 7, count 2, D 3 twice gives identical arrays", 0, [&](CheckRecord& r) {
        CorpusSpec spec;
        spec.seed = 7;
        spec.count = 2;
        spec.degree_bound = 3;
        r.pass = build_corpus(spec) == build_corpus(spec);
    });
    run(doc, "corpus.sparse-zero", "sparse(0) gives zero polynomials", 0, [&](CheckRecord& r) {
        CorpusSpec spec;
        spec.count = 5;
        spec.degree_bound = 8;
        spec.law = CoefficientLaw::sparse;
        spec.density = 0.0;
        bool ok = true;
        for (const auto& g : build_corpus(spec)) ok = ok && g.is_zero();
        r.pass = ok;
    });
    run(doc, "equivalence.monomials", "z^k, k <= 38: ratios finite and positive", 0, [&](CheckRecord& r) {
        std::vector<CoeffSeq> corpus;
        for (std::size_t k = 0; k <= 38; ++k) corpus.push_back(CoeffSeq::monomial(k));
        const auto rep = equivalence_report(corpus, dec_unit, unit);
        r.observed = {{"min", rep.stats.min}, {"max", rep.stats.max}};
        r.pass = rep.stats.count == corpus.size() && rep.stats.min > 0.0 && std::isfinite(rep.stats.max);
    });
    run(doc, "additivity.lower", "block-aligned sums: ||h|| <= sum ||h_j||", 1e-6, [&](CheckRecord& r) {
        CorpusSpec spec;
        spec.seed = 3;
        spec.count = 3;
        spec.degree_bound = dec_unit.floor_m(3);
        const auto rep = block_additivity_report(build_block_aligned_corpus(spec, dec_unit), unit, r.tolerance);
        r.observed = {{"observed_C", rep.observed_C}};
        r.pass = rep.all_lower_hold;
    });
    run(doc, "khintchine.single", "a = (1): average 1, margin 1 - 1/sqrt2", 1e-12, [&](CheckRecord& r) {
        const std::vector<double> a{1.0};
        const auto k = khintchine_check(a);
        r.observed = {{"average", k.average}, {"margin", k.margin}};
        r.pass = rel_close(k.average, 1.0, r.tolerance) && rel_close(k.margin, 1.0 - std::numbers::sqrt2 / 2, r.tolerance);
    });
    run(doc, "sandwich.zero", "g = 0: all sides 0", 0, [&](CheckRecord& r) {
        const auto mu = RadialMeasure::weighted_area(exp112);
        const auto dec = solve_balancing(mu, 6.0, 4);
        const auto rep = sandwich_report({CoeffSeq::zero(4)}, &dec, &hp, mu, 1, 2);
        r.pass = rep.items[0].hull == 0.0 && rep.items[0].core == 0.0;
    });
    return doc;
}

// ------------------------------------------------------------- acceptance ---

struct AcceptanceOptions {
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    /// Blocks of the dmu = 2r dr decomposition for the equivalence corpus; the
    /// degree bound is floor(m_{N-2}).
    std::size_t equivalence_blocks = 5;
    std::size_t equivalence_count = 100;
    std::size_t additivity_count = 50;
    std::size_t sandwich_polys = 14;
    std::size_t sandwich_multipliers = 16;
    std::size_t hull_corpus = 40;
    std::size_t holder_pairs = 100;
    std::size_t oracle_pairs = 10;
};

inline double spread_of(const std::vector<double>& xs) {
    const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    return *hi / *lo;
}

/// The example weight v(r) = exp(-1/(1-r^2)).
inline RadialWeight example_weight() { return RadialWeight::exponential(1, 1, 2); }

inline void acceptance_closed_form(ReportDoc& doc) {
    run(doc, "A1.closed-form", "m_n = n^4 - n^2 and s_n = 1 - n^-2 for n = 2..10", 1e-12, [&](CheckRecord& r) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto range = closed_form_decomposition(1, 1, 1, 2, 10);
        double worst = 0.0;
        for (std::size_t i = 0; i < range.m.size(); ++i) {
            const double n = static_cast<double>(range.first_n + i);
            worst = std::max(worst, std::abs(range.m[i] / (n * n * n * n - n * n) - 1.0));
            worst = std::max(worst, std::abs(range.s[i] / (1.0 - 1.0 / (n * n)) - 1.0));
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        r.observed = {{"first_n", range.first_n}, {"count", range.m.size()}, {"max_rel_error", worst}, {"runtime_s", secs}};
        r.pass = range.first_n == 2 && range.m.size() == 9 && worst <= r.tolerance && secs < 1.0;
    });
}

inline void acceptance_balancing(ReportDoc& doc) {
    run(doc, "A2.balancing-residuals", "b=6, N=50 on both built-in measures: residuals <= 1e-8", 1e-8,
        [&](CheckRecord& r) {
            bool ok = true;
            const std::vector<std::pair<std::string, RadialMeasure>> measures{
                {"disc exponential(1,1,1)", RadialMeasure::weighted_area(RadialWeight::exponential(1, 1, 1))},
                {"plane exp(-log^2 r)", RadialMeasure::plane_exp_log2()}};
            double solve_secs = 0.0;
            for (const auto& [name, mu] : measures) {
                const auto t0 = std::chrono::steady_clock::now();
                const auto dec = solve_balancing(mu, 6.0, 50);
                solve_secs += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                double worst = 0.0;
                for (std::size_t n = 0; n < dec.blocks(); ++n) {
                    const double ts = mu.t_of_r(dec.s[n]);
                    const double in1 = recheck::log_moment(mu, dec.m[n], mu.t_min(), ts);
                    const double out1 = recheck::log_moment(mu, dec.m[n], ts, mu.t_max());
                    const double in2 = recheck::log_moment(mu, dec.m[n + 1], mu.t_min(), ts);
                    const double out2 = recheck::log_moment(mu, dec.m[n + 1], ts, mu.t_max());
                    worst = std::max(worst, std::abs(std::expm1(in1 - std::log(dec.b) - out1)));
                    worst = std::max(worst, std::abs(std::expm1(in2 - out2)));
                }
                r.observed[name] = {{"max_rel_residual", worst}, {"m_N", dec.m.back()}};
                ok = ok && worst <= r.tolerance;
            }
            r.observed["solve_runtime_s"] = solve_secs;
            r.pass = ok && solve_secs < 60.0;
        });
}

inline void acceptance_gaps(ReportDoc& doc) {
    run(doc, "A3.gap-dichotomy", "plane N=100 bounded-plateau; disc exponential growing", 0, [&](CheckRecord& r) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto plane = gap_profile(solve_balancing(RadialMeasure::plane_exp_log2(), 6.0, 100));
        const auto closed = closed_form_decomposition(1, 1, 1, 2, 101);
        const auto disc_cf = gap_profile(closed.m);
        const auto disc_bal =
            gap_profile(solve_balancing(RadialMeasure::weighted_area(RadialWeight::exponential(1, 1, 1)), 6.0, 50));
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        r.observed = {{"plane", to_string(plane.classification)},
                      {"plane_last_quartile_mean_gap", plane.last_quartile_mean},
                      {"disc_closed_form", to_string(disc_cf.classification)},
                      {"disc_balanced_N50", to_string(disc_bal.classification)},
                      {"runtime_s", secs}};
        r.pass = plane.classification == GapClass::bounded_plateau && disc_cf.classification == GapClass::growing &&
                 disc_bal.classification == GapClass::growing && secs < 120.0;
    });
}

inline void acceptance_equivalence(ReportDoc& doc, const AcceptanceOptions& opt) {
    run(doc, "A4.equivalence-stability", "equivalent/Bergman ratio: spread <= 1e3, spreads within 2x over seeds",
        2.0, [&](CheckRecord& r) {
            const auto t0 = std::chrono::steady_clock::now();
            const auto mu = RadialMeasure::weighted_area(RadialWeight::constant());
            const auto dec = solve_balancing(mu, 6.0, opt.equivalence_blocks);
            const std::size_t D = dec.floor_m(opt.equivalence_blocks - 2);
            std::vector<double> spreads;
            bool ok = true;
            for (auto seed : opt.seeds) {
                CorpusSpec spec;
                spec.seed = seed;
                spec.count = opt.equivalence_count;
                spec.degree_bound = D;
                const auto rep = equivalence_report(build_corpus(spec), dec, mu);
                spreads.push_back(rep.stats.spread);
                r.observed["seed_" + std::to_string(seed)] = {
                    {"min", rep.stats.min}, {"max", rep.stats.max}, {"spread", rep.stats.spread}};
                ok = ok && rep.stats.count == spec.count && std::isfinite(rep.stats.spread) && rep.stats.spread <= 1e3;
            }
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            r.observed["degree_bound"] = D;
            r.observed["spread_variation"] = spread_of(spreads);
            r.observed["runtime_s"] = secs;
            r.pass = ok && spread_of(spreads) <= r.tolerance && secs < 300.0;
        });
}

inline void acceptance_additivity(ReportDoc& doc, const AcceptanceOptions& opt) {
    run(doc, "A5.block-additivity", "||h||_1 <= sum ||h_j||_1 on block-aligned sums", 1e-6, [&](CheckRecord& r) {
        const auto mu = RadialMeasure::weighted_area(example_weight());
        const auto dec = solve_balancing(mu, 6.0, 8);
        CorpusSpec spec;
        spec.seed = opt.seeds.front();
        spec.count = opt.additivity_count;
        spec.degree_bound = dec.floor_m(6);
        const auto items = build_block_aligned_corpus(spec, dec);
        const auto rep = block_additivity_report(items, mu, r.tolerance);
        std::size_t holds = 0, parts = 0;
        for (std::size_t i = 0; i < items.size(); ++i) {
            holds += rep.items[i].lower_holds ? 1 : 0;
            parts = std::max(parts, items[i].parts.size());
        }
        r.observed = {{"instances", items.size()}, {"lower_holds", holds}, {"max_parts", parts},
                      {"observed_C", rep.observed_C}, {"degree_bound", spec.degree_bound}};
        r.pass = rep.all_lower_hold && items.size() == opt.additivity_count;
    });
}

inline void acceptance_solid_core(ReportDoc& doc, const AcceptanceOptions& opt) {
    run(doc, "A6.solid-core", "solid-core norm shrinks under multipliers; C_core stable within 2x", 2.0,
        [&](CheckRecord& r) {
            struct Case {
                std::string name;
                RadialWeight weight;
                std::size_t blocks;
            };
            const std::vector<Case> cases{{"unit", RadialWeight::constant(), 4}, {"exp(1,1,2)", example_weight(), 5}};
            bool ok = true;
            for (const auto& c : cases) {
                const auto mu = RadialMeasure::weighted_area(c.weight);
                const auto dec = solve_balancing(mu, 6.0, c.blocks);
                std::vector<double> Cs;
                bool solid = true;
                for (auto seed : opt.seeds) {
                    CorpusSpec spec;
                    spec.seed = seed;
                    spec.count = opt.sandwich_polys;
                    spec.degree_bound = dec.floor_m(c.blocks - 2);
                    const auto rep =
                        sandwich_report(build_corpus(spec), &dec, nullptr, mu, seed + 1000, opt.sandwich_multipliers);
                    Cs.push_back(rep.C_core);
                    solid = solid && rep.all_core_solid;
                }
                r.observed[c.name] = {{"C_core_per_seed", Cs}, {"variation", spread_of(Cs)}, {"solid", solid},
                                      {"pairs_per_seed", opt.sandwich_polys * opt.sandwich_multipliers}};
                ok = ok && solid && std::all_of(Cs.begin(), Cs.end(), [](double x) { return std::isfinite(x); }) &&
                     spread_of(Cs) <= r.tolerance;
            }
            r.pass = ok;
        });
}

inline void acceptance_khintchine(ReportDoc& doc, const AcceptanceOptions& opt) {
    run(doc, "A7.khintchine", "exhaustive sign averages >= (1/sqrt2) l2-norm on 50 vectors", 0, [&](CheckRecord& r) {
        const auto t0 = std::chrono::steady_clock::now();
        double min_margin = std::numeric_limits<double>::infinity();
        bool ok = true;
        for (std::size_t i = 0; i < 50; ++i) {
            auto rng = item_rng(opt.seeds.front() + 77, i);
            std::uniform_int_distribution<std::size_t> len(1, 10);
            std::normal_distribution<double> normal(0.0, 1.0);
            std::vector<double> a(len(rng));
            for (auto& x : a) x = normal(rng);
            const auto k = khintchine_check(a);
            ok = ok && k.exhaustive && k.margin > 0.0 && k.best_value >= k.average;
            min_margin = std::min(min_margin, k.margin);
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        r.observed = {{"min_margin", min_margin}, {"runtime_s", secs}};
        r.pass = ok && secs < 60.0;
    });
}

inline void acceptance_max_point(ReportDoc& doc) {
    run(doc, "A8.max-point", "r_2 = 0.5 for exp(-1/(1-r)); r_4 = sqrt(0.5) for exp(-1/(1-r^2))", 1e-10,
        [&](CheckRecord& r) {
            const double a = max_point(RadialWeight::exponential(1, 1, 1), 2.0);
            const double b = max_point(example_weight(), 4.0);
            r.observed = {{"r2", a}, {"r4", b}};
            r.pass = std::abs(a - 0.5) <= r.tolerance && std::abs(b - std::sqrt(0.5)) <= r.tolerance;
        });
}

inline void acceptance_condition_b(ReportDoc& doc) {
    run(doc, "A9.condition-b", "b=2.5, K=25, count=50 for exp(-1/(1-r^2)); direct recheck", 1e-9,
        [&](CheckRecord& r) {
            const auto hp = find_condition_b_sequence(example_weight(), 2.5, 25.0, 50);
            // Direct evaluation: v(r) = exp(-1/(1-r^2)), r phi'(r) = 2 r^2 / (1-r^2)^2.
            auto log_v = [](double x) { return -1.0 / (1.0 - x * x); };
            double min_lower = std::numeric_limits<double>::infinity(), max_upper = 0.0, worst_root = 0.0;
            bool ok = hp.mu.size() == 50;
            for (std::size_t n = 0; n < hp.mu.size(); ++n) {
                const double x = hp.r_mu[n];
                const double q = 1.0 - x * x;
                worst_root = std::max(worst_root, std::abs(2.0 * x * x / (q * q) / hp.mu[n] - 1.0));
                if (n + 1 == hp.mu.size()) break;
                const double y = hp.r_mu[n + 1];
                const double lower = std::pow(x / y, hp.mu[n]) * std::exp(log_v(x) - log_v(y));
                const double upper = std::pow(y / x, hp.mu[n + 1]) * std::exp(log_v(y) - log_v(x));
                min_lower = std::min(min_lower, lower);
                max_upper = std::max(max_upper, upper);
                ok = ok && hp.mu[n + 1] > hp.mu[n] && y > x && lower >= 2.5 * (1.0 - r.tolerance) &&
                     upper <= 25.0 * (1.0 + r.tolerance) && lower <= upper;
            }
            r.observed = {{"count", hp.mu.size()}, {"mu_last", hp.mu.back()}, {"min_lower_ratio", min_lower},
                          {"max_upper_ratio", max_upper}, {"max_root_rel_error", worst_root}};
            r.pass = ok && worst_root <= 1e-9;
        });
}

inline void acceptance_duality(ReportDoc& doc, const AcceptanceOptions& opt) {
    run(doc, "A10.duality", "diagonal pairing, Hoelder bound and 2D-quadrature agreement", 1e-10,
        [&](CheckRecord& r) {
            const auto w = example_weight();
            const PairingWeights pw(w, 50);
            double diag = 0.0;
            bool off_zero = true;
            for (std::size_t j = 0; j <= 50; ++j) {
                for (std::size_t k = 0; k <= 50; ++k) {
                    const Complex p = dual_pairing(CoeffSeq::monomial(j), CoeffSeq::monomial(k), pw);
                    if (j != k) {
                        off_zero = off_zero && p == Complex{};
                    } else {
                        const double wk = recheck::pairing_weight(w, k);
                        diag = std::max(diag, std::abs(p - wk) / wk);
                    }
                }
            }
            const auto mu = RadialMeasure::weighted_area(w);
            CorpusSpec spec;
            spec.seed = opt.seeds.front() + 500;
            spec.count = 2 * opt.holder_pairs;
            spec.degree_bound = 20;
            const auto corpus = build_corpus(spec);
            std::vector<double> slack(opt.holder_pairs);
            parallel_for(opt.holder_pairs, [&](std::size_t i) {
                const auto& f = corpus[2 * i];
                const auto& g = corpus[2 * i + 1];
                const double lhs = std::abs(dual_pairing(f, g, pw));
                slack[i] = lhs / (bergman_norm(f, mu) * hinfty_norm(g, w));
            });
            const double worst_holder = *std::max_element(slack.begin(), slack.end());
            double worst_2d = 0.0;
            for (std::size_t i = 0; i < opt.oracle_pairs; ++i) {
                const auto& f = corpus[2 * i];
                const auto& g = corpus[2 * i + 1];
                const Complex coef = dual_pairing(f, g, pw);
                const Complex area = recheck::pairing_2d(f, g, w);
                worst_2d = std::max(worst_2d, std::abs(coef - area) / std::max(std::abs(area), 1e-300));
            }
            r.observed = {{"diagonal_max_rel_error", diag},
                          {"off_diagonal_zero", off_zero},
                          {"holder_max_ratio", worst_holder},
                          {"holder_pairs", opt.holder_pairs},
                          {"area_oracle_max_rel_error", worst_2d}};
            r.pass = off_zero && diag <= 1e-10 && worst_holder <= 1.0 + 2e-5 && worst_2d <= 1e-5;
        });
}

inline void acceptance_hull(ReportDoc& doc, const AcceptanceOptions& opt) {
    run(doc, "A11.hull-domination", "hull_norm <= C bergman_norm for exp(-1/(1-r^2)); C stable within 2x", 2.0,
        [&](CheckRecord& r) {
            const auto w = example_weight();
            const auto mu = RadialMeasure::weighted_area(w);
            const auto hp = find_condition_b_sequence(w, 2.5, 25.0, 12);
            std::vector<double> Cs;
            bool solid = true;
            for (auto seed : opt.seeds) {
                CorpusSpec spec;
                spec.seed = seed + 2000;
                spec.count = opt.hull_corpus;
                spec.degree_bound = 64;
                const auto rep = sandwich_report(build_corpus(spec), nullptr, &hp, mu, seed + 3000, 4);
                Cs.push_back(rep.C_hull);
                solid = solid && rep.all_hull_solid;
            }
            r.observed = {{"C_hull_per_seed", Cs}, {"variation", spread_of(Cs)}, {"hull_solid", solid}};
            r.pass = solid && std::all_of(Cs.begin(), Cs.end(), [](double x) { return std::isfinite(x); }) &&
                     spread_of(Cs) <= r.tolerance;
        });
}

inline void acceptance_w0(ReportDoc& doc) {
    run(doc, "A12.w0-diagnostic", "sampled Laplacian of phi > 0 at 1024 points, exponential family", 0,
        [&](CheckRecord& r) {
            const std::vector<std::array<double, 3>> params{
                {1, 1, 2}, {1, 1, 1}, {1, 2, 2}, {2, 0.5, 1}, {0.5, 1, 3}, {1, 0.5, 0.5}, {3, 2, 1.5}};
            bool ok = true;
            for (const auto& p : params) {
                const auto rep = w0_diagnostic(RadialWeight::exponential(p[0], p[1], p[2]), 1024);
                r.observed["weights"].push_back({{"alpha", p[0]}, {"beta", p[1]}, {"ell", p[2]},
                                      {"min_laplacian", rep.min_laplacian}, {"pass", rep.pass}});
                ok = ok && rep.pass && rep.samples == 1024;
            }
            r.pass = ok;
        });
}

inline ReportDoc acceptance_suite(const AcceptanceOptions& opt = {}) {
    ReportDoc doc("acceptance", config_digest(json{{"suite", "acceptance"}, {"seeds", opt.seeds},
                                                   {"equivalence_blocks", opt.equivalence_blocks}}));
    acceptance_closed_form(doc);
    acceptance_balancing(doc);
    acceptance_gaps(doc);
    acceptance_equivalence(doc, opt);
    acceptance_additivity(doc, opt);
    acceptance_solid_core(doc, opt);
    acceptance_khintchine(doc, opt);
    acceptance_max_point(doc);
    acceptance_condition_b(doc);
    acceptance_duality(doc, opt);
    acceptance_hull(doc, opt);
    acceptance_w0(doc);
    return doc;
}

}  // namespace bergman::checks
