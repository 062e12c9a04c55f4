#pragma once

// JSON readers and writers for weights, measures, decompositions, polynomials
// and hull parameters. Readers throw Error(malformed_input) naming the field.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "bergman/coeff_seq.hpp"
#include "bergman/error.hpp"
#include "bergman/hull.hpp"
#include "bergman/lacunary.hpp"
#include "bergman/log_real.hpp"
#include "bergman/weight.hpp"

namespace bergman::io {

using nlohmann::json;

[[noreturn]] inline void malformed(const std::string& field, const std::string& what) {
    throw Error(ErrorCode::malformed_input, "field '" + field + "': " + what);
}

inline const json& require(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) malformed(path.empty() ? "<root>" : path, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) malformed(path.empty() ? key : path + "." + key, "missing");
    return *it;
}

inline double number(const json& j, const std::string& field) {
    if (!j.is_number()) malformed(field, "expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) malformed(field, "not finite");
    return x;
}

inline double number_field(const json& j, const std::string& key, const std::string& path = {}) {
    return number(require(j, key, path), path.empty() ? key : path + "." + key);
}

inline std::string string_field(const json& j, const std::string& key, const std::string& path = {}) {
    const json& v = require(j, key, path);
    if (!v.is_string()) malformed(path.empty() ? key : path + "." + key, "expected a string");
    return v.get<std::string>();
}

inline std::vector<double> number_array(const json& j, const std::string& field) {
    if (!j.is_array()) malformed(field, "expected an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

// Library errors raised while building an object from valid-looking JSON keep
// their own code but are prefixed with the field.
template <class Fn>
auto with_field(const std::string& field, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::malformed_input) throw;
        throw Error(e.code(), "field '" + field + "': " + e.what());
    }
}

// ---- weights and measures ----

/// {"family":"exponential","alpha":..,"beta":..,"ell":..}, {"family":"power","gamma":..},
/// {"family":"constant"} or {"family":"tabulated","r":[..],"v":[..]}.
inline RadialWeight parse_weight(const json& j) {
    const std::string family = string_field(j, "family");
    if (family == "exponential") {
        const double a = number_field(j, "alpha"), b = number_field(j, "beta"), l = number_field(j, "ell");
        return with_field("family", [&] { return RadialWeight::exponential(a, b, l); });
    }
    if (family == "power") {
        const double g = number_field(j, "gamma");
        return with_field("gamma", [&] { return RadialWeight::power(g); });
    }
    if (family == "constant") return RadialWeight::constant();
    if (family == "tabulated") {
        auto r = number_array(require(j, "r", {}), "r");
        auto v = number_array(require(j, "v", {}), "v");
        return with_field("r", [&] { return RadialWeight::tabulated(std::move(r), std::move(v)); });
    }
    malformed("family", "unknown weight family '" + family + "'");
}

inline json weight_to_json(const RadialWeight& w) {
    json j;
    j["family"] = to_string(w.family());
    switch (w.family()) {
        case WeightFamily::exponential: {
            const auto& p = w.exponential_params();
            j["alpha"] = p.alpha;
            j["beta"] = p.beta;
            j["ell"] = p.ell;
            break;
        }
        case WeightFamily::power: j["gamma"] = w.gamma(); break;
        case WeightFamily::constant: break;
        case WeightFamily::tabulated: {
            j["r"] = w.table_r();
            std::vector<double> v;
            for (double lv : w.table_log_v()) v.push_back(std::exp(lv));
            j["v"] = v;
            break;
        }
    }
    return j;
}

struct MeasureSpec {
    RadialMeasure measure;
    std::optional<RadialWeight> weight;  // set for weighted-area measures
    json canonical;
};

/// Weighted-area disc measure from a weight object with "domain":"disc"
/// (default), or {"density":"exp-log2","domain":"plane"}.
inline MeasureSpec parse_measure(const json& j) {
    if (!j.is_object()) malformed("<root>", "expected an object");
    const std::string domain = j.contains("domain") ? string_field(j, "domain") : "disc";
    if (j.contains("density")) {
        const std::string density = string_field(j, "density");
        if (density != "exp-log2") malformed("density", "unknown density '" + density + "'");
        if (domain != "plane") malformed("domain", "density exp-log2 lives on the plane");
        return {RadialMeasure::plane_exp_log2(), std::nullopt, json{{"density", density}, {"domain", "plane"}}};
    }
    if (domain != "disc") malformed("domain", "weighted-area measures need domain 'disc'");
    RadialWeight w = parse_weight(j);
    json canonical = weight_to_json(w);
    canonical["domain"] = "disc";
    return {RadialMeasure::weighted_area(w), w, canonical};
}

// ---- decompositions ----

inline json decomposition_to_json(const LacunaryDecomposition& dec) {
    json j;
    j["b"] = dec.b;
    j["m"] = dec.m;
    j["s"] = dec.s;
    std::vector<double> log_d;
    for (const auto& d : dec.d) log_d.push_back(d.log());
    j["log_d"] = log_d;
    j["method"] = to_string(dec.method);
    j["first_index"] = dec.first_index;
    j["blocks"] = dec.blocks();
    return j;
}

inline LacunaryDecomposition parse_decomposition(const json& j) {
    LacunaryDecomposition dec;
    dec.b = number_field(j, "b");
    dec.m = number_array(require(j, "m", {}), "m");
    dec.s = number_array(require(j, "s", {}), "s");
    for (double ld : number_array(require(j, "log_d", {}), "log_d")) dec.d.push_back(LogReal::from_log(ld));
    const std::string method = j.contains("method") ? string_field(j, "method") : "balanced";
    if (method == "balanced") {
        dec.method = DecompositionMethod::balanced;
    } else if (method == "closed-form") {
        dec.method = DecompositionMethod::closed_form;
    } else {
        malformed("method", "expected 'balanced' or 'closed-form'");
    }
    if (j.contains("first_index")) {
        const double fi = number_field(j, "first_index");
        if (fi < 0 || fi != std::floor(fi)) malformed("first_index", "expected a non-negative integer");
        dec.first_index = static_cast<std::size_t>(fi);
    }
    if (dec.s.size() < 1) malformed("s", "needs at least one block");
    if (dec.m.size() != dec.s.size() + 1) malformed("m", "length must be len(s) + 1");
    if (dec.d.size() != dec.s.size()) malformed("log_d", "length must equal len(s)");
    for (std::size_t n = 0; n + 1 < dec.m.size(); ++n) {
        if (!(dec.m[n] < dec.m[n + 1])) malformed("m", "must be strictly increasing");
    }
    if (!(dec.m[0] >= 0.0)) malformed("m", "entries must be non-negative");
    for (std::size_t n = 0; n < dec.s.size(); ++n) {
        if (!(dec.s[n] > 0.0) || (n > 0 && !(dec.s[n] > dec.s[n - 1]))) {
            malformed("s", "must be positive and strictly increasing");
        }
    }
    return dec;
}

// ---- polynomials ----

/// [[re, im], ...]; bare numbers are read as real coefficients.
inline CoeffSeq parse_polynomial(const json& j, const std::string& field = "coefficients") {
    if (!j.is_array()) malformed(field, "expected an array of [re, im] pairs");
    std::vector<Complex> c;
    c.reserve(j.size());
    for (std::size_t k = 0; k < j.size(); ++k) {
        const std::string f = field + "[" + std::to_string(k) + "]";
        const json& e = j[k];
        if (e.is_number()) {
            c.emplace_back(number(e, f), 0.0);
        } else if (e.is_array() && e.size() == 2) {
            c.emplace_back(number(e[0], f + "[0]"), number(e[1], f + "[1]"));
        } else {
            malformed(f, "expected [re, im]");
        }
    }
    return CoeffSeq(std::move(c));
}

inline json polynomial_to_json(const CoeffSeq& g) {
    json j = json::array();
    for (const Complex& c : g.coeffs()) j.push_back({c.real(), c.imag()});
    return j;
}

inline json complex_to_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

// ---- hull parameters ----

inline json hull_to_json(const HullParameters& hp) {
    json j;
    j["b"] = hp.b;
    j["K"] = hp.K;
    j["mu"] = hp.mu;
    j["r_mu"] = hp.r_mu;
    j["log_v_r_mu"] = hp.log_v_r_mu;
    std::vector<double> lower, upper;
    for (double x : hp.log_lower_ratio) lower.push_back(std::exp(x));
    for (double x : hp.log_upper_ratio) upper.push_back(std::exp(x));
    j["lower_ratio"] = lower;
    j["upper_ratio"] = upper;
    if (hp.weight) j["weight"] = weight_to_json(*hp.weight);
    j["interval_convention"] = "interval 0 = [0, mu_1] with r_{mu_1}; interval n = (mu_n, mu_{n+1}] with r_{mu_n}";
    return j;
}

}  // namespace bergman::io
