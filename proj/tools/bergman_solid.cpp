// bergman_solid: command-line front end.
// Exit codes: 0 success / all checks pass, 1 check failure or numerical failure,
// 2 usage error or malformed input.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bergman/bergman.hpp"

namespace {

using nlohmann::json;
namespace io = bergman::io;

constexpr int exit_fail = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_text(const std::string& path, const std::string& text) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << text;
}

void emit(const json& j, const std::string& out) {
    if (out.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        write_text(out, j.dump(2) + "\n");
    }
}

void emit_report(const bergman::ReportDoc& doc, const std::string& out, const std::string& csv) {
    std::cout << doc.summary_table();
    if (!out.empty()) write_text(out, doc.to_json().dump(2) + "\n");
    if (!csv.empty()) write_text(csv, doc.to_csv());
}

// A polynomial file is either a bare coefficient array or {"coefficients": [...]}.
bergman::CoeffSeq read_polynomial(const std::string& path) {
    const json j = read_json(path);
    if (j.is_object()) return io::parse_polynomial(io::require(j, "coefficients", {}));
    return io::parse_polynomial(j);
}

// ---- decompose ----

struct DecomposeArgs {
    std::string measure;
    double b = 6.0;
    std::size_t blocks = 20;
    std::string method = "balanced";
    std::string out;
};

int run_decompose(const DecomposeArgs& a) {
    const auto spec = io::parse_measure(read_json(a.measure));
    bergman::LacunaryDecomposition dec;
    if (a.method == "balanced") {
        dec = bergman::solve_balancing(spec.measure, a.b, a.blocks);
    } else {
        if (!spec.weight || spec.weight->family() != bergman::WeightFamily::exponential) {
            throw UsageError("closed-form needs an exponential weight");
        }
        const auto& p = spec.weight->exponential_params();
        const auto range = bergman::closed_form_decomposition(p.alpha, p.beta, p.ell, 1, a.blocks + 1);
        dec = bergman::to_decomposition(range, spec.measure, a.b);
    }
    json j = io::decomposition_to_json(dec);
    j["measure"] = spec.canonical;
    j["config_digest"] = bergman::config_digest(json{{"measure", spec.canonical}, {"b", a.b}, {"blocks", a.blocks},
                                                     {"method", a.method}});
    if (dec.m.size() >= 21) {
        const auto gp = bergman::gap_profile(dec);
        j["gaps"] = {{"classification", bergman::to_string(gp.classification)},
                     {"first_quartile_mean", gp.first_quartile_mean},
                     {"last_quartile_mean", gp.last_quartile_mean},
                     {"slope", gp.slope},
                     {"slope_stderr", gp.slope_stderr},
                     {"heuristic", true}};
        std::cerr << "gap classification: " << bergman::to_string(gp.classification) << '\n';
    } else {
        j["gaps"] = {{"classification", nullptr}, {"note", "fewer than 20 blocks"}};
    }
    emit(j, a.out);
    return 0;
}

// ---- norms ----

struct NormsArgs {
    std::string poly, decomp, measure, out;
};

template <class Fn>
json value_or_error(Fn&& fn) {
    try {
        return fn();
    } catch (const bergman::Error& e) {
        return json{{"error", e.what()}};
    }
}

int run_norms(const NormsArgs& a) {
    const auto g = read_polynomial(a.poly);
    const auto spec = io::parse_measure(read_json(a.measure));
    json j;
    j["degree"] = g.effective_degree();
    j["bergman_norm_p1"] = value_or_error([&] { return json(bergman::bergman_norm(g, spec.measure, 1)); });
    j["bergman_norm_p2"] = value_or_error([&] { return json(bergman::bergman_norm(g, spec.measure, 2)); });
    if (!a.decomp.empty()) {
        const auto dec = io::parse_decomposition(read_json(a.decomp));
        j["equivalent_norm"] = value_or_error([&] { return json(bergman::equivalent_norm(g, dec)); });
        j["solid_core_norm"] = value_or_error([&] { return json(bergman::solid_core_norm(g, dec)); });
    }
    if (spec.weight) j["hinfty_norm"] = value_or_error([&] { return json(bergman::hinfty_norm(g, *spec.weight)); });
    emit(j, a.out);
    return 0;
}

// ---- hull ----

struct HullArgs {
    std::string weight, out;
    double b = 2.5;
    std::optional<double> K;
    std::size_t count = 50;
    double mu1 = 1.0;
};

int run_hull(const HullArgs& a) {
    const auto w = io::parse_weight(read_json(a.weight));
    double K = a.K.value_or(10.0 * a.b);
    const double K_max = 1e4 * a.b;
    bergman::ConditionBOptions opt;
    opt.mu1 = a.mu1;
    std::vector<double> raised;
    for (;;) {
        try {
            const auto hp = bergman::find_condition_b_sequence(w, a.b, K, a.count, opt);
            json j = io::hull_to_json(hp);
            j["K_raised_from"] = raised;
            emit(j, a.out);
            return 0;
        } catch (const bergman::ConditionBViolation& e) {
            if (K * 10.0 > K_max) throw;
            std::cerr << "upper ratio " << e.upper_ratio() << " exceeds K = " << K << " at n = " << e.index()
                      << "; raising K\n";
            raised.push_back(K);
            K *= 10.0;
        }
    }
}

// ---- pairing ----

struct PairingArgs {
    std::string f, g, weight;
};

int run_pairing(const PairingArgs& a) {
    const auto f = read_polynomial(a.f);
    const auto g = read_polynomial(a.g);
    const auto w = io::parse_weight(read_json(a.weight));
    const auto z = bergman::dual_pairing(f, g, w);
    std::cout << std::setprecision(17) << io::complex_to_json(z).dump() << '\n';
    return 0;
}

// ---- verify / report ----

struct VerifyArgs {
    std::string suite = "trivial";
    std::string out, csv;
};

int run_verify(const VerifyArgs& a) {
    bergman::ReportDoc doc;
    if (a.suite == "trivial") {
        doc = bergman::checks::trivial_suite();
    } else if (a.suite == "acceptance") {
        doc = bergman::checks::acceptance_suite();
    } else {
        throw UsageError("unknown suite '" + a.suite + "' (expected trivial or acceptance)");
    }
    emit_report(doc, a.out, a.csv);
    return doc.all_pass() ? 0 : exit_fail;
}

struct ReportArgs {
    std::string config, out, csv;
};

// Corpus report driven by a config file; see FORMATS.md.
int run_report(const ReportArgs& a) {
    const json cfg = read_json(a.config);
    const auto spec = io::parse_measure(io::require(cfg, "measure", {}));
    const double b = cfg.contains("b") ? io::number_field(cfg, "b") : 6.0;
    const auto blocks = static_cast<std::size_t>(cfg.contains("blocks") ? io::number_field(cfg, "blocks") : 6.0);
    if (blocks < 3) io::malformed("blocks", "need at least 3 blocks");
    const json& cj = io::require(cfg, "corpus", {});
    bergman::CorpusSpec cs;
    cs.seed = static_cast<std::uint64_t>(io::number_field(cj, "seed", "corpus"));
    cs.count = static_cast<std::size_t>(io::number_field(cj, "count", "corpus"));
    if (cj.contains("law")) cs.law = io::with_field("corpus.law", [&] {
        return bergman::parse_coefficient_law(io::string_field(cj, "law", "corpus"));
    });
    if (cj.contains("density")) cs.density = io::number_field(cj, "density", "corpus");
    const std::size_t multipliers =
        cfg.contains("multipliers") ? static_cast<std::size_t>(io::number_field(cfg, "multipliers")) : 16;

    const auto dec = bergman::solve_balancing(spec.measure, b, blocks);
    cs.degree_bound = cj.contains("degree_bound") ? static_cast<std::size_t>(io::number_field(cj, "degree_bound", "corpus"))
                                                  : dec.floor_m(blocks - 2);
    const auto corpus = bergman::build_corpus(cs);
    const std::string digest = bergman::config_digest(cfg);
    bergman::ReportDoc doc("report", digest);
    using bergman::checks::run;

    run(doc, "equivalence", "equivalent / Bergman norm ratio over the corpus", 1e3, [&](bergman::CheckRecord& r) {
        const auto rep = bergman::equivalence_report(corpus, dec, spec.measure);
        r.observed = {{"min", rep.stats.min}, {"max", rep.stats.max}, {"spread", rep.stats.spread},
                      {"count", rep.stats.count}, {"ratios", rep.ratios}};
        r.pass = std::isfinite(rep.stats.spread) && rep.stats.spread <= r.tolerance;
    });
    run(doc, "block-additivity", "||h|| <= sum ||h_j|| on block-aligned sums", 1e-6, [&](bergman::CheckRecord& r) {
        const auto items = bergman::build_block_aligned_corpus(cs, dec);
        const auto rep = bergman::block_additivity_report(items, spec.measure, r.tolerance);
        r.observed = {{"observed_C", rep.observed_C}, {"instances", items.size()}};
        r.pass = rep.all_lower_hold;
    });
    std::optional<bergman::HullParameters> hp;
    if (spec.weight && cfg.contains("hull")) {
        const json& hj = cfg["hull"];
        const double hb = io::number_field(hj, "b", "hull");
        const double hK = io::number_field(hj, "K", "hull");
        const auto hc = static_cast<std::size_t>(io::number_field(hj, "count", "hull"));
        hp = bergman::find_condition_b_sequence(*spec.weight, hb, hK, hc);
    }
    run(doc, "sandwich", "solid-core solidity and the core/hull constants", 0, [&](bergman::CheckRecord& r) {
        const auto rep = bergman::sandwich_report(corpus, &dec, hp ? &*hp : nullptr, spec.measure, cs.seed + 1,
                                                  multipliers);
        r.observed = {{"C_core", rep.C_core}, {"core_solid", rep.all_core_solid}};
        if (hp) {
            r.observed["C_hull"] = rep.C_hull;
            r.observed["hull_solid"] = rep.all_hull_solid;
        }
        r.pass = rep.all_core_solid && rep.all_hull_solid && std::isfinite(rep.C_core);
    });
    run(doc, "projection-growth", "report only: sup M_1(P_K g) / M_1(g) along block boundaries", 0,
        [&](bergman::CheckRecord& r) {
            json rows = json::array();
            for (const auto& row : bergman::projection_growth(dec, 2048, 4, cs.seed)) {
                rows.push_back({{"K", row.K}, {"sup_ratio", row.sup_ratio}});
            }
            r.observed = {{"rows", rows}};
            r.pass = true;
        });
    emit_report(doc, a.out, a.csv);
    return doc.all_pass() ? 0 : exit_fail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lacunary decompositions, norm functionals and inequality checks for weighted Bergman spaces"};
    app.require_subcommand(1);

    DecomposeArgs dec_args;
    auto* decompose = app.add_subcommand("decompose", "balancing or closed-form decomposition of a measure");
    decompose->add_option("--measure", dec_args.measure, "measure JSON")->required();
    decompose->add_option("--b", dec_args.b, "balancing constant (> 5)");
    decompose->add_option("--blocks", dec_args.blocks, "number of blocks N");
    decompose->add_option("--method", dec_args.method, "balanced or closed-form")
        ->check(CLI::IsMember({"balanced", "closed-form"}));
    decompose->add_option("--out", dec_args.out, "output JSON (stdout if omitted)");

    NormsArgs norms_args;
    auto* norms = app.add_subcommand("norms", "norm functionals of one polynomial");
    norms->add_option("--poly", norms_args.poly, "polynomial JSON")->required();
    norms->add_option("--measure", norms_args.measure, "measure JSON")->required();
    norms->add_option("--decomp", norms_args.decomp, "decomposition JSON from `decompose`");
    norms->add_option("--out", norms_args.out, "output JSON");

    HullArgs hull_args;
    auto* hull = app.add_subcommand("hull", "condition (b) sequence and hull parameters");
    hull->add_option("--weight", hull_args.weight, "weight JSON")->required();
    hull->add_option("--b", hull_args.b, "lower constant (> 2)");
    hull->add_option("--K", hull_args.K, "upper constant (default 10 b, raised x10 up to 1e4 b on violation)");
    hull->add_option("--count", hull_args.count, "number of mu values");
    hull->add_option("--mu1", hull_args.mu1, "first mu");
    hull->add_option("--out", hull_args.out, "output JSON");

    PairingArgs pairing_args;
    auto* pairing = app.add_subcommand("pairing", "dual pairing <f, g> for a weight");
    pairing->add_option("--f", pairing_args.f, "polynomial JSON")->required();
    pairing->add_option("--g", pairing_args.g, "polynomial JSON")->required();
    pairing->add_option("--weight", pairing_args.weight, "weight JSON")->required();

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "run a check suite");
    verify->add_option("--suite", verify_args.suite, "trivial or acceptance");
    verify->add_option("--out", verify_args.out, "report JSON");
    verify->add_option("--csv", verify_args.csv, "report CSV");

    ReportArgs report_args;
    auto* report = app.add_subcommand("report", "corpus report from a config file");
    report->add_option("--config", report_args.config, "report config JSON")->required();
    report->add_option("--out", report_args.out, "report JSON");
    report->add_option("--csv", report_args.csv, "report CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*decompose) return run_decompose(dec_args);
        if (*norms) return run_norms(norms_args);
        if (*hull) return run_hull(hull_args);
        if (*pairing) return run_pairing(pairing_args);
        if (*verify) return run_verify(verify_args);
        if (*report) return run_report(report_args);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const bergman::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        const bool usage = e.code() == bergman::ErrorCode::malformed_input ||
                           e.code() == bergman::ErrorCode::invalid_parameter ||
                           e.code() == bergman::ErrorCode::unsupported_family;
        return usage ? exit_usage : exit_fail;
    } catch (const json::exception& e) {
        std::cerr << "error: malformed input: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
