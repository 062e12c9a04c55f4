#include <cmath>
#include <numbers>
#include <set>

#include <gtest/gtest.h>

#include "bergman/harness.hpp"
#include "bergman/report.hpp"
#include "oracles.hpp"

using namespace bergman;

namespace {

const LacunaryDecomposition& unit_dec() {
    static const auto dec = solve_balancing(RadialMeasure::weighted_area(RadialWeight::constant()), 6.0, 5);
    return dec;
}

}  // namespace

TEST(Corpus, Deterministic) {
    CorpusSpec spec;
    spec.seed = 7;
    spec.count = 2;
    spec.degree_bound = 3;
    const auto a = build_corpus(spec), b = build_corpus(spec);
    ASSERT_EQ(a.size(), 2u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        ASSERT_EQ(a[i].size(), b[i].size());
        for (std::size_t k = 0; k < a[i].size(); ++k) EXPECT_EQ(a[i][k], b[i][k]);
        EXPECT_GE(a[i].degree(), 1u);
        EXPECT_LE(a[i].degree(), 3u);
    }
    spec.seed = 8;
    EXPECT_FALSE(build_corpus(spec)[0] == a[0]);
}

TEST(Corpus, SparseZeroDensity) {
    CorpusSpec spec;
    spec.count = 10;
    spec.degree_bound = 20;
    spec.law = CoefficientLaw::sparse;
    spec.density = 0.0;
    for (const auto& g : build_corpus(spec)) EXPECT_TRUE(g.is_zero());
}

TEST(Corpus, GaussianSecondMoment) {
    CorpusSpec spec;
    spec.seed = 3;
    spec.count = 100;
    spec.degree_bound = 40;
    double sum = 0.0, sum_sq = 0.0;
    std::size_t n = 0;
    for (const auto& g : build_corpus(spec)) {
        for (const Complex& a : g.coeffs()) {
            const double x = std::norm(a);
            sum += x;
            sum_sq += x * x;
            ++n;
        }
    }
    const double mean = sum / n;
    const double sd = std::sqrt((sum_sq / n - mean * mean) / n);
    EXPECT_LT(std::abs(mean - 1.0), 3.0 * sd);
}

TEST(Corpus, UnitModulus) {
    CorpusSpec spec;
    spec.count = 5;
    spec.degree_bound = 9;
    spec.law = CoefficientLaw::unit_modulus;
    for (const auto& g : build_corpus(spec)) {
        for (const Complex& a : g.coeffs()) EXPECT_NEAR(std::abs(a), 1.0, 1e-15);
    }
}

TEST(Corpus, InvalidSpecs) {
    CorpusSpec spec;
    spec.count = 0;
    EXPECT_THROW(build_corpus(spec), Error);
    EXPECT_THROW(parse_coefficient_law("cauchy"), Error);
}

TEST(Corpus, BlockAlignedStructure) {
    const auto& dec = unit_dec();
    CorpusSpec spec;
    spec.seed = 4;
    spec.count = 20;
    spec.degree_bound = dec.floor_m(5);
    for (const auto& item : build_block_aligned_corpus(spec, dec)) {
        ASSERT_EQ(item.parts.size(), item.blocks.size());
        CoeffSeq sum = CoeffSeq::zero();
        for (std::size_t j = 0; j < item.parts.size(); ++j) {
            if (j > 0) {
                EXPECT_GE(item.blocks[j] - item.blocks[j - 1], 2u);
            }
            const auto [first, last] = core_block_range(dec, item.blocks[j]);
            EXPECT_FALSE(item.parts[j].is_zero());
            for (std::size_t k = 0; k < item.parts[j].size(); ++k) {
                if (k < first || k > last) {
                    EXPECT_EQ(item.parts[j][k], Complex{});
                }
            }
            sum = sum + item.parts[j];
        }
        EXPECT_EQ(sum, item.h);
    }
}

TEST(Equivalence, Monomials) {
    std::vector<CoeffSeq> corpus;
    for (std::size_t k = 0; k <= 38; ++k) corpus.push_back(CoeffSeq::monomial(k));
    const auto rep = equivalence_report(corpus, unit_dec(), RadialMeasure::weighted_area(RadialWeight::constant()));
    EXPECT_EQ(rep.stats.count, corpus.size());
    EXPECT_GT(rep.stats.min, 0.0);
    EXPECT_TRUE(std::isfinite(rep.stats.spread));
}

TEST(Equivalence, GaussianDegree60) {
    const auto dec = solve_balancing(RadialMeasure::weighted_area(RadialWeight::constant()), 6.0, 6);
    CorpusSpec spec;
    spec.seed = 9;
    spec.count = 100;
    spec.degree_bound = 60;
    const auto rep =
        equivalence_report(build_corpus(spec), dec, RadialMeasure::weighted_area(RadialWeight::constant()));
    EXPECT_LE(rep.stats.spread, 1e3);
}

TEST(Additivity, LowerInequality) {
    const auto& dec = unit_dec();
    CorpusSpec spec;
    spec.seed = 5;
    spec.count = 10;
    spec.degree_bound = dec.floor_m(5);
    const auto rep = block_additivity_report(build_block_aligned_corpus(spec, dec),
                                             RadialMeasure::weighted_area(RadialWeight::constant()));
    EXPECT_TRUE(rep.all_lower_hold);
    EXPECT_GE(rep.observed_C, 1.0 - 1e-6);
}

TEST(Khintchine, SingleAndPair) {
    const std::vector<double> one{1.0}, two{1.0, 1.0};
    const auto a = khintchine_check(one);
    EXPECT_NEAR(a.average, 1.0, 1e-12);
    EXPECT_NEAR(a.margin, 1.0 - std::numbers::sqrt2 / 2, 1e-12);
    const auto b = khintchine_check(two);
    EXPECT_NEAR(b.average, 4.0 / std::numbers::pi, 1e-8);
    EXPECT_NEAR(b.margin, 4.0 / std::numbers::pi - 1.0, 1e-8);
}

TEST(Khintchine, BruteForceFourOnes) {
    const std::vector<double> a{1, 1, 1, 1};
    const auto k = khintchine_check(a);
    EXPECT_TRUE(k.exhaustive);
    EXPECT_EQ(k.patterns, 16u);
    EXPECT_NEAR(k.average, oracle::sign_average(a, 1 << 14), 1e-7);
    EXPECT_GE(k.average, std::numbers::sqrt2 / 2 * 2.0);
    EXPECT_GE(k.best_value, k.average);
    std::vector<Complex> best(4);
    for (std::size_t i = 0; i < 4; ++i) best[i] = k.best_signs[i] * a[i];
    EXPECT_NEAR(oracle::circle_mean(best, 1.0, 1, 1 << 14), k.best_value, 1e-7);
}

TEST(Khintchine, LongInputsAreSampled) {
    const std::vector<double> a(16, 1.0);
    const auto k = khintchine_check(a);
    EXPECT_FALSE(k.exhaustive);
    EXPECT_EQ(k.patterns, 4096u);
    EXPECT_THROW(khintchine_check(std::vector<double>{}), Error);
}

TEST(Sandwich, ZeroAndSingleMonomial) {
    const auto& dec = unit_dec();
    const auto mu = RadialMeasure::weighted_area(RadialWeight::constant());
    const std::size_t k = dec.floor_m(2) + 1;
    const auto rep = sandwich_report({CoeffSeq::zero(3), CoeffSeq::monomial(k)}, &dec, nullptr, mu, 1, 8);
    EXPECT_EQ(rep.items[0].core, 0.0);
    EXPECT_NEAR(rep.items[1].core / (dec.d[2].value() * std::pow(dec.s[2], double(k))), 1.0, 1e-13);
    // ||theta z^k|| = |theta| 2/(k+2) <= 2/(k+2)
    EXPECT_LE(rep.items[1].core_ratio, 2.0 / (k + 2.0) / rep.items[1].core * (1 + 1e-5));
    EXPECT_TRUE(rep.all_core_solid);
}

TEST(Sandwich, ExampleWeightCorpus) {
    const auto w = RadialWeight::exponential(1, 1, 2);
    const auto mu = RadialMeasure::weighted_area(w);
    const auto dec = solve_balancing(mu, 6.0, 5);
    const auto hp = find_condition_b_sequence(w, 2.5, 25.0, 10);
    CorpusSpec spec;
    spec.seed = 6;
    spec.count = 20;
    spec.degree_bound = dec.floor_m(3);
    const auto rep = sandwich_report(build_corpus(spec), &dec, &hp, mu, 2, 4);
    EXPECT_TRUE(std::isfinite(rep.C_core));
    EXPECT_TRUE(std::isfinite(rep.C_hull));
    EXPECT_TRUE(rep.all_core_solid);
    EXPECT_TRUE(rep.all_hull_solid);
}

TEST(ProjectionGrowth, RowsAlongBoundaries) {
    const auto rows = projection_growth(unit_dec(), 200, 2, 1);
    ASSERT_GE(rows.size(), 2u);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_GE(rows[i].sup_ratio, 1.0 - 1e-8);
        if (i > 0) {
            EXPECT_GT(rows[i].K, rows[i - 1].K);
        }
    }
}

TEST(Report, GitBlobDigest) {
    EXPECT_EQ(git_blob_digest(""), "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
    EXPECT_EQ(git_blob_digest("hello\n"), "ce013625030ba8dba906f756967f9e9ca394464a");
}

TEST(Report, RecordsCarryDigest) {
    ReportDoc doc("t", "abc");
    CheckRecord r;
    r.id = "x";
    r.pass = true;
    doc.add(r);
    r.id = "y,\"z\"";
    r.pass = false;
    doc.add(r);
    EXPECT_EQ(doc.records()[0].inputs_digest, "abc");
    EXPECT_FALSE(doc.all_pass());
    const auto j = doc.to_json();
    EXPECT_EQ(j["summary"]["failed"], 1);
    EXPECT_NE(doc.to_csv().find("\"y,\"\"z\"\"\""), std::string::npos);
}
