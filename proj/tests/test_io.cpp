#include <gtest/gtest.h>

#include "bergman/json_io.hpp"
#include "bergman/checks.hpp"

using namespace bergman;
using nlohmann::json;

namespace {

std::string malformed_message(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::malformed_input) << e.what();
        return e.what();
    }
    ADD_FAILURE() << "no error";
    return {};
}

}  // namespace

TEST(Io, WeightRoundTrip) {
    const json j = {{"family", "exponential"}, {"alpha", 1.0}, {"beta", 2.0}, {"ell", 2.0}};
    const auto w = io::parse_weight(j);
    EXPECT_EQ(io::weight_to_json(w), j);
    EXPECT_EQ(io::parse_weight(json{{"family", "power"}, {"gamma", 3.0}}).gamma(), 3.0);
}

TEST(Io, MeasureDefaultsAndPlane) {
    const auto disc = io::parse_measure(json{{"family", "constant"}});
    EXPECT_EQ(disc.measure.domain(), Domain::disc);
    EXPECT_TRUE(disc.weight.has_value());
    const auto plane = io::parse_measure(json{{"density", "exp-log2"}, {"domain", "plane"}});
    EXPECT_EQ(plane.measure.domain(), Domain::plane);
    EXPECT_FALSE(plane.weight.has_value());
}

TEST(Io, MalformedNamesField) {
    EXPECT_NE(malformed_message([] { io::parse_weight(json{{"family", "exponential"}, {"alpha", "x"}, {"beta", 1}, {"ell", 1}}); })
                  .find("alpha"),
              std::string::npos);
    EXPECT_NE(malformed_message([] { io::parse_weight(json{{"family", "exponential"}, {"alpha", 1}, {"ell", 1}}); })
                  .find("beta"),
              std::string::npos);
    EXPECT_NE(malformed_message([] { io::parse_weight(json{{"family", "nope"}}); }).find("family"), std::string::npos);
    EXPECT_NE(malformed_message([] { io::parse_polynomial(json::array({json::array({1, "a"})})); })
                  .find("coefficients[0][1]"),
              std::string::npos);
    malformed_message([] { io::parse_measure(json{{"density", "exp-log2"}, {"domain", "disc"}}); });
}

TEST(Io, DecompositionRoundTrip) {
    const auto dec = solve_balancing(RadialMeasure::plane_exp_log2(), 6.0, 6);
    const auto back = io::parse_decomposition(io::decomposition_to_json(dec));
    EXPECT_EQ(back.m, dec.m);
    EXPECT_EQ(back.s, dec.s);
    for (std::size_t n = 0; n < dec.blocks(); ++n) EXPECT_EQ(back.d[n].log(), dec.d[n].log());
    auto j = io::decomposition_to_json(dec);
    j["m"][2] = 0.0;
    EXPECT_NE(malformed_message([&] { io::parse_decomposition(j); }).find("'m'"), std::string::npos);
}

TEST(Io, PolynomialForms) {
    const auto p = io::parse_polynomial(json::array({1.0, json::array({0.0, 2.0})}));
    EXPECT_EQ(p, CoeffSeq({1.0, Complex(0, 2)}));
    EXPECT_EQ(io::parse_polynomial(io::polynomial_to_json(p)), p);
}

TEST(Io, HullJson) {
    const auto hp = find_condition_b_sequence(RadialWeight::exponential(1, 1, 2), 2.5, 25.0, 5);
    const auto j = io::hull_to_json(hp);
    EXPECT_EQ(j["mu"].size(), 5u);
    EXPECT_EQ(j["lower_ratio"].size(), 4u);
    EXPECT_EQ(j["weight"]["family"], "exponential");
}

TEST(TrivialSuite, AllPass) {
    const auto doc = checks::trivial_suite();
    for (const auto& r : doc.records()) EXPECT_TRUE(r.pass) << r.id << " " << r.observed.dump();
    EXPECT_GE(doc.records().size(), 30u);
}
