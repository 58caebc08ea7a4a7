#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include "bsrt/relations.hpp"
#include "support/oracles.hpp"

using namespace bsrt;

namespace {

constexpr double kPi = std::numbers::pi;

SymbolBox box(double x, double y, double w, double h, std::string label = "x") {
    SymbolBox b;
    b.label = std::move(label);
    b.x_min = x;
    b.y_min = y;
    b.width = w;
    b.height = h;
    return b;
}

// Builds a pair with exact theta (not +-pi/2) and exact mu against a 10x10
// ref at the origin. adj sits left or right so that the x overlap is mu*10.
std::pair<SymbolBox, SymbolBox> pair_with(double theta, double mu) {
    const SymbolBox ref = box(0, 0, 10, 10);
    const double o = mu * 10.0;
    const double dx = theta < kPi / 2 && theta > -kPi / 2 ? 10.0 - o : o - 10.0;
    const double dy_up = dx * std::tan(theta);
    SymbolBox adj = box(0, 0, 10, 10);
    adj.x_min = dx;
    adj.y_min = -dy_up;  // image y grows downward
    return {ref, adj};
}

}  // namespace

TEST_CASE("default config carries the stated thresholds") {
    const RuleConfig c = default_config();
    CHECK(c.above_theta_min == doctest::Approx(0.4 * kPi));
    CHECK(c.above_theta_max == doctest::Approx(0.6 * kPi));
    CHECK(c.above_mu_min == 0.5);
    CHECK(c.below_theta_min == doctest::Approx(-0.6 * kPi));
    CHECK(c.below_theta_max == doctest::Approx(-0.4 * kPi));
    CHECK(c.sup_theta_min == doctest::Approx(0.1 * kPi));
    CHECK(c.sup_theta_max == doctest::Approx(0.4 * kPi));
    CHECK(c.right_theta_abs_max == doctest::Approx(0.1 * kPi));
    CHECK(c.right_lambda_min == 0.3);
    CHECK(c.inside_containment_min == 0.85);
    CHECK(c.container_labels == std::set<std::string>{"\\sqrt"});
    CHECK(c.script_return_band == 0.25);
}

TEST_CASE("containment fraction of inner area") {
    CHECK(containment(box(0, 0, 20, 20), box(5, 5, 5, 5)) == doctest::Approx(1.0));
    CHECK(containment(box(0, 0, 10, 10), box(50, 50, 5, 5)) == doctest::Approx(0.0));
    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i) {
        const SymbolBox outer = oracles::lattice_box(rng);
        const SymbolBox inner = oracles::lattice_box(rng);
        CHECK(containment(outer, inner) ==
              doctest::Approx(oracles::raster_containment(outer, inner)).epsilon(1e-6));
    }
}

TEST_CASE("classify: stacked pair with theta 0.5pi and mu 0.9 is Above") {
    const SymbolBox ref = box(0, 0, 10, 10);
    const SymbolBox adj = box(0.5, -25, 9, 10);  // centered: theta = pi/2, mu = 0.9
    const auto f = pair_features(ref, adj);
    REQUIRE(f.has_value());
    CHECK(f->theta == doctest::Approx(kPi / 2));
    CHECK(f->mu == doctest::Approx(0.9));
    CHECK(classify(ref, adj, default_config()) == RelationLabel::Above);
}

TEST_CASE("classify: identical boxes translated rightward is Right") {
    const SymbolBox ref = box(0, 0, 10, 10);
    const SymbolBox adj = box(14, 0, 10, 10);  // lambda = 1
    CHECK(classify(ref, adj, default_config()) == RelationLabel::Right);
}

TEST_CASE("classify: small symbol up-right with no x overlap is Superscript") {
    const SymbolBox ref = box(0, 0, 10, 14);
    const SymbolBox adj = box(11, -6, 6, 7);  // theta ~ 0.26pi, mu 0
    CHECK(classify(ref, adj, default_config()) == RelationLabel::Superscript);
}

TEST_CASE("classify: containment inside a radical box is Inside") {
    const SymbolBox root = box(0, 0, 30, 30, "\\sqrt");
    const SymbolBox arg = box(5, 5, 10, 10);
    CHECK(classify(root, arg, default_config()) == RelationLabel::Inside);
    // same geometry, non-container label
    CHECK(classify(box(0, 0, 30, 30), arg, default_config()) != RelationLabel::Inside);
}

TEST_CASE("classify: degenerate pair maps to Unrelated") {
    const SymbolBox a = box(0, 0, 10, 10);
    const SymbolBox b = box(2, 2, 6, 6);
    CHECK(classify(a, b, default_config()) == RelationLabel::Unrelated);
}

TEST_CASE("the stated rule holds on the whole band grid") {
    // theta in {0.41pi, 0.43pi, ..., 0.59pi} x mu in {0.51, 0.6, ..., 1.0}
    const RuleConfig config = default_config();
    for (int ti = 0; ti < 10; ++ti) {
        const double theta = (0.41 + 0.02 * ti) * kPi;
        for (double mu : {0.51, 0.6, 0.7, 0.8, 0.9, 1.0}) {
            const auto [ref, adj] = pair_with(theta, mu);
            CAPTURE(theta);
            CAPTURE(mu);
            CHECK(classify(ref, adj, config) == RelationLabel::Above);
        }
    }
}

TEST_CASE("mirror symmetry across the ref center line") {
    std::mt19937_64 rng(9);
    const RuleConfig config = default_config();
    auto mirror = [](const SymbolBox& around, SymbolBox b) {
        const double cy = around.y_min + around.height / 2.0;
        const double top = b.y_min;
        b.y_min = 2 * cy - (top + b.height);
        return b;
    };
    for (int i = 0; i < 1000; ++i) {
        const SymbolBox ref = oracles::lattice_box(rng);
        const SymbolBox adj = oracles::lattice_box(rng);
        const RelationLabel r = classify(ref, adj, config);
        const RelationLabel m = classify(ref, mirror(ref, adj), config);
        switch (r) {
            case RelationLabel::Above: CHECK(m == RelationLabel::Below); break;
            case RelationLabel::Below: CHECK(m == RelationLabel::Above); break;
            case RelationLabel::Superscript: CHECK(m == RelationLabel::Subscript); break;
            case RelationLabel::Subscript: CHECK(m == RelationLabel::Superscript); break;
            default: CHECK(m == r); break;
        }
    }
}

TEST_CASE("classify is total over random pairs") {
    std::mt19937_64 rng(10);
    const RuleConfig config = default_config();
    for (int i = 0; i < 2000; ++i) {
        const SymbolBox a = oracles::lattice_box(rng);
        const SymbolBox b = oracles::lattice_box(rng);
        const RelationLabel r = classify(a, b, config);
        CHECK(static_cast<int>(r) >= 0);
        CHECK(static_cast<int>(r) <= 6);
    }
}

TEST_CASE("rule tables round-trip through JSON") {
    RuleConfig c = default_config();
    c.right_lambda_min = 0.25;
    c.container_labels.insert("\\overline");
    const std::string text = rules_to_json_text(c);
    CHECK(text.find("pi_radians") != std::string::npos);
    const RuleConfig d = rules_from_json_text(text);
    CHECK(d.above_theta_min == doctest::Approx(c.above_theta_min));
    CHECK(d.above_theta_max == doctest::Approx(c.above_theta_max));
    CHECK(d.right_lambda_min == doctest::Approx(0.25));
    CHECK(d.container_labels == c.container_labels);
    CHECK(d.script_return_band == doctest::Approx(c.script_return_band));
}

TEST_CASE("rule table validation rejects inverted bands") {
    std::string text = rules_to_json_text(default_config());
    const auto pos = text.find("\"above\"");
    REQUIRE(pos != std::string::npos);
    // swap the above band bounds by editing the JSON
    std::string broken = text;
    broken.replace(broken.find("0.4", pos), 3, "0.9");
    CHECK_THROWS_AS(rules_from_json_text(broken), ValidationError);
    CHECK_THROWS_AS(rules_from_json_text("{not json"), ParseError);
}

TEST_CASE("relation names round-trip") {
    for (RelationLabel r :
         {RelationLabel::Above, RelationLabel::Below, RelationLabel::Right,
          RelationLabel::Superscript, RelationLabel::Subscript, RelationLabel::Inside,
          RelationLabel::Unrelated}) {
        CHECK(relation_from_string(to_string(r)) == r);
    }
    CHECK_THROWS_AS(relation_from_string("sideways"), InputError);
}
