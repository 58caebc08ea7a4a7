#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bsrt/geometry.hpp"
#include "support/oracles.hpp"

using namespace bsrt;

namespace {

constexpr double kPi = std::numbers::pi;

SymbolBox box(double x, double y, double w, double h) {
    SymbolBox b;
    b.label = "x";
    b.x_min = x;
    b.y_min = y;
    b.width = w;
    b.height = h;
    return b;
}

SymbolBox random_box(std::mt19937_64& rng) {
    return box(oracles::unit(rng) * 200 - 100, oracles::unit(rng) * 200 - 100,
               0.5 + oracles::unit(rng) * 50, 0.5 + oracles::unit(rng) * 50);
}

}  // namespace

TEST_CASE("center is the box midpoint") {
    CHECK(center(box(0, 0, 10, 20)).x == doctest::Approx(5));
    CHECK(center(box(0, 0, 10, 20)).y == doctest::Approx(10));
    CHECK(center(box(-5, -5, 10, 10)).x == doctest::Approx(0));
    CHECK(center(box(-5, -5, 10, 10)).y == doctest::Approx(0));
    CHECK(center(box(3, 7, 4, 2)).x == doctest::Approx(5));
    CHECK(center(box(3, 7, 4, 2)).y == doctest::Approx(8));
}

TEST_CASE("theta axis cases: right, above, diagonal") {
    const SymbolBox ref = box(0, 0, 10, 10);
    CHECK(*center_offset_theta(ref, box(20, 0, 10, 10)) == doctest::Approx(0.0));
    // directly above in image coordinates = smaller y
    CHECK(*center_offset_theta(ref, box(0, -20, 10, 10)) == doctest::Approx(kPi / 2));
    // right and up by the same displacement
    CHECK(*center_offset_theta(ref, box(15, -15, 10, 10)) == doctest::Approx(kPi / 4));
}

TEST_CASE("theta is degenerate for coincident centers") {
    const SymbolBox a = box(0, 0, 10, 10);
    const SymbolBox b = box(2, 2, 6, 6);  // same center (5, 5)
    CHECK(!center_offset_theta(a, b).has_value());
    CHECK(!pair_features(a, b).has_value());
}

TEST_CASE("aspect ratios divide ref extents by adj extents") {
    const SymbolBox a = box(0, 0, 10, 10);
    CHECK(aspect_ratios(a, a) == std::pair{1.0, 1.0});
    CHECK(aspect_ratios(box(0, 0, 20, 10), box(50, 0, 10, 10)) == std::pair{2.0, 1.0});
    CHECK(aspect_ratios(box(0, 0, 3, 4), box(0, 0, 6, 2)) == std::pair{0.5, 2.0});
}

TEST_CASE("overlap ratios: identity and disjoint cases") {
    const SymbolBox a = box(0, 0, 10, 10);
    CHECK(overlap_ratios(a, a) == std::pair{1.0, 1.0});
    const auto [lambda, mu] = overlap_ratios(a, box(30, 0, 10, 10));
    CHECK(mu == 0.0);
    CHECK(lambda == 1.0);
}

TEST_CASE("overlap ratios match the rasterization oracle") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 1000; ++i) {
        const SymbolBox ref = oracles::lattice_box(rng);
        const SymbolBox adj = oracles::lattice_box(rng);
        const auto [lambda, mu] = overlap_ratios(ref, adj);
        const auto [olambda, omu] = oracles::raster_overlap_ratios(ref, adj);
        CHECK(lambda == doctest::Approx(olambda).epsilon(1e-6));
        CHECK(mu == doctest::Approx(omu).epsilon(1e-6));
    }
}

TEST_CASE("pair_features composes the three measurements") {
    SUBCASE("identical boxes offset rightward by twice the width") {
        const SymbolBox ref = box(0, 0, 10, 10);
        const SymbolBox adj = box(20, 0, 10, 10);
        const PairFeatures f = *pair_features(ref, adj);
        CHECK(f.theta == doctest::Approx(0.0));
        CHECK(f.alpha == doctest::Approx(1.0));
        CHECK(f.beta == doctest::Approx(1.0));
        CHECK(f.lambda == doctest::Approx(1.0));
        CHECK(f.mu == doctest::Approx(0.0));
    }
    SUBCASE("adj directly above with equal x extent and a gap") {
        const SymbolBox ref = box(0, 0, 10, 10);
        const SymbolBox adj = box(0, -25, 10, 10);
        const PairFeatures f = *pair_features(ref, adj);
        CHECK(f.theta == doctest::Approx(kPi / 2));
        CHECK(f.mu == doctest::Approx(1.0));
        CHECK(f.lambda == doctest::Approx(0.0));
    }
    SUBCASE("random pairs equal independent recomputation") {
        std::mt19937_64 rng(7);
        for (int i = 0; i < 200; ++i) {
            const SymbolBox ref = random_box(rng);
            const SymbolBox adj = random_box(rng);
            const auto f = pair_features(ref, adj);
            REQUIRE(f.has_value());
            const double dx = (adj.x_min + adj.width / 2) - (ref.x_min + ref.width / 2);
            const double dy = (ref.y_min + ref.height / 2) - (adj.y_min + adj.height / 2);
            CHECK(f->theta == doctest::Approx(std::atan2(dy, dx)));
            CHECK(f->alpha == doctest::Approx(ref.width / adj.width));
            CHECK(f->beta == doctest::Approx(ref.height / adj.height));
            const double ov_y = std::max(
                0.0, std::min(ref.y_max(), adj.y_max()) - std::max(ref.y_min, adj.y_min));
            const double ov_x = std::max(
                0.0, std::min(ref.x_max(), adj.x_max()) - std::max(ref.x_min, adj.x_min));
            CHECK(f->lambda == doctest::Approx(ov_y / ref.height));
            CHECK(f->mu == doctest::Approx(ov_x / ref.width));
        }
    }
}

TEST_CASE("theta antisymmetry under argument swap") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const SymbolBox a = random_box(rng);
        const SymbolBox b = random_box(rng);
        const auto t_ab = center_offset_theta(a, b);
        const auto t_ba = center_offset_theta(b, a);
        if (!t_ab) continue;
        CHECK(*t_ab == doctest::Approx(wrap_angle(*t_ba + kPi)).epsilon(1e-12));
    }
}

TEST_CASE("alpha and beta reciprocity") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 1000; ++i) {
        const SymbolBox a = random_box(rng);
        const SymbolBox b = random_box(rng);
        const auto [ab_alpha, ab_beta] = aspect_ratios(a, b);
        const auto [ba_alpha, ba_beta] = aspect_ratios(b, a);
        CHECK(ab_alpha * ba_alpha == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(ab_beta * ba_beta == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("all five features are translation invariant") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 1000; ++i) {
        SymbolBox a = random_box(rng);
        SymbolBox b = random_box(rng);
        const auto f = pair_features(a, b);
        if (!f) continue;
        const double tx = oracles::unit(rng) * 500 - 250;
        const double ty = oracles::unit(rng) * 500 - 250;
        a.x_min += tx;
        a.y_min += ty;
        b.x_min += tx;
        b.y_min += ty;
        const auto g = pair_features(a, b);
        REQUIRE(g.has_value());
        CHECK(g->theta == doctest::Approx(f->theta).epsilon(1e-9));
        CHECK(g->alpha == doctest::Approx(f->alpha).epsilon(1e-9));
        CHECK(g->beta == doctest::Approx(f->beta).epsilon(1e-9));
        CHECK(g->lambda == doctest::Approx(f->lambda).epsilon(1e-9));
        CHECK(g->mu == doctest::Approx(f->mu).epsilon(1e-9));
    }
}

TEST_CASE("all five features are uniform-scale invariant") {
    std::mt19937_64 rng(14);
    for (int i = 0; i < 1000; ++i) {
        SymbolBox a = random_box(rng);
        SymbolBox b = random_box(rng);
        const auto f = pair_features(a, b);
        if (!f) continue;
        const double s = 0.1 + oracles::unit(rng) * 10;
        const double px = oracles::unit(rng) * 100 - 50;
        const double py = oracles::unit(rng) * 100 - 50;
        for (SymbolBox* p : {&a, &b}) {
            p->x_min = px + s * (p->x_min - px);
            p->y_min = py + s * (p->y_min - py);
            p->width *= s;
            p->height *= s;
        }
        const auto g = pair_features(a, b);
        REQUIRE(g.has_value());
        CHECK(g->theta == doctest::Approx(f->theta).epsilon(1e-9));
        CHECK(g->alpha == doctest::Approx(f->alpha).epsilon(1e-9));
        CHECK(g->beta == doctest::Approx(f->beta).epsilon(1e-9));
        CHECK(g->lambda == doctest::Approx(f->lambda).epsilon(1e-9));
        CHECK(g->mu == doctest::Approx(f->mu).epsilon(1e-9));
    }
}

TEST_CASE("lambda and mu always lie in [0, 1]") {
    std::mt19937_64 rng(15);
    for (int i = 0; i < 2000; ++i) {
        const auto [lambda, mu] = overlap_ratios(random_box(rng), random_box(rng));
        CHECK(lambda >= 0.0);
        CHECK(lambda <= 1.0);
        CHECK(mu >= 0.0);
        CHECK(mu <= 1.0);
    }
}

TEST_CASE("wrap_angle maps into (-pi, pi]") {
    CHECK(wrap_angle(3 * kPi) == doctest::Approx(kPi));
    CHECK(wrap_angle(-kPi) == doctest::Approx(kPi));
    CHECK(wrap_angle(0.25) == doctest::Approx(0.25));
}
