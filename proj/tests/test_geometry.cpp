#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "horizonlab/geometry.hpp"
#include "horizonlab/model.hpp"
#include "oracles.hpp"

using namespace horizonlab;

namespace {

CausalModel catalog(const std::string& name, int resolution) {
    ScenarioParams sp;
    sp.resolution = resolution;
    return CausalModel::build(share(build_scenario(name, sp)));
}

}  // namespace

TEST_CASE("flat distances") {
    const CausalModel m = fixtures::model_of(fixtures::flat(24, 24), 4);
    const auto d = lorentzian_distance(m, {2, 6}, {18, 14});
    REQUIRE(d.has_value());
    CHECK(*d == doctest::Approx(std::sqrt(256.0 - 64.0)).epsilon(0.02));
    CHECK(*d <= std::sqrt(256.0 - 64.0) + 1e-9);
    CHECK(lorentzian_distance(m, {5, 5}, {5, 5}) == 0.0);
    CHECK_FALSE(lorentzian_distance(m, {5, 5}, {6, 10}).has_value());
    CHECK_FALSE(lorentzian_distance(m, {10, 5}, {5, 5}).has_value());

    const auto path = longest_path(m, {2, 6}, {18, 14});
    REQUIRE(path.size() >= 2);
    CHECK(path.front() == Cell{2, 6});
    CHECK(path.back() == Cell{18, 14});
    CHECK(longest_path(m, {5, 5}, {6, 10}).empty());
}

TEST_CASE("the reverse triangle inequality") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        CAPTURE(seed);
        const CausalModel m = oracle::random_model(seed);
        const GridSpacetime& st = m.grid();
        const auto cells = st.domain().members();
        for (std::size_t p : cells)
            for (std::size_t q : cells) {
                const auto pq = lorentzian_distance(m, st.cell(p), st.cell(q));
                if (!pq || p == q) continue;
                for (std::size_t r : cells) {
                    const auto qr = lorentzian_distance(m, st.cell(q), st.cell(r));
                    if (!qr || q == r) continue;
                    const auto pr = lorentzian_distance(m, st.cell(p), st.cell(r));
                    REQUIRE(pr.has_value());
                    CHECK(*pr >= *pq + *qr - 1e-12);
                }
            }
    }
}

TEST_CASE("a constant conformal factor scales every length by its square root") {
    const CausalModel m = catalog("example1", 16);
    const CausalModel r = CausalModel::build(share(m.grid().conformally_rescaled([](Cell) { return 4.0; })));
    const LengthField a = lorentzian_distance_field(m), b = lorentzian_distance_field(r);
    m.grid().domain().for_each([&](std::size_t i) { CHECK(b.d[i] == doctest::Approx(2.0 * a.d[i])); });
}

TEST_CASE("curve lengths") {
    const MetricAt flat = [](double, double) { return Metric{}; };
    CHECK(curve_length(flat, {{0.0, 0.0}, {1.0, 0.5}, {2.0, 1.0}}) == doctest::Approx(std::sqrt(4.0 - 1.0)));
    CHECK_THROWS_AS(curve_length(flat, {{0.0, 0.0}, {1.0, 1.0}}), NonTimelikeSegment);
    CHECK_THROWS_AS(curve_length(flat, {{0.0, 0.0}, {0.0, 1.0}}), NonTimelikeSegment);

    const GridSpacetime st = example1(64);
    std::vector<std::array<double, 2>> diagonal;
    for (int k = 0; k <= 99; ++k) diagonal.push_back({-1.0 + 0.01 * k, 0.0});
    CHECK(curve_length(st, diagonal) == doctest::Approx(0.99).epsilon(1e-9));
    CHECK_THROWS_AS(curve_length(st, {{0.5, 0.0}, {0.9, 0.0}}), ParamError);

    // The hugging curves u v = -c grow without bound as v runs up.
    auto hugging = [](double v_max) {
        const double c = 0.05;
        std::vector<std::array<double, 2>> pts;
        for (int k = 0; k <= 4000; ++k) {
            const double v = 0.2 + (v_max - 0.2) * k / 4000.0, u = -c / v;
            pts.push_back({0.5 * (u + v), 0.5 * (u - v) * kDiscreteNullSlope});
        }
        return curve_length([](double t, double x) { return Metric{}.scaled(example1_factor(t, x / kDiscreteNullSlope)); },
                            pts);
    };
    double prev = 0.0;
    for (double v_max : {1.0, 2.0, 4.0}) {
        const double len = hugging(v_max);
        CHECK(len > prev);
        prev = len;
    }
}

TEST_CASE("black holes on the catalog") {
    const CausalModel hex = catalog("kruskal_hexagon", 24);
    const LengthField hf = lorentzian_distance_field(hex);
    const double big = 2.0 * domain_diameter(hex.grid());
    CHECK(black_hole_mask(hex, hf, big).members == hex.grid().domain());
    const auto finite = infinite_tip_flags(hex, hf, big);
    CHECK(std::none_of(finite.begin(), finite.end(), [](bool b) { return b; }));
    CHECK(visibility_masks(hex, finite).future.members == hex.grid().domain());
    CHECK(strong_black_hole_check(hex, hf, big));
    CHECK_THROWS_AS(black_hole_mask(hex, hf, 0.0), ParamError);

    const CausalModel box = catalog("minkowski_box", 24);
    const LengthField bf = lorentzian_distance_field(box);
    const auto infinite = infinite_tip_flags(box, bf, 0.5);
    for (std::size_t k = 0; k < box.tips.size(); ++k)
        if (box.grid().cell(box.tips.tips[k].representative()).t == box.grid().rows() - 1) CHECK(infinite[k]);
}

TEST_CASE("the visibility mask lies inside the black hole") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        CAPTURE(seed);
        const CausalModel m = oracle::random_model(seed);
        const LengthField f = lorentzian_distance_field(m);
        for (double lambda : {0.5, 1.0, 2.0, 4.0}) {
            const auto infinite = infinite_tip_flags(m, f, lambda);
            CHECK(visibility_masks(m, infinite).future.members.is_subset_of(black_hole_mask(m, f, lambda).members));
        }
    }
}

TEST_CASE("containment up to a band") {
    const GridSpacetime st = fixtures::flat(6, 6);
    const CellSet j = fixtures::cells_of(st, {{2, 2}, {2, 3}});
    CHECK(contained_within(st, fixtures::cells_of(st, {{2, 2}}), j, 0));
    CHECK_FALSE(contained_within(st, fixtures::cells_of(st, {{2, 5}}), j, 0));
    CHECK_FALSE(contained_within(st, fixtures::cells_of(st, {{2, 5}}), j, 1));
    CHECK(contained_within(st, fixtures::cells_of(st, {{2, 5}}), j, 2));
}

TEST_CASE("example 1 censorship at the coarse resolution") {
    const CensorshipReport rep = censorship_report(catalog("example1", 64));
    CHECK(rep.any_naked());
    CHECK(rep.cc4.holds);
    for (const SingularTipEntry& e : rep.singular) CHECK(e.ell < rep.lambda_sing);
}

TEST_CASE("conformal recipes") {
    for (const std::string name : {"minkowski_box", "example1", "crunch_bump"}) {
        CAPTURE(name);
        const CausalModel m = catalog(name, 24);
        for (double E : {0.5, 1.0, 3.0}) {
            const ConformalRecipe rec = bounded_length_factor(m, E);
            const CausalModel b = CausalModel::build(share(rec.apply(m.grid())));
            CHECK(lorentzian_distance_field(b).max_d() <= E);
        }
        const ConformalRecipe rec = completeness_factor(m, 10.0);
        CHECK(rec.inequality_holds);
        const CausalModel c = CausalModel::build(share(rec.apply(m.grid())));
        CHECK(black_hole_mask(c, lorentzian_distance_field(c), 10.0).members.none());
        // The recipes change lengths, never the causal structure.
        CHECK(c.tips.size() == m.tips.size());
    }
    CHECK_THROWS_AS(bounded_length_factor(catalog("minkowski_box", 16), 0.0), ParamError);
}
