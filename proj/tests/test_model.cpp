#include <cmath>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "horizonlab/model.hpp"
#include "horizonlab/scenario_file.hpp"

using namespace horizonlab;

namespace {

// Null directions found by scanning unit vectors through the cell's cone.
ConeSlopes scanned_slopes(const Metric& g) {
    constexpr int kSamples = 200000;
    double lo = 2.0, hi = -2.0;
    for (int k = 0; k <= kSamples; ++k) {
        const double s = -1.5 + 3.0 * k / kSamples;
        if (g.apply(1.0, s) >= 0.0) {
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
    }
    return {lo, hi};
}

bool same_spacetime(const GridSpacetime& a, const GridSpacetime& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || !(a.domain() == b.domain())) return false;
    for (std::size_t i = 0; i < a.cell_count(); ++i) {
        const Metric &ga = a.metric(i), &gb = b.metric(i);
        if (ga.tt != gb.tt || ga.tx != gb.tx || ga.xx != gb.xx) return false;
        for (Facet f : kFacets)
            if (a.facet_tag(a.cell(i), f) != b.facet_tag(b.cell(i), f)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("null slopes of single cells") {
    const ConeSlopes flat = null_slopes(Metric{});
    CHECK(flat.lo == doctest::Approx(-1.0));
    CHECK(flat.hi == doctest::Approx(1.0));
    const ConeSlopes conformal = null_slopes(Metric{}.scaled(3.7));
    CHECK(conformal.lo == doctest::Approx(-1.0));
    CHECK(conformal.hi == doctest::Approx(1.0));
    CHECK_THROWS_AS(null_slopes(Metric{-1.0, 0.0, -1.0}), SignatureError);
    CHECK_THROWS_AS(null_slopes(Metric{1.0, 0.0, 1.0}), SignatureError);

    for (double x : {-2.0, -0.5, 0.0, 0.3, 1.7}) {
        CAPTURE(x);
        const double f = cone_ballet_f(x);
        const ConeSlopes got = null_slopes(cone_ballet_metric(x));
        const ConeSlopes scan = scanned_slopes(cone_ballet_metric(x));
        CHECK(got.lo == doctest::Approx(scan.lo).epsilon(1e-4));
        CHECK(got.hi == doctest::Approx(scan.hi).epsilon(1e-4));
        CHECK(got.hi - got.lo == doctest::Approx(1.0 - (f - 1.0) / (f + 1.0)));
    }
}

TEST_CASE("the slope cap rejects cones that lean too far") {
    auto st = fixtures::flat(4, 4);
    st.set_metric({1, 1}, {1.0, 0.0, -0.01});
    CHECK_THROWS_AS(cone_field(st), ConeCapError);
    CHECK_NOTHROW(cone_field(st, 20.0));
}

TEST_CASE("every catalog scenario validates") {
    for (const std::string& name : scenario_names()) {
        CAPTURE(name);
        ScenarioParams sp;
        sp.resolution = 24;
        const GridSpacetime st = build_scenario(name, sp);
        const ValidationReport rep = validate(st);
        CHECK(rep.ok());
        CHECK(rep.non_cauchy_levels().empty());
    }
}

TEST_CASE("flat 5x5 levels are all Cauchy") {
    const ValidationReport rep = validate(fixtures::flat(5, 5));
    CHECK(rep.ok());
    REQUIRE(rep.levels.size() == 5);
    for (bool c : rep.cauchy) CHECK(c);
}

TEST_CASE("example 1 with coordinate time has non-Cauchy levels above the corner") {
    GridSpacetime st = example1(16);
    st.set_foliation(FoliationKind::CoordinateTime);
    const ValidationReport rep = validate(st);
    const auto bad = rep.non_cauchy_levels();
    REQUIRE_FALSE(bad.empty());
    // Rows 8 and up have t > 0.
    for (double level : bad) CHECK(level >= 8.0);
    CHECK(validate(example1(16)).non_cauchy_levels().empty());
}

TEST_CASE("validation reports broken invariants") {
    auto st = fixtures::flat(5, 5);
    st.set_metric({2, 2}, {1.0, 0.0, 1.0});
    const ValidationReport sig = validate(st);
    REQUIRE_FALSE(sig.ok());
    CHECK(sig.violations.front().cell == Cell{2, 2});

    auto split = fixtures::flat(5, 5);
    for (int t = 0; t < 5; ++t) split.set_domain({t, 2}, false);
    split.tag_boundary([](Cell, Facet) { return FacetTag::Truncation; }, [](Cell, Facet) { return FacetTag::Genuine; });
    CHECK_FALSE(validate(split).ok());
}

TEST_CASE("random scenarios are reproducible from the seed") {
    ScenarioParams sp;
    sp.resolution = 20;
    sp.seed = 7;
    CHECK(same_spacetime(build_scenario("random", sp), build_scenario("random", sp)));
    ScenarioParams other = sp;
    other.seed = 8;
    CHECK_FALSE(same_spacetime(build_scenario("random", sp), build_scenario("random", other)));
}

TEST_CASE("scenario parameters are checked") {
    ScenarioParams sp;
    sp.resolution = 16;
    CHECK_THROWS_AS(build_scenario("no_such_scenario", sp), ParamError);
    CHECK_THROWS_AS(build_scenario("minkowski_box", ScenarioParams(sp).set("bogus", 1.0)), ParamError);
    CHECK_THROWS_AS(build_scenario("kruskal_hexagon", ScenarioParams(sp).set("modification", "sideways")), ParamError);
    CHECK_THROWS_AS(build_scenario("de_sitter_strip", ScenarioParams(sp).set("eps", 0.9)), ParamError);
    sp.resolution = 1;
    CHECK_THROWS_AS(build_scenario("minkowski_box", sp), ParamError);
}

TEST_CASE("scenario files") {
    std::istringstream in(R"(# a comment
[scenario]
name = kruskal_hexagon   # trailing comment
resolution = 16
modification = add_triangle

[stencil]
radius = 3
margin = 0.25

[analysis]
masks = U,E
)");
    const ScenarioFile sf = parse_scenario(in);
    CHECK(sf.name == "kruskal_hexagon");
    CHECK(sf.params.resolution == 16);
    CHECK(sf.params.text("modification", "") == "add_triangle");
    CHECK(sf.stencil.radius == 3);
    CHECK(sf.stencil.margin == 0.25);
    CHECK(sf.analysis.at("masks") == "U,E");
    CHECK(same_spacetime(sf.build(), kruskal_hexagon(16, "add_triangle")));

    std::istringstream bad_section("[nowhere]\nx = 1\n");
    CHECK_THROWS_AS(parse_scenario(bad_section), ParamError);
    std::istringstream no_equals("[scenario]\nname\n");
    CHECK_THROWS_AS(parse_scenario(no_equals), ParamError);
    std::istringstream bad_margin("[stencil]\nmargin = 1.5\n");
    const ScenarioFile wide = parse_scenario(bad_margin);
    CHECK_THROWS_AS(CausalModel::build(share(wide.build()), wide.stencil), ParamError);
}

TEST_CASE("metric CSV input") {
    std::istringstream csv(
        "1,0,-1,1,0,-1,1,0,-1\n"
        "1,0,-1,0,0,0,1,0,-1\n"
        "2,0,-2,2,0,-2,2,0,-2\n");
    const GridSpacetime st = metric_from_csv(csv, "tiny", 0.5, 0.0, 0.0, false);
    CHECK(st.rows() == 3);
    CHECK(st.cols() == 3);
    CHECK(st.domain().count() == 8);
    CHECK_FALSE(st.in_domain(Cell{1, 1}));
    CHECK(st.facet_tag({1, 0}, Facet::PlusX) == FacetTag::Genuine);
    CHECK(st.facet_tag({1, 0}, Facet::MinusX) == FacetTag::Truncation);
    CHECK(st.metric(Cell{2, 1}).tt == 2.0);

    std::istringstream ragged("1,0,-1,1,0,-1\n1,0,-1\n");
    CHECK_THROWS_AS(metric_from_csv(ragged, "ragged", 1.0, 0.0, 0.0, false), ParamError);
}
