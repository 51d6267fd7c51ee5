#include <algorithm>
#include <cmath>
#include <set>

#include "horizonlab/model.hpp"

namespace horizonlab {

std::vector<double> ValidationReport::non_cauchy_levels() const {
    std::vector<double> out;
    for (std::size_t k = 0; k < levels.size(); ++k)
        if (!cauchy[k]) out.push_back(levels[k]);
    return out;
}

ValidationReport validate(const GridSpacetime& st, StencilParams params, double slope_cap) {
    ValidationReport rep;
    if (st.domain().none()) {
        rep.violations.push_back({{0, 0}, "empty domain"});
        return rep;
    }
    bool cones_ok = true;
    ConeField cones;
    cones.slopes.assign(st.cell_count(), ConeSlopes{});
    st.domain().for_each([&](std::size_t i) {
        const Cell c = st.cell(i);
        try {
            const ConeSlopes s = null_slopes(st.metric(i));
            cones.slopes[i] = s;
            if (!(std::abs(s.lo) < slope_cap) || !(std::abs(s.hi) < slope_cap)) {
                rep.violations.push_back({c, "null slope exceeds cap"});
                cones_ok = false;
            }
        } catch (const SignatureError&) {
            rep.violations.push_back({c, "signature"});
            cones_ok = false;
        }
    });

    int components = 0;
    const auto label = label_components(st, st.domain(), &components);
    auto report_split = [&](auto&& same_piece) {
        for (std::size_t i = 0; i < st.cell_count(); ++i)
            if (label[i] >= 0 && !same_piece(label[i])) {
                rep.violations.push_back({st.cell(i), "domain not connected"});
                return;
            }
    };
    if (!cones_ok) {
        if (components > 1) report_split([](int l) { return l == 0; });
        return rep;
    }

    Stencil stencil;
    try {
        stencil = timelike_stencil(st, cones, params);
    } catch (const EmptyStencilError& e) {
        rep.violations.push_back({e.cell, "empty stencil"});
        return rep;
    }
    // Pieces joined by a step count as one region: a window cut out as the
    // past of a cell can touch its apex only through a step.
    if (components > 1) {
        std::vector<int> parent(static_cast<std::size_t>(components));
        for (int k = 0; k < components; ++k) parent[static_cast<std::size_t>(k)] = k;
        auto find = [&](int a) {
            while (parent[static_cast<std::size_t>(a)] != a) a = parent[static_cast<std::size_t>(a)];
            return a;
        };
        st.domain().for_each([&](std::size_t i) {
            for (const Step& step : stencil.steps[i])
                parent[static_cast<std::size_t>(find(label[i]))] = find(label[step.target]);
        });
        const int root = find(0);
        report_split([&](int l) { return find(l) == root; });
    }
    // A cell with no step in or out is a maximal path on its own and would
    // pin every level to its tau.
    st.domain().for_each([&](std::size_t i) {
        if (stencil.steps[i].empty() && stencil.preds[i].empty()) rep.violations.push_back({st.cell(i), "isolated cell"});
    });
    const auto tau = foliation_levels(st, stencil);
    const CauchyCheck cc = cauchy_check(st, stencil, tau);
    for (Cell c : cc.non_increasing_steps) rep.violations.push_back({c, "tau not increasing along a step"});
    rep.levels = cc.levels;
    rep.cauchy = cc.cauchy;
    return rep;
}

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names{"minkowski_box", "example1",    "kruskal_hexagon", "cone_ballet",
                                                "de_sitter_strip", "crunch_bump", "random"};
    return names;
}

namespace {

void reject_unknown(const std::string& name, const ScenarioParams& p, std::set<std::string> allowed) {
    for (const auto& [k, v] : p.values)
        if (!allowed.count(k)) throw ParamError("unknown parameter '" + k + "' for scenario " + name);
}

FacetTag parse_tag(const std::string& s) {
    if (s == "truncation") return FacetTag::Truncation;
    if (s == "genuine") return FacetTag::Genuine;
    throw ParamError("facet tag must be 'truncation' or 'genuine', got " + s);
}

}  // namespace

GridSpacetime build_scenario(const std::string& name, const ScenarioParams& p) {
    const int n = p.resolution;
    if (name == "minkowski_box") {
        reject_unknown(name, p, {"half_height"});
        return minkowski_box(n, p.number("half_height", 1.0));
    }
    if (name == "example1") {
        reject_unknown(name, p, {"half_width", "edge_slope"});
        return example1(n, p.number("half_width", 1.0), p.number("edge_slope", kDiscreteNullSlope));
    }
    if (name == "kruskal_hexagon") {
        reject_unknown(name, p, {"modification", "triangle", "null_infinity", "edge_slope"});
        return kruskal_hexagon(n, p.text("modification", "none"), p.number("triangle", 0.25),
                               parse_tag(p.text("null_infinity", "truncation")),
                               p.number("edge_slope", kDiscreteNullSlope));
    }
    if (name == "cone_ballet") {
        reject_unknown(name, p, {"width", "phi"});
        return cone_ballet(n, p.number("width", 1.0), p.text("phi", "integrable"));
    }
    if (name == "de_sitter_strip") {
        reject_unknown(name, p, {"eps"});
        return de_sitter_strip(n, p.number("eps", 0.1));
    }
    if (name == "crunch_bump") {
        reject_unknown(name, p, {});
        return crunch_bump(n);
    }
    if (name == "random") {
        reject_unknown(name, p, {"f_min", "f_max", "tilt", "holes"});
        return random_spacetime(n, p.seed, p.number("f_min", 0.5), p.number("f_max", 2.0), p.number("tilt", 0.3),
                                p.integer("holes", -1));
    }
    throw ParamError("unknown scenario: " + name);
}

}  // namespace horizonlab
