#include <algorithm>
#include <cmath>

#include "horizonlab/geometry.hpp"
#include "horizonlab/killing.hpp"

namespace horizonlab {

const char* to_string(KillingHorizonKind k) {
    switch (k) {
        case KillingHorizonKind::NotKilling: return "not-killing";
        case KillingHorizonKind::None: return "none";
        case KillingHorizonKind::Strong: return "strong";
        case KillingHorizonKind::Ultrastrong: return "ultrastrong";
    }
    return "?";
}

VectorFieldGrid sample_field(const GridSpacetime& st, const std::function<std::array<double, 2>(double, double)>& X) {
    VectorFieldGrid out;
    out.components.assign(st.cell_count(), {0.0, 0.0});
    for (std::size_t i = 0; i < st.cell_count(); ++i) {
        if (!st.passable(i)) continue;
        const Cell c = st.cell(i);
        out.components[i] = X(st.t_center(c.t), st.x_center(c.x));
    }
    return out;
}

VectorFieldGrid named_field(const GridSpacetime& st, const std::string& name) {
    using V = std::array<double, 2>;
    if (name == "dt") return sample_field(st, [](double, double) { return V{1.0, 0.0}; });
    if (name == "dx") return sample_field(st, [](double, double) { return V{0.0, 1.0}; });
    if (name == "boost") return sample_field(st, [](double t, double x) { return V{x, t}; });
    if (name == "x_dx") return sample_field(st, [](double, double x) { return V{0.0, x}; });
    throw ParamError("unknown vector field: " + name);
}

namespace {

using Mat = std::array<std::array<double, 2>, 2>;

Mat as_matrix(const Metric& g) { return {{{g.tt, g.tx}, {g.tx, g.xx}}}; }

double metric_scale(const Metric& g) { return std::max({std::abs(g.tt), std::abs(g.tx), std::abs(g.xx)}); }

}  // namespace

double killing_residual(const GridSpacetime& st, const VectorFieldGrid& X) {
    const double h2 = 2.0 * st.spacing();
    double worst = 0.0;
    st.domain().for_each([&](std::size_t i) {
        const Cell c = st.cell(i);
        // Neighbours along +t, -t, +x, -x.
        std::array<std::size_t, 4> nb{};
        for (int k = 0; k < 4; ++k) {
            auto n = st.neighbor(c, kFacets[static_cast<std::size_t>(k)]);
            if (!n || !st.in_domain(*n)) return;
            nb[static_cast<std::size_t>(k)] = st.index(*n);
        }
        const Mat g = as_matrix(st.metric(i));
        Mat dg[2];  // dg[c][a][b] = d_c g_ab
        double dX[2][2];  // dX[a][c] = d_a X^c
        for (int dir = 0; dir < 2; ++dir) {
            const std::size_t up = nb[static_cast<std::size_t>(2 * dir)];
            const std::size_t down = nb[static_cast<std::size_t>(2 * dir + 1)];
            const Mat gu = as_matrix(st.metric(up)), gd = as_matrix(st.metric(down));
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) dg[dir][a][b] = (gu[a][b] - gd[a][b]) / h2;
            for (int comp = 0; comp < 2; ++comp) dX[dir][comp] = (X.at(up)[comp] - X.at(down)[comp]) / h2;
        }
        const auto& x = X.at(i);
        for (int a = 0; a < 2; ++a)
            for (int b = a; b < 2; ++b) {
                double v = 0.0;
                for (int k = 0; k < 2; ++k) v += x[k] * dg[k][a][b] + g[k][b] * dX[a][k] + g[a][k] * dX[b][k];
                worst = std::max(worst, std::abs(v));
            }
    });
    return worst;
}

CharacterMasks causal_character_masks(const GridSpacetime& st, const VectorFieldGrid& X, double tol) {
    CellSet space(st.cell_count()), time(st.cell_count()), null(st.cell_count());
    st.domain().for_each([&](std::size_t i) {
        const Metric& g = st.metric(i);
        const auto& x = X.at(i);
        const double q = g.apply(x[0], x[1]);
        const double band = tol * metric_scale(g) * (x[0] * x[0] + x[1] * x[1]);
        if (q > band)
            time.set(i);
        else if (q < -band)
            space.set(i);
        else
            null.set(i);
    });
    return {make_region(st, std::move(space), "spacelike"), make_region(st, std::move(time), "timelike"),
            make_region(st, std::move(null), "null")};
}

KillingHorizonReport killing_horizon_detect(const CausalModel& model, const VectorFieldGrid& X,
                                            KillingHorizonParams params) {
    const GridSpacetime& st = model.grid();
    KillingHorizonReport rep;
    rep.residual = killing_residual(st, X);
    double g_max = 0.0, x_max = 0.0;
    st.domain().for_each([&](std::size_t i) {
        g_max = std::max(g_max, metric_scale(st.metric(i)));
        x_max = std::max(x_max, std::hypot(X.at(i)[0], X.at(i)[1]));
    });
    rep.diameter_bound = params.diameter_bound > 0.0 ? params.diameter_bound : 0.5 * domain_diameter(st);
    const CharacterMasks masks = causal_character_masks(st, X, params.null_tolerance);
    rep.region = masks.spacelike;
    if (rep.residual > params.residual_tolerance * g_max * x_max) {
        rep.kind = KillingHorizonKind::NotKilling;
        return rep;
    }
    const CellSet& L = rep.region.members;
    rep.nonempty = L.any();
    // Pieces joined by a step inside the mask count as one, as in validate().
    int pieces = 0;
    const auto label = label_components(st, L, &pieces);
    std::vector<int> parent(static_cast<std::size_t>(std::max(pieces, 0)));
    for (int k = 0; k < pieces; ++k) parent[static_cast<std::size_t>(k)] = k;
    auto find = [&](int a) {
        while (parent[static_cast<std::size_t>(a)] != a) a = parent[static_cast<std::size_t>(a)];
        return a;
    };
    L.for_each([&](std::size_t i) {
        for (const Step& s : model.stencil.steps[i])
            if (L.test(s.target)) parent[static_cast<std::size_t>(find(label[i]))] = find(label[s.target]);
    });
    int roots = 0;
    for (int k = 0; k < pieces; ++k) roots += find(k) == k;
    rep.connected = roots == 1;

    rep.future_set = true;
    L.for_each([&](std::size_t i) {
        for (const Step& s : model.stencil.steps[i])
            if (!L.test(s.target)) rep.future_set = false;
    });

    // Slice pieces: split the mask by foliation level, then into 4-connected runs.
    std::vector<double> levels;
    L.for_each([&](std::size_t i) { levels.push_back(model.tau[i]); });
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    for (double level : levels) {
        CellSet slice(st.cell_count());
        L.for_each([&](std::size_t i) {
            if (model.tau[i] == level) slice.set(i);
        });
        int count = 0;
        const auto label = label_components(st, slice, &count);
        std::vector<double> length(static_cast<std::size_t>(count), 0.0);
        slice.for_each([&](std::size_t i) {
            length[static_cast<std::size_t>(label[i])] += std::sqrt(std::abs(st.metric(i).xx)) * st.spacing();
        });
        for (double v : length) rep.max_slice_diameter = std::max(rep.max_slice_diameter, v);
    }
    rep.spatially_bounded = rep.max_slice_diameter <= rep.diameter_bound;

    rep.spatially_compact = true;
    L.for_each([&](std::size_t i) {
        const Cell c = st.cell(i);
        if (st.facet_tag(c, Facet::PlusX) == FacetTag::Truncation || st.facet_tag(c, Facet::MinusX) == FacetTag::Truncation)
            rep.spatially_compact = false;
    });

    const bool strong = rep.nonempty && rep.connected && rep.future_set && rep.spatially_bounded;
    rep.kind = !strong ? KillingHorizonKind::None
                       : (rep.spatially_compact ? KillingHorizonKind::Ultrastrong : KillingHorizonKind::Strong);
    return rep;
}

}  // namespace horizonlab
