#include <algorithm>
#include <cmath>
#include <limits>

#include "horizonlab/geometry.hpp"
#include "horizonlab/model.hpp"

namespace horizonlab {

RegionMask black_hole_mask(const CausalModel& model, const LengthField& field, double lambda) {
    if (!(lambda > 0.0)) throw ParamError("lambda must be positive");
    const GridSpacetime& st = model.grid();
    CellSet bh(st.cell_count());
    st.domain().for_each([&](std::size_t i) {
        if (field.d[i] < lambda) bh.set(i);
    });
    return make_region(st, std::move(bh), "BH");
}

bool strong_black_hole_check(const CausalModel& model, const LengthField& field, double lambda) {
    const GridSpacetime& st = model.grid();
    bool ok = true;
    st.domain().for_each([&](std::size_t i) {
        if (!ok || field.d[i] < lambda) return;
        const auto path = longest_path_from(model, field, st.cell(i));
        double len = 0.0;
        for (std::size_t k = 1; k < path.size(); ++k) {
            const std::size_t from = st.index(path[k - 1]);
            const std::size_t to = st.index(path[k]);
            for (const Step& s : model.stencil.steps[from])
                if (s.target == to) {
                    len += step_length(st, from, s);
                    break;
                }
        }
        const std::size_t last = st.index(path.back());
        if (is_generator_cell(st, path.back())) len += exit_length(st, model.cones, last);
        if (len < lambda * (1.0 - 1e-9)) ok = false;
    });
    return ok;
}

GrowthReport black_hole_growth(const std::function<GridSpacetime(int)>& build, const std::vector<int>& resolutions,
                               double lambda, const std::vector<std::array<double, 2>>& probes,
                               StencilParams params) {
    GrowthReport rep;
    rep.lambda = lambda;
    for (int n : resolutions) {
        const CausalModel model = CausalModel::build(share(build(n)), params);
        const GridSpacetime& st = model.grid();
        const LengthField field = lorentzian_distance_field(model);
        GrowthRow row;
        row.resolution = n;
        row.domain_cells = st.domain().count();
        row.max_d = field.max_d();
        row.min_d = field.min_d(st.domain());
        row.black_hole_cells = black_hole_mask(model, field, lambda).members.count();
        for (const auto& pt : probes) {
            const Cell c{static_cast<int>(std::floor((pt[0] - st.t_origin()) / st.spacing())),
                         static_cast<int>(std::floor((pt[1] - st.x_origin()) / st.spacing()))};
            auto nc = st.normalize(c);
            row.probes.push_back(nc && st.in_domain(*nc) ? field.d[st.index(*nc)]
                                                         : std::numeric_limits<double>::quiet_NaN());
        }
        rep.rows.push_back(std::move(row));
    }
    rep.monotone.assign(probes.size(), true);
    for (std::size_t k = 0; k < probes.size(); ++k)
        for (std::size_t r = 1; r < rep.rows.size(); ++r) {
            const double a = rep.rows[r - 1].probes[k];
            const double b = rep.rows[r].probes[k];
            if (std::isnan(a) || std::isnan(b) || b < a) rep.monotone[k] = false;
        }
    return rep;
}

std::vector<bool> infinite_tip_flags(const CausalModel& model, const LengthField& field, double lambda) {
    std::vector<bool> out(model.tips.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = field.ell[k] >= lambda;
    return out;
}

VisibilityMasks visibility_masks(const CausalModel& model, const std::vector<bool>& infinite) {
    const GridSpacetime& st = model.grid();
    const auto& tips = model.tips.tips;
    CellSet seen_future(st.cell_count());
    CellSet seen_past(st.cell_count());
    for (std::size_t k = 0; k < tips.size(); ++k) {
        bool holds_infinite = infinite[k];
        for (std::size_t j : tips[k].subsets) holds_infinite = holds_infinite || infinite[j];
        bool inside_infinite = infinite[k];
        for (std::size_t j : tips[k].supersets) inside_infinite = inside_infinite || infinite[j];
        if (holds_infinite) seen_future |= tips[k].cells;
        if (inside_infinite) seen_past |= tips[k].cells;
    }
    return {make_region(st, st.domain() - seen_future, "V+"), make_region(st, st.domain() - seen_past, "V-")};
}

std::vector<bool> singular_tip_flags(const CausalModel& model, const LengthField& field, double lambda_sing) {
    std::vector<bool> out(model.tips.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = model.tips.tips[k].on_genuine && field.ell[k] < lambda_sing;
    return out;
}

bool contained_within(const GridSpacetime& st, const CellSet& s, const CellSet& j, int band) {
    const CellSet rest = s - j;
    if (rest.none()) return true;
    if (band <= 0) return false;
    return (rest - chebyshev_dilate(st, j, band)).none();
}

Cc4Verdict cc4_check(const CausalModel& model, const std::vector<bool>& infinite, const std::vector<bool>& singular,
                     int band) {
    const auto& tips = model.tips.tips;
    for (std::size_t k = 0; k < tips.size(); ++k) {
        if (!infinite[k]) continue;
        for (std::size_t j = 0; j < tips.size(); ++j)
            if (singular[j] && contained_within(model.grid(), tips[j].cells, tips[k].cells, band)) return {false, k, j};
    }
    return {};
}

bool CensorshipReport::any_naked() const {
    return std::any_of(singular.begin(), singular.end(), [](const SingularTipEntry& e) { return e.naked; });
}

CensorshipReport censorship_report(const CausalModel& model, double lambda, double lambda_sing, int band,
                                   HorizontalityParams hp) {
    const GridSpacetime& st = model.grid();
    const double diam = domain_diameter(st);
    CensorshipReport rep;
    rep.lambda = lambda > 0.0 ? lambda : 10.0 * diam;
    rep.lambda_sing = lambda_sing > 0.0 ? lambda_sing : 0.5 * diam;
    rep.band = band;
    const LengthField field = lorentzian_distance_field(model);
    const auto infinite = infinite_tip_flags(model, field, rep.lambda);
    const auto singular = singular_tip_flags(model, field, rep.lambda_sing);
    rep.cc4 = cc4_check(model, infinite, singular, band);
    const EventResult event = event_mask(model, hp);
    const auto& tips = model.tips.tips;
    for (std::size_t k = 0; k < tips.size(); ++k) {
        if (!singular[k]) continue;
        SingularTipEntry e;
        e.tip = k;
        e.generator = st.cell(tips[k].representative());
        e.ell = field.ell[k];
        e.cells = tips[k].cells.count();
        e.cells_in_event_set = (tips[k].cells & event.mask.members).count();
        for (std::size_t j : event.causal_jplus) {
            const std::size_t miss = (tips[k].cells - tips[j].cells).count();
            if (!e.witness || miss < e.missing) {
                e.witness = j;
                e.missing = miss;
            }
            e.strictly_naked = e.strictly_naked || miss == 0;
            e.naked = e.naked || contained_within(st, tips[k].cells, tips[j].cells, band);
        }
        rep.singular.push_back(e);
    }
    return rep;
}

}  // namespace horizonlab
