#include <algorithm>
#include <set>

#include "horizonlab/horizons.hpp"

namespace horizonlab {

const char* to_string(Horizontality h) {
    switch (h) {
        case Horizontality::Horizontal: return "horizontal";
        case Horizontality::NonHorizontal: return "non-horizontal";
        case Horizontality::Indeterminate: return "indeterminate";
    }
    return "?";
}

namespace {

// Cells where a slice of the foliation can end: future or lateral
// Truncation facets, and timelike Genuine walls. Slices never end on the past
// boundary, and a null staircase is never vertical for more than two rows.
CellSet slice_end_cells(const GridSpacetime& st) {
    auto wall = [&](Cell c, Facet f) {
        for (int dt = -1; dt <= 1; ++dt) {
            const Cell n{c.t + dt, c.x};
            if (!st.in_domain(n) || st.facet_tag(n, f) != FacetTag::Genuine) return false;
        }
        return true;
    };
    CellSet marks(st.cell_count());
    st.domain().for_each([&](std::size_t i) {
        const Cell c = st.cell(i);
        const bool cut = st.facet_tag(c, Facet::PlusT) == FacetTag::Truncation ||
                         st.facet_tag(c, Facet::PlusX) == FacetTag::Truncation ||
                         st.facet_tag(c, Facet::MinusX) == FacetTag::Truncation;
        if (cut || wall(c, Facet::PlusX) || wall(c, Facet::MinusX)) marks.set(i);
    });
    return marks;
}

}  // namespace

std::vector<Horizontality> horizontal_tips(const CausalModel& model, HorizontalityParams params) {
    if (params.window < 0) throw ParamError("window radius must be non-negative");
    const GridSpacetime& st = model.grid();
    const int m = params.window;
    const int clearance = params.clearance >= 0 ? params.clearance : 2 * model.stencil.params.radius - 1;
    const int reach = m + clearance;

    // Window centres must keep the ball off every boundary facet and keep the
    // enlarged ball on the grid.
    CellSet forbidden = chebyshev_dilate(st, boundary_facet_cells(st), m);
    for (std::size_t i = 0; i < st.cell_count(); ++i) {
        const Cell c = st.cell(i);
        const bool near_t = c.t < reach || c.t >= st.rows() - reach;
        const bool near_x = !st.periodic_x() && (c.x < reach || c.x >= st.cols() - reach);
        if (near_t || near_x) forbidden.set(i);
    }
    const CellSet ends = slice_end_cells(st);
    const std::size_t threshold = static_cast<std::size_t>((2 * m + 1) * (2 * m + 1));

    std::vector<Horizontality> flags(model.tips.size(), Horizontality::Indeterminate);
    for (std::size_t k = 0; k < model.tips.size(); ++k) {
        const Tip& tip = model.tips.tips[k];
        const CellSet& T = tip.cells;
        if (tip.subsets.empty() && !T.intersects(ends)) {
            // A compact tip with nothing below it cannot be approached.
            flags[k] = Horizontality::Horizontal;
            continue;
        }
        if (tip.supersets.empty() && !tip.open()) {
            // Nothing continues past a non-dominated tip, so the shell left
            // by the clearance would land in U but outside E. Such a tip must
            // be exhausted cell by cell.
            CellSet rest = T;
            for (std::size_t j : tip.subsets) rest.subtract(model.tips.tips[j].cells);
            flags[k] = rest.none() ? Horizontality::NonHorizontal : Horizontality::Horizontal;
            continue;
        }
        if (T.count() < threshold) continue;
        const CellSet centers = T - forbidden - chebyshev_dilate(st, T.complement(), reach);
        if (centers.none()) continue;

        std::vector<std::size_t> subs = tip.subsets;
        std::sort(subs.begin(), subs.end(), [&](std::size_t a, std::size_t b) {
            const auto ca = model.tips.tips[a].cells.count(), cb = model.tips.tips[b].cells.count();
            return ca != cb ? ca > cb : a < b;
        });
        CellSet uncovered = centers;
        for (std::size_t j : subs) {
            const CellSet& inner = model.tips.tips[j].cells;
            if (!uncovered.intersects(inner)) continue;
            // A window B_m(c) lies inside `inner` iff c is farther than m from T minus inner.
            uncovered.subtract(centers - chebyshev_dilate(st, T - inner, m));
            if (uncovered.none()) break;
        }
        flags[k] = uncovered.none() ? Horizontality::NonHorizontal : Horizontality::Horizontal;
    }
    return flags;
}

EventResult event_mask(const CausalModel& model, const std::vector<Horizontality>& flags) {
    const GridSpacetime& st = model.grid();
    EventResult out;
    CellSet covered(st.cell_count());
    for (std::size_t k = 0; k < model.tips.size(); ++k) {
        const Tip& tip = model.tips.tips[k];
        bool has_horizontal = flags[k] == Horizontality::Horizontal;
        for (std::size_t j : tip.subsets)
            if (!has_horizontal && flags[j] == Horizontality::Horizontal) has_horizontal = true;
        if (has_horizontal) continue;
        out.causal_jplus.push_back(k);
        covered |= tip.cells;
    }
    out.mask = make_region(st, st.domain() - covered, "E");
    return out;
}

EventResult event_mask(const CausalModel& model, HorizontalityParams params) {
    return event_mask(model, horizontal_tips(model, params));
}

CauchyCheck cauchy_check(const CausalModel& model) {
    return cauchy_check(model.grid(), model.stencil, model.tau);
}

std::vector<bool> compact_tips(const CausalModel& model) {
    const GridSpacetime& st = model.grid();
    if (!cauchy_check(model).all_cauchy()) throw NonCauchyFoliation("foliation of '" + st.name() + "' is not Cauchy");
    const CellSet marks = slice_end_cells(st);
    std::vector<bool> out;
    out.reserve(model.tips.size());
    for (const Tip& tip : model.tips.tips) out.push_back(!tip.cells.intersects(marks));
    return out;
}

RegionMask compactness_mask(const CausalModel& model) {
    const GridSpacetime& st = model.grid();
    const auto flags = compact_tips(model);
    CellSet covered(st.cell_count());
    for (std::size_t k = 0; k < flags.size(); ++k)
        if (!flags[k]) covered |= model.tips.tips[k].cells;
    return make_region(st, st.domain() - covered, "C");
}

}  // namespace horizonlab
