#include <algorithm>
#include <numeric>
#include <random>

#include "horizonlab/horizons.hpp"

namespace horizonlab {

namespace {

CellSet reflexive_past(const CausalModel& model, std::size_t r) {
    CellSet s = model.reach.past_of(r);
    s.set(r);
    return s;
}

CellSet closure4(const GridSpacetime& st, const CellSet& mask) {
    CellSet out = mask;
    mask.for_each([&](std::size_t i) {
        for (Facet f : kFacets) {
            auto n = st.neighbor(st.cell(i), f);
            if (n && st.in_domain(*n)) out.set(st.index(*n));
        }
    });
    return out;
}

std::vector<std::size_t> terminal_cells(const CausalModel& model) {
    std::vector<std::size_t> out;
    model.grid().domain().for_each([&](std::size_t i) {
        if (model.stencil.steps[i].empty()) out.push_back(i);
    });
    return out;
}

}  // namespace

bool is_synoptic(const CausalModel& model, const CellSet& mask) {
    if (mask.none()) return true;
    bool found = false;
    mask.for_each([&](std::size_t r) {
        if (found) return;
        found = (mask - model.reach.past_of(r)).count() == 1;
    });
    return found;
}

bool is_synoptic_pairwise(const CausalModel& model, const CellSet& mask) {
    const auto cells = mask.members();
    std::vector<CellSet> fut;
    fut.reserve(cells.size());
    for (std::size_t p : cells) {
        CellSet f = model.reach.future_of(p);
        f.set(p);
        f &= mask;
        fut.push_back(std::move(f));
    }
    for (std::size_t a = 0; a < cells.size(); ++a)
        for (std::size_t b = a + 1; b < cells.size(); ++b)
            if (!fut[a].intersects(fut[b])) return false;
    return true;
}

std::vector<RegionMask> maximal_synoptic(const CausalModel& model, std::size_t seed_tip, SynopticOptions opts) {
    const GridSpacetime& st = model.grid();
    if (seed_tip >= model.tips.size()) throw ParamError("seed tip id out of range");
    const Tip& seed = model.tips.tips[seed_tip];

    if (opts.mode == SynopticMode::Exact) {
        if (st.domain().count() > kExactSynopticCells)
            throw SizeError("exact maximal synoptic search is limited to " + std::to_string(kExactSynopticCells) +
                            " cells");
        // Every synoptic set sits below its greatest element, so the maximal
        // ones are the reflexive pasts of cells without a future.
        std::vector<RegionMask> out;
        for (std::size_t r : terminal_cells(model)) {
            CellSet s = reflexive_past(model, r);
            if (seed.cells.is_subset_of(s)) out.push_back(make_region(st, std::move(s), "S"));
        }
        return out;
    }

    std::mt19937_64 rng(opts.seed);
    std::vector<std::size_t> order = st.domain().members();
    CellSet best;
    for (int round = 0; round < std::max(1, opts.restarts); ++round) {
        std::shuffle(order.begin(), order.end(), rng);
        std::size_t top = seed.representative();
        CellSet s = seed.cells;
        for (bool grown = true; grown;) {
            grown = false;
            for (std::size_t c : order) {
                if (s.test(c)) continue;
                if (model.reach.past_of(top).test(c)) {
                    s.set(c);
                    grown = true;
                } else if (model.reach.past_of(c).test(top)) {
                    s.set(c);
                    top = c;
                    grown = true;
                }
            }
        }
        if (best.size() == 0 || s.count() > best.count()) best = std::move(s);
    }
    return {make_region(st, std::move(best), "S")};
}

SynopticityRegion synopticity_region(const GridSpacetime& st, const CellSet& maximal) {
    const CellSet closed = closure4(st, maximal);
    SynopticityRegion out;
    out.region = make_region(st, st.domain() - closed, "synopticity region");
    out.horizon = CellSet(st.cell_count());
    out.region.members.for_each([&](std::size_t i) {
        for (Facet f : kFacets) {
            auto n = st.neighbor(st.cell(i), f);
            if (n && closed.test(st.index(*n))) {
                out.horizon.set(i);
                return;
            }
        }
    });
    return out;
}

std::optional<Cell> separating_region(const CausalModel& model, const CellSet& lower, Cell p) {
    const GridSpacetime& st = model.grid();
    const std::size_t ip = st.index(p);
    for (std::size_t r : terminal_cells(model)) {
        const CellSet closed = closure4(st, reflexive_past(model, r));
        if (closed.test(ip) && !closed.intersects(lower)) return st.cell(r);
    }
    return std::nullopt;
}

InclusionVerdict check_inclusion(const GridSpacetime& st, const std::string& name, const CellSet& a,
                                 const CellSet& b) {
    InclusionVerdict v;
    v.name = name;
    const CellSet extra = a - b;
    v.holds = extra.none();
    if (!v.holds) v.witness = st.cell(extra.members().front());
    return v;
}

bool HierarchyReport::passed() const {
    return obstruction_holds &&
           std::all_of(inclusions.begin(), inclusions.end(), [](const InclusionVerdict& v) { return v.holds; });
}

HierarchyReport hierarchy_audit(const CausalModel& model, HorizontalityParams hp, Convention conv) {
    const GridSpacetime& st = model.grid();
    HierarchyReport rep;
    rep.shielded = shielded_masks(model, conv);
    rep.event = event_mask(model, hp);
    try {
        rep.compactness = compactness_mask(model);
    } catch (const NonCauchyFoliation&) {
        rep.compactness.reset();
    }
    const CellSet& L = rep.shielded.lower.members;
    const CellSet& U = rep.shielded.upper.members;
    const CellSet& E = rep.event.mask.members;
    rep.inclusions.push_back(check_inclusion(st, "L<=U", L, U));
    rep.inclusions.push_back(check_inclusion(st, "U<=E", U, E));
    if (rep.compactness) {
        rep.inclusions.push_back(check_inclusion(st, "L<=C", L, rep.compactness->members));
        rep.inclusions.push_back(check_inclusion(st, "C<=E", rep.compactness->members, E));
    }
    rep.obstruction_applies = st.cauchy_noncompact() && U.any();
    if (rep.obstruction_applies) rep.obstruction_holds = !is_synoptic(model, st.domain());
    return rep;
}

}  // namespace horizonlab
