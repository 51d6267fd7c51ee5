#include <algorithm>

#include "horizonlab/horizons.hpp"

namespace horizonlab {

const char* to_string(Convention c) {
    return c == Convention::ProofReading ? "proof" : "literal";
}

RegionMask make_region(const GridSpacetime& st, CellSet members, std::string label) {
    RegionMask r;
    r.label = std::move(label);
    r.boundary = CellSet(st.cell_count());
    members.for_each([&](std::size_t i) {
        const Cell c = st.cell(i);
        for (Facet f : kFacets) {
            auto n = st.neighbor(c, f);
            if (n && st.in_domain(*n) && !members.test(st.index(*n))) {
                r.boundary.set(i);
                return;
            }
        }
    });
    r.members = std::move(members);
    return r;
}

bool tip_dominated(const Tip& tip, Convention conv) {
    if (tip.open()) return true;
    return conv == Convention::ProofReading ? !tip.supersets.empty() : !tip.subsets.empty();
}

bool tip_dominant(const Tip& tip, Convention conv) {
    if (tip.open()) return true;
    return conv == Convention::ProofReading ? !tip.subsets.empty() : !tip.supersets.empty();
}

namespace {

// Cells lying in at least one tip with the given property.
template <typename Pred>
CellSet union_of_tips(const GridSpacetime& st, const TipTable& table, Pred pred) {
    CellSet out(st.cell_count());
    for (const Tip& tip : table.tips)
        if (pred(tip)) out |= tip.cells;
    return out;
}

}  // namespace

ShieldedMasks shielded_masks(const CausalModel& model, Convention conv) {
    const GridSpacetime& st = model.grid();
    // p is shielded iff no tip through p has the offending property.
    CellSet upper = st.domain() - union_of_tips(st, model.tips, [&](const Tip& t) { return tip_dominated(t, conv); });
    CellSet lower = st.domain() - union_of_tips(st, model.tips, [&](const Tip& t) { return tip_dominant(t, conv); });
    return {make_region(st, std::move(lower), "L"), make_region(st, std::move(upper), "U")};
}

std::vector<std::size_t> naive_null_infinity(const TipTable& table, Convention conv) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < table.size(); ++k)
        if (tip_dominated(table.tips[k], conv)) out.push_back(k);
    return out;
}

Theorem1Audit theorem1_audit(const CausalModel& model, Convention conv) {
    const GridSpacetime& st = model.grid();
    const ShieldedMasks sm = shielded_masks(model, conv);
    CellSet reach(st.cell_count());
    for (std::size_t k : naive_null_infinity(model.tips, conv)) reach |= model.tips.tips[k].cells;

    Theorem1Audit a;
    a.upper_matches = sm.upper.members == st.domain() - reach;
    a.lower_equals_upper = sm.lower.members == sm.upper.members;
    if (a.lower_equals_upper) return a;

    CellSet diff = sm.upper.members - sm.lower.members;
    if (diff.none()) diff = sm.lower.members - sm.upper.members;
    const std::size_t p = diff.members().front();
    a.witness = st.cell(p);
    for (std::size_t k : model.tips.through(p))
        if (tip_dominant(model.tips.tips[k], conv)) {
            a.witness_tip = k;
            break;
        }
    return a;
}

}  // namespace horizonlab
