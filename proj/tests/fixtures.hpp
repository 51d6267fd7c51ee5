#pragma once

#include <memory>

#include "horizonlab/causal.hpp"
#include "horizonlab/grid.hpp"

namespace fixtures {

using namespace horizonlab;

// Flat unit-spacing box with every outer facet tagged `edge`.
inline GridSpacetime flat(int nt, int nx, FacetTag edge = FacetTag::Truncation) {
    GridSpacetime st("flat", nt, nx, 1.0, 0.0, 0.0, false);
    for (int t = 0; t < nt; ++t)
        for (int x = 0; x < nx; ++x) st.set_domain({t, x}, true);
    st.tag_boundary([edge](Cell, Facet) { return edge; }, [edge](Cell, Facet) { return edge; });
    return st;
}

inline CausalModel model_of(GridSpacetime st, int radius = 2, double margin = 0.5) {
    return CausalModel::build(std::make_shared<const GridSpacetime>(std::move(st)), {radius, margin});
}

inline CellSet cells_of(const GridSpacetime& st, std::initializer_list<Cell> cs) {
    CellSet s(st.cell_count());
    for (Cell c : cs) s.set(st.index(c));
    return s;
}

}  // namespace fixtures
