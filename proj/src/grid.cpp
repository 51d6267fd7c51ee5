#include "horizonlab/grid.hpp"

#include <cmath>
#include <queue>
#include <sstream>

namespace horizonlab {

const char* to_string(Facet f) {
    switch (f) {
        case Facet::PlusT: return "+t";
        case Facet::MinusT: return "-t";
        case Facet::PlusX: return "+x";
        case Facet::MinusX: return "-x";
    }
    return "?";
}

const char* to_string(FacetTag t) {
    switch (t) {
        case FacetTag::None: return "none";
        case FacetTag::Genuine: return "genuine";
        case FacetTag::Truncation: return "truncation";
    }
    return "?";
}

const char* to_string(FoliationKind k) {
    switch (k) {
        case FoliationKind::CoordinateTime: return "coordinate";
        case FoliationKind::Custom: return "custom";
        case FoliationKind::StepDepth: return "step_depth";
    }
    return "?";
}

GridSpacetime::GridSpacetime(std::string name, int nt, int nx, double spacing, double t0, double x0,
                             bool periodic_x)
    : name_(std::move(name)),
      nt_(nt),
      nx_(nx),
      spacing_(spacing),
      t0_(t0),
      x0_(x0),
      periodic_(periodic_x) {
    if (nt < 1 || nx < 1) throw ParamError("grid needs at least one row and one column");
    if (!(spacing > 0.0)) throw ParamError("grid spacing must be positive");
    domain_ = CellSet(cell_count());
    ambient_ = CellSet(cell_count());
    facets_.assign(cell_count(), {FacetTag::None, FacetTag::None, FacetTag::None, FacetTag::None});
    metric_.assign(cell_count(), Metric{});
    set_foliation(FoliationKind::CoordinateTime);
}

std::optional<Cell> GridSpacetime::normalize(Cell c) const {
    if (c.t < 0 || c.t >= nt_) return std::nullopt;
    if (periodic_) {
        c.x %= nx_;
        if (c.x < 0) c.x += nx_;
        return c;
    }
    if (c.x < 0 || c.x >= nx_) return std::nullopt;
    return c;
}

bool GridSpacetime::in_domain(Cell c) const {
    auto n = normalize(c);
    return n && domain_.test(index(*n));
}

std::optional<Cell> GridSpacetime::neighbor(Cell c, Facet f) const {
    switch (f) {
        case Facet::PlusT: return normalize({c.t + 1, c.x});
        case Facet::MinusT: return normalize({c.t - 1, c.x});
        case Facet::PlusX: return normalize({c.t, c.x + 1});
        case Facet::MinusX: return normalize({c.t, c.x - 1});
    }
    return std::nullopt;
}

bool GridSpacetime::has_boundary_facet(Cell c) const {
    for (Facet f : kFacets)
        if (facet_tag(c, f) != FacetTag::None) return true;
    return false;
}

bool GridSpacetime::has_boundary_facet(Cell c, FacetTag tag) const {
    for (Facet f : kFacets)
        if (facet_tag(c, f) == tag) return true;
    return false;
}

bool GridSpacetime::cauchy_noncompact() const {
    if (periodic_) return false;
    for (int t = 0; t < nt_; ++t)
        for (int x = 0; x < nx_; ++x) {
            const Cell c{t, x};
            if (!domain_.test(index(c))) continue;
            if (facet_tag(c, Facet::PlusX) == FacetTag::Truncation ||
                facet_tag(c, Facet::MinusX) == FacetTag::Truncation)
                return true;
        }
    return false;
}

void GridSpacetime::set_foliation(FoliationKind kind, std::vector<double> tau) {
    if (kind == FoliationKind::Custom && tau.size() != cell_count())
        throw ParamError("custom foliation needs one level per cell");
    foliation_kind_ = kind;
    if (kind == FoliationKind::CoordinateTime) {
        tau.assign(cell_count(), 0.0);
        for (std::size_t i = 0; i < cell_count(); ++i) tau[i] = static_cast<double>(cell(i).t);
    }
    tau_ = std::move(tau);
}

void GridSpacetime::tag_boundary(const std::function<FacetTag(Cell, Facet)>& edge_tag,
                                 const std::function<FacetTag(Cell, Facet)>& hole_tag) {
    for (std::size_t i = 0; i < cell_count(); ++i) {
        const Cell c = cell(i);
        for (Facet f : kFacets) {
            FacetTag tag = FacetTag::None;
            if (domain_.test(i)) {
                auto n = neighbor(c, f);
                if (!n)
                    tag = edge_tag(c, f);
                else if (!domain_.test(index(*n)))
                    tag = hole_tag(c, f);
            }
            facets_[i][static_cast<int>(f)] = tag;
        }
    }
}

GridSpacetime GridSpacetime::conformally_rescaled(const std::function<double(Cell)>& factor) const {
    GridSpacetime out = *this;
    for (std::size_t i = 0; i < cell_count(); ++i) {
        if (!passable(i)) continue;
        const double w = factor(cell(i));
        if (!(w > 0.0) || !std::isfinite(w)) throw ParamError("conformal factor must be positive and finite");
        out.metric_[i] = metric_[i].scaled(w);
    }
    return out;
}

ConeSlopes null_slopes(const Metric& g) {
    const double disc = g.tx * g.tx - g.tt * g.xx;
    if (!(disc > 0.0) || !(g.xx < 0.0)) {
        std::ostringstream os;
        os << "non-Lorentzian or badly oriented metric cell (g_tt=" << g.tt << ", g_tx=" << g.tx
           << ", g_xx=" << g.xx << ")";
        throw SignatureError(os.str());
    }
    // Normalised by -g_xx so the result does not depend on the overall scale.
    const double a = g.tt / -g.xx;
    const double b = g.tx / -g.xx;
    const double r = std::sqrt(b * b + a);
    return {b - r, b + r};
}

ConeField cone_field(const GridSpacetime& st, double slope_cap) {
    ConeField field;
    field.slopes.assign(st.cell_count(), ConeSlopes{});
    for (std::size_t i = 0; i < st.cell_count(); ++i) {
        if (!st.passable(i)) continue;
        ConeSlopes s;
        try {
            s = null_slopes(st.metric(i));
        } catch (const SignatureError& e) {
            const Cell c = st.cell(i);
            throw SignatureError(std::string(e.what()) + " at cell (" + std::to_string(c.t) + "," +
                                 std::to_string(c.x) + ")");
        }
        if (!(std::abs(s.lo) < slope_cap) || !(std::abs(s.hi) < slope_cap)) {
            const Cell c = st.cell(i);
            throw ConeCapError("null slope exceeds cap at cell (" + std::to_string(c.t) + "," +
                               std::to_string(c.x) + ")");
        }
        field.slopes[i] = s;
    }
    return field;
}

std::vector<int> label_components(const GridSpacetime& st, const CellSet& cells, int* count) {
    std::vector<int> label(st.cell_count(), -1);
    int next = 0;
    std::queue<std::size_t> q;
    for (std::size_t s = 0; s < st.cell_count(); ++s) {
        if (!cells.test(s) || label[s] >= 0) continue;
        label[s] = next;
        q.push(s);
        while (!q.empty()) {
            const std::size_t i = q.front();
            q.pop();
            for (Facet f : kFacets) {
                auto n = st.neighbor(st.cell(i), f);
                if (!n) continue;
                const std::size_t j = st.index(*n);
                if (cells.test(j) && label[j] < 0) {
                    label[j] = next;
                    q.push(j);
                }
            }
        }
        ++next;
    }
    if (count) *count = next;
    return label;
}

}  // namespace horizonlab

namespace horizonlab {

namespace {

CellSet column_mask(const GridSpacetime& st, int x) {
    CellSet m(st.cell_count());
    for (int t = 0; t < st.rows(); ++t) m.set(st.index({t, x}));
    return m;
}

}  // namespace

CellSet chebyshev_dilate(const GridSpacetime& st, const CellSet& cells, int r) {
    const std::size_t nx = static_cast<std::size_t>(st.cols());
    const CellSet first = column_mask(st, 0);
    const CellSet last = column_mask(st, st.cols() - 1);
    CellSet out = cells;
    for (int k = 0; k < r; ++k) {
        // One column to the right and one to the left, fixing the row seams.
        CellSet right = (out - last).shifted_up(1);
        CellSet left = (out - first).shifted_down(1);
        if (st.periodic_x()) {
            right |= (out & last).shifted_down(nx - 1);
            left |= (out & first).shifted_up(nx - 1);
        }
        out |= right;
        out |= left;
    }
    for (int k = 0; k < r; ++k) {
        CellSet grown = out.shifted_up(nx);
        grown |= out.shifted_down(nx);
        out |= grown;
    }
    return out;
}

CellSet boundary_facet_cells(const GridSpacetime& st) {
    CellSet out(st.cell_count());
    st.domain().for_each([&](std::size_t i) {
        if (st.has_boundary_facet(st.cell(i))) out.set(i);
    });
    return out;
}

}  // namespace horizonlab
