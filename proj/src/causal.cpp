#include "horizonlab/causal.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace horizonlab {

namespace {

long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

Cell sample_point(Cell p, int dt, int dx, int k, int n) {
    const long nt = 2L * (static_cast<long>(p.t) * n + static_cast<long>(dt) * k) + n;
    const long nx = 2L * (static_cast<long>(p.x) * n + static_cast<long>(dx) * k) + n;
    return {static_cast<int>(floor_div(nt, 2L * n)), static_cast<int>(floor_div(nx, 2L * n))};
}

namespace {

bool slope_admissible(const ConeSlopes& s, double slope, double eps, bool closed) {
    if (closed) return slope >= s.lo - 1e-12 && slope <= s.hi + 1e-12;
    return slope > s.lo + eps && slope < s.hi - eps;
}

Stencil build_stencil(const GridSpacetime& st, const ConeField& cones, StencilParams params, bool closed) {
    if (params.radius < 1) throw ParamError("stencil radius must be at least 1");
    if (!closed && params.radius < 2) throw ParamError("timelike stencil radius must be at least 2");
    if (!closed && !(params.margin > 0.0 && params.margin < 1.0))
        throw ParamError("stencil margin must lie in (0, 1)");
    const double eps = closed ? 0.0 : params.margin / params.radius;

    Stencil out;
    out.params = params;
    out.closed = closed;
    out.steps.assign(st.cell_count(), {});
    out.preds.assign(st.cell_count(), {});

    for (std::size_t i = 0; i < st.cell_count(); ++i) {
        if (!st.in_domain(i)) continue;
        const Cell p = st.cell(i);
        const ConeSlopes& here = cones.at(i);
        for (int dt = 1; dt <= params.radius; ++dt) {
            const int lo = static_cast<int>(std::floor(here.lo * dt)) - 1;
            const int hi = static_cast<int>(std::ceil(here.hi * dt)) + 1;
            for (int dx = lo; dx <= hi; ++dx) {
                const double slope = static_cast<double>(dx) / dt;
                const int n = 2 * dt;
                bool ok = true;
                for (int k = 0; k <= n && ok; ++k) {
                    auto c = st.normalize(sample_point(p, dt, dx, k, n));
                    if (!c || !st.passable(st.index(*c))) {
                        ok = false;
                        break;
                    }
                    ok = slope_admissible(cones.at(st.index(*c)), slope, eps, closed);
                }
                if (!ok) continue;
                auto target = st.normalize({p.t + dt, p.x + dx});
                const std::size_t j = st.index(*target);
                if (j == i || !st.in_domain(j)) continue;
                out.steps[i].push_back({j, dt, dx});
            }
        }
        if (!closed && out.steps[i].empty()) {
            // No step although the cone axis stays in the domain for R rows.
            const double mid = 0.5 * (here.lo + here.hi);
            bool axis_inside = true;
            for (int dt = 1; dt <= params.radius && axis_inside; ++dt) {
                auto c = st.normalize({p.t + dt, p.x + static_cast<int>(std::lround(mid * dt))});
                axis_inside = c && st.in_domain(st.index(*c));
            }
            if (axis_inside) {
                std::ostringstream os;
                os << "no timelike step at cell (" << p.t << "," << p.x << ") with radius " << params.radius;
                throw EmptyStencilError(os.str(), p);
            }
        }
    }
    for (std::size_t i = 0; i < st.cell_count(); ++i)
        for (const Step& s : out.steps[i]) out.preds[s.target].push_back(i);
    return out;
}

}  // namespace

std::size_t Stencil::edge_count() const {
    std::size_t n = 0;
    for (const auto& s : steps) n += s.size();
    return n;
}

Stencil timelike_stencil(const GridSpacetime& st, StencilParams params) {
    return build_stencil(st, cone_field(st, params.slope_cap), params, false);
}

Stencil timelike_stencil(const GridSpacetime& st, const ConeField& cones, StencilParams params) {
    return build_stencil(st, cones, params, false);
}

Stencil causal_stencil(const GridSpacetime& st, const ConeField& cones, int radius) {
    return build_stencil(st, cones, {radius, 0.0}, true);
}

Reachability::Reachability(const GridSpacetime& st, const Stencil& stencil) {
    const std::size_t n = st.cell_count();
    future_.assign(n, CellSet(n));
    past_.assign(n, CellSet(n));
    // Every step increases the row, so row order is a topological order.
    for (int t = st.rows() - 1; t >= 0; --t)
        for (int x = 0; x < st.cols(); ++x) {
            const std::size_t i = st.index({t, x});
            for (const Step& s : stencil.steps[i]) {
                future_[i].set(s.target);
                future_[i] |= future_[s.target];
            }
        }
    for (int t = 0; t < st.rows(); ++t)
        for (int x = 0; x < st.cols(); ++x) {
            const std::size_t i = st.index({t, x});
            for (std::size_t p : stencil.preds[i]) {
                past_[i].set(p);
                past_[i] |= past_[p];
            }
        }
}

CellSet future_set(const GridSpacetime& st, const Stencil& stencil, Cell p) {
    if (!st.in_domain(p)) throw PrecondError("future_set: cell outside the domain");
    CellSet out(st.cell_count());
    std::vector<std::size_t> stack{st.index(p)};
    while (!stack.empty()) {
        const std::size_t i = stack.back();
        stack.pop_back();
        for (const Step& s : stencil.steps[i])
            if (!out.test(s.target)) {
                out.set(s.target);
                stack.push_back(s.target);
            }
    }
    return out;
}

CellSet past_set(const GridSpacetime& st, const Stencil& stencil, Cell p) {
    if (!st.in_domain(p)) throw PrecondError("past_set: cell outside the domain");
    CellSet out(st.cell_count());
    std::vector<std::size_t> stack{st.index(p)};
    while (!stack.empty()) {
        const std::size_t i = stack.back();
        stack.pop_back();
        for (std::size_t q : stencil.preds[i])
            if (!out.test(q)) {
                out.set(q);
                stack.push_back(q);
            }
    }
    return out;
}

std::vector<double> foliation_levels(const GridSpacetime& st, const Stencil& stencil) {
    if (st.foliation_kind() != FoliationKind::StepDepth) return st.foliation();
    const std::size_t n = st.cell_count();
    std::vector<int> up(n, 0), down(n, 0);
    for (int t = 0; t < st.rows(); ++t)
        for (int x = 0; x < st.cols(); ++x) {
            const std::size_t i = st.index({t, x});
            for (std::size_t p : stencil.preds[i]) up[i] = std::max(up[i], up[p] + 1);
        }
    for (int t = st.rows() - 1; t >= 0; --t)
        for (int x = 0; x < st.cols(); ++x) {
            const std::size_t i = st.index({t, x});
            for (const Step& s : stencil.steps[i]) down[i] = std::max(down[i], down[s.target] + 1);
        }
    std::vector<double> tau(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const int total = up[i] + down[i];
        tau[i] = total == 0 ? 0.5 : static_cast<double>(up[i]) / total;
    }
    return tau;
}

bool CauchyCheck::all_cauchy() const {
    return non_increasing_steps.empty() && std::all_of(cauchy.begin(), cauchy.end(), [](bool b) { return b; });
}

CauchyCheck cauchy_check(const GridSpacetime& st, const Stencil& stencil, const std::vector<double>& tau) {
    CauchyCheck out;
    std::set<double> levels;
    double latest_start = -1e300, earliest_end = 1e300;
    st.domain().for_each([&](std::size_t i) {
        levels.insert(tau[i]);
        if (stencil.preds[i].empty()) latest_start = std::max(latest_start, tau[i]);
        if (stencil.steps[i].empty()) earliest_end = std::min(earliest_end, tau[i]);
        for (const Step& s : stencil.steps[i])
            if (!(tau[s.target] > tau[i])) {
                out.non_increasing_steps.push_back(st.cell(i));
                break;
            }
    });
    out.levels.assign(levels.begin(), levels.end());
    for (double v : out.levels) out.cauchy.push_back(v >= latest_start && v <= earliest_end);
    return out;
}

bool is_generator_cell(const GridSpacetime& st, Cell c) {
    if (!st.in_domain(c)) return false;
    return st.facet_tag(c, Facet::PlusT) != FacetTag::None || st.facet_tag(c, Facet::PlusX) != FacetTag::None ||
           st.facet_tag(c, Facet::MinusX) != FacetTag::None;
}

namespace {

bool capable_tag(const GridSpacetime& st, Cell c, FacetTag tag) {
    return st.facet_tag(c, Facet::PlusT) == tag || st.facet_tag(c, Facet::PlusX) == tag ||
           st.facet_tag(c, Facet::MinusX) == tag;
}

}  // namespace

std::vector<std::size_t> TipTable::through(std::size_t p) const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < tips.size(); ++k)
        if (tips[k].cells.test(p)) out.push_back(k);
    return out;
}

bool TipTable::strictly_below(std::size_t a, std::size_t b) const {
    const auto& sup = tips[a].supersets;
    return std::binary_search(sup.begin(), sup.end(), b);
}

TipTable tip_table(const GridSpacetime& st, const Reachability& reach) {
    TipTable table;
    for (std::size_t i = 0; i < st.cell_count(); ++i)
        if (is_generator_cell(st, st.cell(i))) table.generator_cells.push_back(i);

    // Deduplicate by content; generators are visited in row-major (lexicographic)
    // order so the first one seen is the representative.
    std::map<std::vector<CellSet::Word>, std::size_t> seen;
    for (std::size_t g : table.generator_cells) {
        CellSet cells = reach.past_of(g);
        cells.set(g);
        auto [it, inserted] = seen.emplace(cells.words(), table.tips.size());
        if (!inserted) {
            table.tips[it->second].generators.push_back(g);
            continue;
        }
        Tip tip;
        tip.generators.push_back(g);
        tip.cells = std::move(cells);
        const Cell c = st.cell(g);
        tip.on_genuine = capable_tag(st, c, FacetTag::Genuine);
        tip.on_truncation = capable_tag(st, c, FacetTag::Truncation);
        table.tips.push_back(std::move(tip));
    }

    const std::size_t n = table.tips.size();
    std::vector<std::size_t> counts(n);
    for (std::size_t a = 0; a < n; ++a) counts[a] = table.tips[a].cells.count();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (a == b || counts[a] >= counts[b]) continue;
            if (table.tips[a].cells.is_subset_of(table.tips[b].cells)) {
                table.tips[a].supersets.push_back(b);
                table.tips[b].subsets.push_back(a);
            }
        }
    for (auto& tip : table.tips) {
        std::sort(tip.supersets.begin(), tip.supersets.end());
        std::sort(tip.subsets.begin(), tip.subsets.end());
    }
    return table;
}

std::vector<std::size_t> tips_through(const GridSpacetime& st, const TipTable& table, Cell p) {
    if (!st.in_domain(p)) throw PrecondError("tips_through: cell outside the domain");
    return table.through(st.index(p));
}

std::string format_tip_table(const GridSpacetime& st, const TipTable& table) {
    std::ostringstream os;
    os << "# id t x popcount kind parents\n";
    for (std::size_t k = 0; k < table.size(); ++k) {
        const Tip& tip = table.tips[k];
        const Cell c = st.cell(tip.representative());
        os << k << ' ' << c.t << ' ' << c.x << ' ' << tip.cells.count() << ' '
           << (tip.on_truncation ? "truncation" : "genuine");
        // Immediate parents: supersets with no intermediate superset.
        bool first = true;
        for (std::size_t p : tip.supersets) {
            bool immediate = true;
            for (std::size_t m : tip.supersets)
                if (m != p && table.strictly_below(m, p)) {
                    immediate = false;
                    break;
                }
            if (!immediate) continue;
            os << (first ? ' ' : ',') << p;
            first = false;
        }
        if (first) os << " -";
        os << '\n';
    }
    return os.str();
}

CausalModel CausalModel::build(std::shared_ptr<const GridSpacetime> st, StencilParams params) {
    CausalModel m;
    m.spacetime = std::move(st);
    m.cones = cone_field(*m.spacetime, params.slope_cap);
    m.stencil = timelike_stencil(*m.spacetime, m.cones, params);
    m.closed_stencil = causal_stencil(*m.spacetime, m.cones, params.radius);
    m.reach = Reachability(*m.spacetime, m.stencil);
    m.tips = tip_table(*m.spacetime, m.reach);
    m.tau = foliation_levels(*m.spacetime, m.stencil);
    return m;
}

CellSet causal_future(const GridSpacetime& st, const Stencil& closed, std::size_t q) {
    CellSet out(st.cell_count());
    out.set(q);
    std::vector<std::size_t> stack{q};
    while (!stack.empty()) {
        const std::size_t i = stack.back();
        stack.pop_back();
        for (const Step& s : closed.steps[i])
            if (!out.test(s.target)) {
                out.set(s.target);
                stack.push_back(s.target);
            }
    }
    return out;
}

bool escape_curve_exists(const CausalModel& model, Cell p, Cell q) {
    const GridSpacetime& st = model.grid();
    if (!st.in_domain(p) || !st.in_domain(q)) throw PrecondError("escape_curve_exists: cell outside the domain");
    const std::size_t ip = st.index(p);
    const std::size_t iq = st.index(q);
    if (!model.reach.precedes(ip, iq)) throw PrecondError("escape_curve_exists: q is not in the future of p");
    CellSet blocked = model.reach.future_of(iq);
    blocked.set(iq);

    CellSet seen(st.cell_count());
    std::vector<std::size_t> stack{ip};
    seen.set(ip);
    while (!stack.empty()) {
        const std::size_t i = stack.back();
        stack.pop_back();
        if (is_generator_cell(st, st.cell(i))) return true;
        for (const Step& s : model.stencil.steps[i])
            if (!blocked.test(s.target) && !seen.test(s.target)) {
                seen.set(s.target);
                stack.push_back(s.target);
            }
    }
    return false;
}

}  // namespace horizonlab
