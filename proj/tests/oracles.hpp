#pragma once

// Exhaustive reference implementations for small grids. They share only the
// primitive definitions with the library (cone slopes, sub-point sampling,
// step lengths, facet tags) and recompute everything else by enumeration.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "horizonlab/geometry.hpp"
#include "horizonlab/horizons.hpp"

namespace oracle {

using namespace horizonlab;
using Members = std::vector<std::size_t>;

// ---------------------------------------------------------------------------
// Random small spacetimes
// ---------------------------------------------------------------------------

// Tilted, conformally rescaled flat cells with a few holes. Cones have slopes
// a - 1 and a + 1; the tilt a stays small enough for (1, 0) to remain inside
// every cone with the stencil margin.
inline GridSpacetime random_grid(std::uint64_t seed, int max_side = 6) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> side(3, max_side);
    std::uniform_real_distribution<double> w(0.5, 2.0), tilt(-0.3, 0.3), unit(0.0, 1.0);
    const int nt = side(rng), nx = side(rng);
    const bool periodic = unit(rng) < 0.2;
    GridSpacetime st("oracle", nt, nx, 1.0, 0.0, 0.0, periodic);
    for (int t = 0; t < nt; ++t)
        for (int x = 0; x < nx; ++x) {
            const bool hole = t > 0 && t < nt - 1 && unit(rng) < 0.08;
            st.set_domain({t, x}, !hole);
            const double s = w(rng), a = tilt(rng);
            st.set_metric({t, x}, Metric{s * (1.0 - a * a), s * a, -s});
        }
    const FacetTag edge_t = unit(rng) < 0.5 ? FacetTag::Genuine : FacetTag::Truncation;
    const FacetTag edge_x = unit(rng) < 0.5 ? FacetTag::Genuine : FacetTag::Truncation;
    st.tag_boundary([&](Cell, Facet f) { return f == Facet::PlusT || f == Facet::MinusT ? edge_t : edge_x; },
                    [](Cell, Facet) { return FacetTag::Genuine; });
    st.set_foliation(FoliationKind::CoordinateTime);
    return st;
}

// Builds the model of the first seed at or after `seed` whose stencil is
// well formed; returns the seed used through `used`.
inline CausalModel random_model(std::uint64_t seed, std::uint64_t* used = nullptr, int max_side = 6,
                                StencilParams params = {2, 0.5}) {
    for (std::uint64_t s = seed;; s += 1000003) {
        try {
            CausalModel m = CausalModel::build(std::make_shared<const GridSpacetime>(random_grid(s, max_side)), params);
            if (used) *used = s;
            return m;
        } catch (const EmptyStencilError&) {
        }
    }
}

// ---------------------------------------------------------------------------
// Stencil and reachability
// ---------------------------------------------------------------------------

inline std::set<std::pair<int, int>> stencil_steps(const GridSpacetime& st, const ConeField& cones, Cell p,
                                                   StencilParams params) {
    std::set<std::pair<int, int>> out;
    const double eps = params.margin / params.radius;
    for (int dt = 1; dt <= params.radius; ++dt)
        for (int dx = -4 * params.radius; dx <= 4 * params.radius; ++dx) {
            const double slope = double(dx) / dt;
            bool ok = true;
            for (int k = 0; k <= 2 * dt && ok; ++k) {
                const auto c = st.normalize(sample_point(p, dt, dx, k, 2 * dt));
                if (!c || !st.passable(st.index(*c))) {
                    ok = false;
                } else {
                    const ConeSlopes& s = cones.at(st.index(*c));
                    ok = slope > s.lo + eps && slope < s.hi - eps;
                }
            }
            if (!ok) continue;
            const auto target = st.normalize({p.t + dt, p.x + dx});
            if (target && st.in_domain(*target) && !(*target == p)) out.insert({dt, dx});
        }
    return out;
}

inline CellSet future_dfs(const CausalModel& m, std::size_t p) {
    CellSet seen(m.grid().cell_count());
    std::vector<std::size_t> stack{p};
    while (!stack.empty()) {
        const std::size_t i = stack.back();
        stack.pop_back();
        for (const Step& s : m.stencil.steps[i])
            if (!seen.test(s.target)) {
                seen.set(s.target);
                stack.push_back(s.target);
            }
    }
    return seen;
}

inline std::vector<CellSet> all_futures(const CausalModel& m) {
    std::vector<CellSet> out;
    for (std::size_t i = 0; i < m.grid().cell_count(); ++i)
        out.push_back(m.grid().in_domain(i) ? future_dfs(m, i) : CellSet(m.grid().cell_count()));
    return out;
}

inline std::vector<CellSet> all_pasts(const CausalModel& m, const std::vector<CellSet>& fut) {
    const std::size_t n = m.grid().cell_count();
    std::vector<CellSet> out(n, CellSet(n));
    for (std::size_t p = 0; p < n; ++p) fut[p].for_each([&](std::size_t q) { out[q].set(p); });
    return out;
}

// ---------------------------------------------------------------------------
// Tips
// ---------------------------------------------------------------------------

inline bool generator(const GridSpacetime& st, Cell c) {
    if (!st.in_domain(c)) return false;
    for (Facet f : {Facet::PlusT, Facet::PlusX, Facet::MinusX})
        if (st.facet_tag(c, f) != FacetTag::None) return true;
    return false;
}

inline std::set<Members> tip_sets(const CausalModel& m, const std::vector<CellSet>& past) {
    const GridSpacetime& st = m.grid();
    std::set<Members> out;
    for (std::size_t g = 0; g < st.cell_count(); ++g) {
        if (!generator(st, st.cell(g))) continue;
        CellSet tip = past[g];
        tip.set(g);
        out.insert(tip.members());
    }
    return out;
}

inline bool strict_subset(const CellSet& a, const CellSet& b) { return a.is_subset_of(b) && !(a == b); }

struct Shielded {
    CellSet lower, upper;
};

// Straight from the definitions over the tip cell sets; only the open flag is
// read from the table.
inline Shielded shielded(const CausalModel& m, Convention conv) {
    const GridSpacetime& st = m.grid();
    const auto& tips = m.tips.tips;
    CellSet dominated_cover(st.cell_count()), dominant_cover(st.cell_count());
    for (const Tip& a : tips) {
        bool has_super = false, has_sub = false;
        for (const Tip& b : tips) {
            has_super = has_super || strict_subset(a.cells, b.cells);
            has_sub = has_sub || strict_subset(b.cells, a.cells);
        }
        const bool proof = conv == Convention::ProofReading;
        const bool dominated = a.open() || (proof ? has_super : has_sub);
        const bool dominant = a.open() || (proof ? has_sub : has_super);
        if (dominated) dominated_cover |= a.cells;
        if (dominant) dominant_cover |= a.cells;
    }
    return {st.domain() - dominant_cover, st.domain() - dominated_cover};
}

// ---------------------------------------------------------------------------
// Horizontality, E, C
// ---------------------------------------------------------------------------

inline int cheb(const GridSpacetime& st, Cell a, Cell b) {
    int dx = std::abs(a.x - b.x);
    if (st.periodic_x()) dx = std::min(dx, st.cols() - dx);
    return std::max(std::abs(a.t - b.t), dx);
}

inline bool has_boundary_facet(const GridSpacetime& st, Cell c) {
    for (Facet f : kFacets)
        if (st.facet_tag(c, f) != FacetTag::None) return true;
    return false;
}

inline CellSet slice_ends(const GridSpacetime& st) {
    CellSet out(st.cell_count());
    st.domain().for_each([&](std::size_t i) {
        const Cell c = st.cell(i);
        bool mark = false;
        for (Facet f : {Facet::PlusT, Facet::PlusX, Facet::MinusX}) mark = mark || st.facet_tag(c, f) == FacetTag::Truncation;
        for (Facet f : {Facet::PlusX, Facet::MinusX}) {
            bool wall = true;
            for (int dt = -1; dt <= 1; ++dt) {
                const Cell n{c.t + dt, c.x};
                wall = wall && st.in_domain(n) && st.facet_tag(n, f) == FacetTag::Genuine;
            }
            mark = mark || wall;
        }
        if (mark) out.set(i);
    });
    return out;
}

// The window rule, evaluated window by window.
inline std::vector<Horizontality> horizontality(const CausalModel& m, int window) {
    const GridSpacetime& st = m.grid();
    const auto& tips = m.tips.tips;
    const int reach = window + 2 * m.stencil.params.radius - 1;
    const CellSet ends = slice_ends(st);
    std::vector<Horizontality> out(tips.size(), Horizontality::Indeterminate);
    for (std::size_t k = 0; k < tips.size(); ++k) {
        const CellSet& T = tips[k].cells;
        std::vector<std::size_t> subs, sups;
        for (std::size_t j = 0; j < tips.size(); ++j) {
            if (strict_subset(tips[j].cells, T)) subs.push_back(j);
            if (strict_subset(T, tips[j].cells)) sups.push_back(j);
        }
        if (subs.empty() && !T.intersects(ends)) {
            out[k] = Horizontality::Horizontal;
            continue;
        }
        if (sups.empty() && !tips[k].open()) {
            CellSet rest = T;
            for (std::size_t j : subs) rest = rest - tips[j].cells;
            out[k] = rest.none() ? Horizontality::NonHorizontal : Horizontality::Horizontal;
            continue;
        }
        if (T.count() < static_cast<std::size_t>((2 * window + 1) * (2 * window + 1))) continue;
        std::vector<std::size_t> centers;
        T.for_each([&](std::size_t i) {
            const Cell c = st.cell(i);
            if (c.t < reach || c.t >= st.rows() - reach) return;
            if (!st.periodic_x() && (c.x < reach || c.x >= st.cols() - reach)) return;
            for (std::size_t j = 0; j < st.cell_count(); ++j) {
                const int d = cheb(st, c, st.cell(j));
                if (d <= window && st.in_domain(j) && has_boundary_facet(st, st.cell(j))) return;
                if (d <= reach && !T.test(j)) return;
            }
            centers.push_back(i);
        });
        if (centers.empty()) continue;
        bool all_covered = true;
        for (std::size_t c : centers) {
            bool covered = false;
            for (std::size_t j : subs) {
                bool inside = true;
                T.for_each([&](std::size_t q) {
                    if (cheb(st, st.cell(c), st.cell(q)) <= window && !tips[j].cells.test(q)) inside = false;
                });
                if (inside) {
                    covered = true;
                    break;
                }
            }
            all_covered = all_covered && covered;
        }
        out[k] = all_covered ? Horizontality::NonHorizontal : Horizontality::Horizontal;
    }
    return out;
}

inline CellSet event_set(const CausalModel& m, const std::vector<Horizontality>& flags) {
    const GridSpacetime& st = m.grid();
    const auto& tips = m.tips.tips;
    CellSet covered(st.cell_count());
    for (const Tip& t : tips) {
        bool holds_horizontal = false;
        for (std::size_t j = 0; j < tips.size(); ++j)
            if (flags[j] == Horizontality::Horizontal && tips[j].cells.is_subset_of(t.cells)) holds_horizontal = true;
        if (!holds_horizontal) covered |= t.cells;
    }
    return st.domain() - covered;
}

// Maximal paths enumerated one by one; a level is Cauchy when every maximal
// path starts at or below it and ends at or above it.
inline std::vector<bool> cauchy_levels(const CausalModel& m, const std::vector<double>& levels) {
    const GridSpacetime& st = m.grid();
    std::vector<bool> has_pred(st.cell_count(), false);
    st.domain().for_each([&](std::size_t i) {
        for (const Step& s : m.stencil.steps[i]) has_pred[s.target] = true;
    });
    std::vector<bool> out(levels.size(), true);
    std::function<void(std::size_t, double)> walk = [&](std::size_t i, double start) {
        if (m.stencil.steps[i].empty()) {
            for (std::size_t k = 0; k < levels.size(); ++k)
                if (levels[k] < start || levels[k] > m.tau[i]) out[k] = false;
            return;
        }
        for (const Step& s : m.stencil.steps[i]) walk(s.target, start);
    };
    st.domain().for_each([&](std::size_t i) {
        if (!has_pred[i]) walk(i, m.tau[i]);
    });
    return out;
}

inline std::optional<CellSet> compactness(const CausalModel& m) {
    const GridSpacetime& st = m.grid();
    std::set<double> lv;
    st.domain().for_each([&](std::size_t i) { lv.insert(m.tau[i]); });
    const auto flags = cauchy_levels(m, {lv.begin(), lv.end()});
    if (std::find(flags.begin(), flags.end(), false) != flags.end()) return std::nullopt;
    const CellSet ends = slice_ends(st);
    CellSet covered(st.cell_count());
    for (const Tip& t : m.tips.tips)
        if (t.cells.intersects(ends)) covered |= t.cells;
    return st.domain() - covered;
}

// ---------------------------------------------------------------------------
// Synopticity
// ---------------------------------------------------------------------------

inline bool synoptic(const std::vector<CellSet>& fut, const CellSet& mask) {
    const Members cells = mask.members();
    for (std::size_t a = 0; a < cells.size(); ++a)
        for (std::size_t b = a + 1; b < cells.size(); ++b) {
            CellSet fa = fut[cells[a]], fb = fut[cells[b]];
            fa.set(cells[a]);
            fb.set(cells[b]);
            if (!(fa & fb & mask).any()) return false;
        }
    return true;
}

// Every maximal synoptic subset of the domain, by subset enumeration.
inline std::set<Members> maximal_synoptic_sets(const CausalModel& m, const std::vector<CellSet>& fut) {
    const GridSpacetime& st = m.grid();
    const Members dom = st.domain().members();
    const std::size_t n = dom.size();
    std::vector<bool> is_syn(std::size_t{1} << n);
    auto mask_of = [&](std::size_t bits) {
        CellSet s(st.cell_count());
        for (std::size_t k = 0; k < n; ++k)
            if (bits >> k & 1) s.set(dom[k]);
        return s;
    };
    for (std::size_t bits = 0; bits < is_syn.size(); ++bits) is_syn[bits] = synoptic(fut, mask_of(bits));
    std::set<Members> out;
    for (std::size_t bits = 1; bits < is_syn.size(); ++bits) {
        if (!is_syn[bits]) continue;
        bool maximal = true;
        for (std::size_t k = 0; k < n && maximal; ++k)
            if (!(bits >> k & 1) && is_syn[bits | std::size_t{1} << k]) maximal = false;
        if (maximal) out.insert(mask_of(bits).members());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Longest paths
// ---------------------------------------------------------------------------

// Every path from p, as a list of (cell, length of the step into it).
inline void each_path(const CausalModel& m, std::size_t p,
                      const std::function<void(const std::vector<std::pair<std::size_t, double>>&)>& visit) {
    std::vector<std::pair<std::size_t, double>> path{{p, 0.0}};
    std::function<void()> rec = [&] {
        visit(path);
        const std::size_t i = path.back().first;
        for (const Step& s : m.stencil.steps[i]) {
            path.push_back({s.target, step_length(m.grid(), i, s)});
            rec();
            path.pop_back();
        }
    };
    rec();
}

// Sums from the far end, the same association as a backward sweep.
inline double sum_back(const std::vector<std::pair<std::size_t, double>>& path, double tail) {
    double v = tail;
    for (std::size_t k = path.size(); k-- > 1;) v = path[k].second + v;
    return v;
}

inline std::optional<double> distance(const CausalModel& m, std::size_t p, std::size_t q) {
    std::optional<double> best;
    if (p == q) return 0.0;
    each_path(m, p, [&](const auto& path) {
        if (path.size() < 2 || path.back().first != q) return;
        double v = path[1].second;
        for (std::size_t k = 2; k < path.size(); ++k) v += path[k].second;
        if (!best || v > *best) best = v;
    });
    return best;
}

inline double d_value(const CausalModel& m, std::size_t p) {
    const GridSpacetime& st = m.grid();
    double best = 0.0;
    each_path(m, p, [&](const auto& path) {
        const std::size_t end = path.back().first;
        if (!generator(st, st.cell(end))) return;
        best = std::max(best, sum_back(path, exit_length(st, m.cones, end)));
    });
    return best;
}

}  // namespace oracle
