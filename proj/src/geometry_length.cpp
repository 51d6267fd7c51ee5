#include <algorithm>
#include <cmath>
#include <limits>

#include "horizonlab/geometry.hpp"

namespace horizonlab {

namespace {

constexpr double kUnreached = -std::numeric_limits<double>::infinity();

std::vector<std::vector<double>> step_lengths(const CausalModel& model) {
    const GridSpacetime& st = model.grid();
    std::vector<std::vector<double>> out(st.cell_count());
    st.domain().for_each([&](std::size_t i) {
        out[i].reserve(model.stencil.steps[i].size());
        for (const Step& s : model.stencil.steps[i]) out[i].push_back(step_length(st, i, s));
    });
    return out;
}

// Paths end only at generators so that a long path from p always certifies an
// infinite tip through p.
bool is_end(const CausalModel& model, std::size_t i) { return is_generator_cell(model.grid(), model.grid().cell(i)); }

}  // namespace

double step_length(const GridSpacetime& st, std::size_t from, const Step& step) {
    const Cell p = st.cell(from);
    const int n = 2 * step.dt;
    double q = 0.0;
    for (int k = 0; k <= n; ++k) {
        auto c = st.normalize(sample_point(p, step.dt, step.dx, k, n));
        const std::size_t i = c && st.passable(st.index(*c)) ? st.index(*c) : from;
        q += st.metric(i).apply(step.dt, step.dx);
    }
    q /= n + 1;
    return q > 0.0 ? std::sqrt(q) * st.spacing() : 0.0;
}

double exit_length(const GridSpacetime& st, const ConeField& cones, std::size_t cell) {
    const ConeSlopes& s = cones.at(cell);
    const double q = st.metric(cell).apply(1.0, 0.5 * (s.lo + s.hi));
    return q > 0.0 ? 0.5 * std::sqrt(q) * st.spacing() : 0.0;
}

double LengthField::max_d() const {
    double m = 0.0;
    for (double v : d) m = std::max(m, v);
    return m;
}

double LengthField::min_d(const CellSet& over) const {
    double m = std::numeric_limits<double>::infinity();
    over.for_each([&](std::size_t i) { m = std::min(m, d[i]); });
    return m;
}

LengthField lorentzian_distance_field(const CausalModel& model) {
    const GridSpacetime& st = model.grid();
    const auto seg = step_lengths(model);
    const std::size_t n = st.cell_count();
    LengthField f;
    f.d.assign(n, kUnreached);
    f.into.assign(n, 0.0);
    // Steps always climb at least one row, so index order is a topological order.
    for (std::size_t r = n; r-- > 0;) {
        if (!st.in_domain(r)) continue;
        double best = is_end(model, r) ? exit_length(st, model.cones, r) : kUnreached;
        const auto& steps = model.stencil.steps[r];
        for (std::size_t k = 0; k < steps.size(); ++k) best = std::max(best, seg[r][k] + f.d[steps[k].target]);
        f.d[r] = best;
    }
    for (double& v : f.d)
        if (v == kUnreached) v = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!st.in_domain(i)) continue;
        const auto& steps = model.stencil.steps[i];
        for (std::size_t k = 0; k < steps.size(); ++k)
            f.into[steps[k].target] = std::max(f.into[steps[k].target], f.into[i] + seg[i][k]);
    }
    f.ell.reserve(model.tips.size());
    for (const Tip& tip : model.tips.tips) {
        double e = 0.0;
        for (std::size_t g : tip.generators) e = std::max(e, f.into[g] + exit_length(st, model.cones, g));
        f.ell.push_back(e);
    }
    return f;
}

namespace {

// Longest paths from p to every cell; also returns the predecessor of each cell on one such path.
std::vector<double> forward_from(const CausalModel& model, std::size_t p, std::vector<std::size_t>* pred) {
    const GridSpacetime& st = model.grid();
    std::vector<double> dist(st.cell_count(), kUnreached);
    if (pred) pred->assign(st.cell_count(), st.cell_count());
    dist[p] = 0.0;
    for (std::size_t i = p; i < st.cell_count(); ++i) {
        if (dist[i] == kUnreached) continue;
        for (const Step& s : model.stencil.steps[i]) {
            const double v = dist[i] + step_length(st, i, s);
            if (v > dist[s.target]) {
                dist[s.target] = v;
                if (pred) (*pred)[s.target] = i;
            }
        }
    }
    return dist;
}

std::size_t checked_index(const GridSpacetime& st, Cell c) {
    auto n = st.normalize(c);
    if (!n || !st.in_domain(*n)) throw ParamError("cell outside the domain");
    return st.index(*n);
}

}  // namespace

std::optional<double> lorentzian_distance(const CausalModel& model, Cell p, Cell q) {
    const GridSpacetime& st = model.grid();
    const std::size_t a = checked_index(st, p);
    const std::size_t b = checked_index(st, q);
    if (a == b) return 0.0;
    if (b < a) return std::nullopt;
    const auto dist = forward_from(model, a, nullptr);
    if (dist[b] == kUnreached) return std::nullopt;
    return dist[b];
}

std::vector<Cell> longest_path(const CausalModel& model, Cell p, Cell q) {
    const GridSpacetime& st = model.grid();
    const std::size_t a = checked_index(st, p);
    const std::size_t b = checked_index(st, q);
    if (a == b) return {st.cell(a)};
    if (b < a) return {};
    std::vector<std::size_t> pred;
    const auto dist = forward_from(model, a, &pred);
    if (dist[b] == kUnreached) return {};
    std::vector<Cell> out;
    for (std::size_t i = b; i != a; i = pred[i]) out.push_back(st.cell(i));
    out.push_back(st.cell(a));
    std::reverse(out.begin(), out.end());
    return out;
}

std::vector<Cell> longest_path_from(const CausalModel& model, const LengthField& field, Cell p) {
    const GridSpacetime& st = model.grid();
    std::size_t i = checked_index(st, p);
    std::vector<Cell> out{st.cell(i)};
    constexpr double kTol = 1e-12;
    for (;;) {
        const double here = field.d[i];
        if (is_end(model, i) && std::abs(exit_length(st, model.cones, i) - here) <= kTol * std::max(1.0, here)) break;
        std::size_t next = st.cell_count();
        for (const Step& s : model.stencil.steps[i])
            if (std::abs(step_length(st, i, s) + field.d[s.target] - here) <= kTol * std::max(1.0, here)) {
                next = s.target;
                break;
            }
        if (next == st.cell_count()) break;
        i = next;
        out.push_back(st.cell(i));
    }
    return out;
}

double curve_length(const MetricAt& metric, const std::vector<std::array<double, 2>>& samples) {
    double total = 0.0;
    for (std::size_t k = 1; k < samples.size(); ++k) {
        const double dt = samples[k][0] - samples[k - 1][0];
        const double dx = samples[k][1] - samples[k - 1][1];
        const Metric g = metric(0.5 * (samples[k][0] + samples[k - 1][0]), 0.5 * (samples[k][1] + samples[k - 1][1]));
        const double q = g.apply(dt, dx);
        if (!(q > 0.0) || !(dt > 0.0))
            throw NonTimelikeSegment("segment " + std::to_string(k - 1) + " is not future timelike");
        total += std::sqrt(q);
    }
    return total;
}

double curve_length(const GridSpacetime& st, const std::vector<std::array<double, 2>>& samples) {
    return curve_length(
        [&](double t, double x) {
            const Cell c{static_cast<int>(std::floor((t - st.t_origin()) / st.spacing())),
                         static_cast<int>(std::floor((x - st.x_origin()) / st.spacing()))};
            auto n = st.normalize(c);
            if (!n || !st.passable(st.index(*n))) throw ParamError("curve sample outside the domain");
            return st.metric(*n);
        },
        samples);
}

double domain_diameter(const GridSpacetime& st) {
    int t_lo = st.rows(), t_hi = -1, x_lo = st.cols(), x_hi = -1;
    st.domain().for_each([&](std::size_t i) {
        const Cell c = st.cell(i);
        t_lo = std::min(t_lo, c.t);
        t_hi = std::max(t_hi, c.t);
        x_lo = std::min(x_lo, c.x);
        x_hi = std::max(x_hi, c.x);
    });
    if (t_hi < 0) return 0.0;
    const double ht = (t_hi - t_lo + 1) * st.spacing();
    const double hx = (x_hi - x_lo + 1) * st.spacing();
    return std::hypot(ht, hx);
}

}  // namespace horizonlab
