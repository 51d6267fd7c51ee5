#include <algorithm>
#include <cmath>
#include <memory>

#include "horizonlab/geometry.hpp"

namespace horizonlab {

namespace {

// Foliation levels with tau rescaled to [0, 1] and each domain cell's level index.
struct Levels {
    std::vector<double> values;
    std::vector<double> unit;
    std::vector<int> of_cell;  // -1 outside the domain
};

Levels checked_levels(const CausalModel& model) {
    const GridSpacetime& st = model.grid();
    const CauchyCheck cc = cauchy_check(model);
    if (!cc.non_increasing_steps.empty() || !cc.all_cauchy())
        throw FoliationError("foliation of '" + st.name() + "' is not a Cauchy time function");
    if (cc.levels.size() < 2) throw FoliationError("foliation of '" + st.name() + "' has a single level");
    Levels lv;
    lv.values = cc.levels;
    const double lo = lv.values.front();
    const double span = lv.values.back() - lo;
    for (double v : lv.values) lv.unit.push_back((v - lo) / span);
    lv.of_cell.assign(st.cell_count(), -1);
    st.domain().for_each([&](std::size_t i) {
        const auto it = std::lower_bound(lv.values.begin(), lv.values.end(), model.tau[i] - 1e-12);
        lv.of_cell[i] = static_cast<int>(it - lv.values.begin());
    });
    return lv;
}

double unit_tau(const Levels& lv, std::size_t i) { return lv.unit[static_cast<std::size_t>(lv.of_cell[i])]; }

template <typename F>
void for_each_sample(const GridSpacetime& st, std::size_t from, const Step& s, F&& f) {
    const int n = 2 * s.dt;
    for (int k = 0; k <= n; ++k) {
        auto c = st.normalize(sample_point(st.cell(from), s.dt, s.dx, k, n));
        f(c && st.passable(st.index(*c)) ? st.index(*c) : from);
    }
}

void spread_to_cells(const GridSpacetime& st, const Levels& lv, ConformalRecipe& r, double ambient) {
    r.cell_factor.assign(st.cell_count(), 1.0);
    for (std::size_t i = 0; i < st.cell_count(); ++i) {
        if (st.in_domain(i))
            r.cell_factor[i] = r.factor[static_cast<std::size_t>(lv.of_cell[i])];
        else if (st.passable(i))
            r.cell_factor[i] = ambient;
    }
}

}  // namespace

GridSpacetime ConformalRecipe::apply(const GridSpacetime& st) const {
    if (cell_factor.size() != st.cell_count()) throw ParamError("recipe was built for a different grid");
    return st.conformally_rescaled([&](Cell c) { return cell_factor[st.index(c)]; });
}

// A step s from level a to level b with positive-part quadratic form q gets
// sigma_s^2 = q / (tau_b - tau_a)^2. Taking w(tau) <= (E/2)^2 / sigma^2 for
// every step sampling that level makes each step at most (E/2) * dtau long,
// so a path collects at most E/2 from its steps; exit segments are capped at
// E/2 the same way.
ConformalRecipe bounded_length_factor(const CausalModel& model, double E) {
    if (!(E > 0.0)) throw ParamError("E must be positive");
    const GridSpacetime& st = model.grid();
    const Levels lv = checked_levels(model);
    const double half = 0.5 * E * (1.0 - 1e-9);
    std::vector<double> worst(lv.values.size(), 0.0);
    std::vector<double> worst_cell(st.cell_count(), 0.0);
    st.domain().for_each([&](std::size_t i) {
        for (const Step& s : model.stencil.steps[i]) {
            double q = 0.0;
            for_each_sample(st, i, s, [&](std::size_t c) { q += std::max(0.0, st.metric(c).apply(s.dt, s.dx)); });
            q *= st.spacing() * st.spacing() / (2 * s.dt + 1);
            const double dtau = unit_tau(lv, s.target) - unit_tau(lv, i);
            const double sigma2 = q / (dtau * dtau);
            for_each_sample(st, i, s, [&](std::size_t c) {
                worst_cell[c] = std::max(worst_cell[c], sigma2);
                if (st.in_domain(c)) {
                    auto& w = worst[static_cast<std::size_t>(lv.of_cell[c])];
                    w = std::max(w, sigma2);
                }
            });
        }
        if (is_generator_cell(st, st.cell(i))) {
            const double e = exit_length(st, model.cones, i);
            auto& w = worst[static_cast<std::size_t>(lv.of_cell[i])];
            w = std::max(w, e * e);
        }
    });
    ConformalRecipe r;
    r.kind = "bounded";
    r.parameter = E;
    r.levels = lv.values;
    double lowest = 1.0;
    for (double m : worst) {
        r.factor.push_back(m > 0.0 ? half * half / m : 1.0);
        lowest = std::min(lowest, r.factor.back());
    }
    spread_to_cells(st, lv, r, lowest);
    for (std::size_t i = 0; i < st.cell_count(); ++i)
        if (!st.in_domain(i) && st.passable(i) && worst_cell[i] > 0.0)
            r.cell_factor[i] = std::min(r.cell_factor[i], half * half / worst_cell[i]);
    return r;
}

// w(tau) = A(tau) * (c / (1 - tau + eps))^2 with log A = int max(0, fhat). A
// undoes any shrinking of the metric along the foliation; the second factor
// diverges just past the last level, where the window's last half cell stands
// in for the divergent end of a complete curve. Lengths scale linearly in c,
// so c is read off one distance sweep.
ConformalRecipe completeness_factor(const CausalModel& model, double lambda) {
    if (!(lambda > 0.0)) throw ParamError("lambda must be positive");
    const GridSpacetime& st = model.grid();
    const Levels lv = checked_levels(model);
    const std::size_t L = lv.values.size();
    auto log_scale = [&](std::size_t i) {
        const Metric& g = st.metric(i);
        return 0.5 * std::log(g.tx * g.tx - g.tt * g.xx);
    };
    ConformalRecipe r;
    r.kind = "complete";
    r.parameter = lambda;
    r.levels = lv.values;
    r.fhat.assign(L, 0.0);
    st.domain().for_each([&](std::size_t i) {
        auto& f = r.fhat[static_cast<std::size_t>(lv.of_cell[i])];
        for (const Step& s : model.stencil.steps[i]) {
            const double dtau = unit_tau(lv, s.target) - unit_tau(lv, i);
            f = std::max(f, std::abs(log_scale(s.target) - log_scale(i)) / dtau);
        }
    });
    const double eps = 0.5 / static_cast<double>(L - 1);
    std::vector<double> log_w(L);
    double log_a = 0.0;
    for (std::size_t k = 0; k < L; ++k) {
        if (k > 0) log_a += std::max(0.0, r.fhat[k - 1]) * (lv.unit[k] - lv.unit[k - 1]);
        log_w[k] = log_a - 2.0 * std::log(1.0 - lv.unit[k] + eps);
    }
    r.dlog.assign(L, 0.0);
    for (std::size_t k = 0; k + 1 < L; ++k) {
        r.dlog[k] = (log_w[k + 1] - log_w[k]) / (lv.unit[k + 1] - lv.unit[k]);
        if (r.dlog[k] < std::max(0.0, r.fhat[k]) * (1.0 - 1e-12)) r.inequality_holds = false;
    }
    r.dlog[L - 1] = r.dlog[L - 2];
    // Normalise so that the smallest factor is 1 before fitting c.
    const double base = *std::min_element(log_w.begin(), log_w.end());
    for (double v : log_w) r.factor.push_back(std::exp(v - base));
    spread_to_cells(st, lv, r, 1.0);

    CausalModel scaled = model;
    scaled.spacetime = std::make_shared<const GridSpacetime>(r.apply(st));
    const LengthField field = lorentzian_distance_field(scaled);
    const double shortest = field.min_d(st.domain());
    if (!(shortest > 0.0)) throw FoliationError("some cell of '" + st.name() + "' reaches no generator");
    r.scale = std::max(1.0, lambda / shortest * (1.0 + 1e-9));
    const double c2 = r.scale * r.scale;
    for (double& w : r.factor) w *= c2;
    for (std::size_t i = 0; i < st.cell_count(); ++i)
        if (st.passable(i)) r.cell_factor[i] *= c2;
    return r;
}

}  // namespace horizonlab
