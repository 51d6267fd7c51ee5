#include <algorithm>
#include <cmath>
#include <random>

#include "horizonlab/model.hpp"

namespace horizonlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

FacetTag truncation(Cell, Facet) { return FacetTag::Truncation; }
FacetTag genuine(Cell, Facet) { return FacetTag::Genuine; }

void keep_cells(GridSpacetime& st, const CellSet& keep) {
    for (std::size_t i = 0; i < st.cell_count(); ++i)
        if (st.in_domain(i) && !keep.test(i)) st.set_domain(st.cell(i), false);
}

}  // namespace

// ---------------------------------------------------------------------------
// Cone ballet
// ---------------------------------------------------------------------------

double cone_ballet_f(double x, double width) { return 1.0 + std::tanh(x / width); }

double cone_ballet_phi(double x, bool integrable) {
    return integrable ? 1.0 / ((1.0 + x * x) * (1.0 + x * x)) : 1.0;
}

Metric cone_ballet_metric(double x, double width, bool integrable) {
    const double f = cone_ballet_f(x, width);
    const double p = cone_ballet_phi(x, integrable);
    return {p * (1.0 - f), p * f, -p * (1.0 + f)};
}

GridSpacetime cone_ballet(int n, double width, const std::string& phi) {
    if (n < 8) throw ParamError("cone_ballet needs resolution >= 8");
    if (!(width > 0.0)) throw ParamError("cone_ballet width must be positive");
    if (phi != "integrable" && phi != "unit") throw ParamError("cone_ballet phi must be 'integrable' or 'unit'");
    const bool integrable = phi == "integrable";
    const double height = 6.0, x_lo = -4.5, x_hi = 3.0, apex_x = 2.0;
    const double d = height / n;
    const int cols = static_cast<int>(std::lround((x_hi - x_lo) / d));
    GridSpacetime st("cone_ballet", n, cols, d, 0.0, x_lo, false);
    for (int t = 0; t < n; ++t)
        for (int x = 0; x < cols; ++x) {
            st.set_domain({t, x}, true);
            st.set_metric({t, x}, cone_ballet_metric(st.x_center(x), width, integrable));
        }
    st.tag_boundary(truncation, truncation);
    const Cell apex{n - 1, static_cast<int>((apex_x - x_lo) / d)};

    // The window is the past of one apex cell, cut out of the full rectangle.
    // The rest of the rectangle stays as ambient so that steps along the
    // window's edge keep the sub-points they had before the cut.
    const Stencil s = timelike_stencil(st, StencilParams{});
    CellSet keep = past_set(st, s, apex);
    keep.set(st.index(apex));
    st.set_ambient(st.domain() - keep);
    keep_cells(st, keep);
    st.tag_boundary(truncation, truncation);
    st.set_foliation(FoliationKind::CoordinateTime);
    return st;
}

// ---------------------------------------------------------------------------
// de Sitter strip
// ---------------------------------------------------------------------------

GridSpacetime de_sitter_strip(int n, double eps) {
    if (n < 4) throw ParamError("de_sitter_strip needs resolution >= 4");
    if (!(eps > 0.0 && eps < 0.5)) throw ParamError("de_sitter_strip eps must lie in (0, 0.5)");
    const double t_lo = -0.5 * kPi + eps;
    const double d = (kPi - 2.0 * eps) / n;
    const int cols = std::max(4, static_cast<int>(std::lround(2.0 * kPi / d)));
    GridSpacetime st("de_sitter_strip", n, cols, d, t_lo, 0.0, true);
    for (int t = 0; t < n; ++t) {
        const double c = std::cos(st.t_center(t));
        const double w = 1.0 / (c * c);
        for (int x = 0; x < cols; ++x) {
            st.set_domain({t, x}, true);
            st.set_metric({t, x}, {w, 0.0, -w});
        }
    }
    st.tag_boundary(truncation, truncation);
    st.set_foliation(FoliationKind::CoordinateTime);
    return st;
}

// ---------------------------------------------------------------------------
// Crunch with a bump
// ---------------------------------------------------------------------------

GridSpacetime crunch_bump(int n) {
    if (n < 8) throw ParamError("crunch_bump needs resolution >= 8");
    const double height = 1.5, half_width = 1.5, bump = 0.6, crunch = 1.0;
    const double d = height / n;
    GridSpacetime st("crunch_bump", n, 2 * n, d, 0.0, -half_width, false);
    for (int t = 0; t < n; ++t)
        for (int x = 0; x < 2 * n; ++x)
            if (st.t_center(t) < crunch || std::abs(st.x_center(x)) < bump) {
                st.set_domain({t, x}, true);
                st.set_metric({t, x}, Metric{});
            }
    // The bottom slice and the whole upper boundary are singular; the sides are window edges.
    st.tag_boundary(
        [](Cell, Facet f) {
            return f == Facet::PlusX || f == Facet::MinusX ? FacetTag::Truncation : FacetTag::Genuine;
        },
        genuine);
    st.set_foliation(FoliationKind::StepDepth);
    return st;
}

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

GridSpacetime random_spacetime(int n, std::uint64_t seed, double f_min, double f_max, double tilt, int holes) {
    if (n < 3) throw ParamError("random spacetime needs resolution >= 3");
    if (!(f_min > 0.0 && f_max >= f_min)) throw ParamError("random conformal range must satisfy 0 < f_min <= f_max");
    if (!(tilt >= 0.0 && tilt < 0.9)) throw ParamError("random tilt must lie in [0, 0.9)");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

    for (int attempt = 0;; ++attempt) {
        GridSpacetime st("random", n, n, 1.0 / n, 0.0, 0.0, false);
        for (int t = 0; t < n; ++t)
            for (int x = 0; x < n; ++x) {
                const double w = f_min + (f_max - f_min) * unit(rng);
                const double b = tilt * (2.0 * unit(rng) - 1.0);
                st.set_domain({t, x}, true);
                st.set_metric({t, x}, Metric{1.0 - b * b, b, -1.0}.scaled(w));
            }
        const int count = holes >= 0 ? holes : pick(0, std::max(1, n / 4));
        for (int h = 0; h < count; ++h) {
            const int t0 = pick(0, n - 1), x0 = pick(0, n - 1);
            const int size = pick(0, std::max(0, n / 5));
            const bool wedge = unit(rng) < 0.5;
            for (int t = 0; t < n; ++t)
                for (int x = 0; x < n; ++x) {
                    const int dt = t - t0, dx = std::abs(x - x0);
                    const bool hit = wedge ? (dt >= 0 && dt <= size + 1 && dx <= dt)
                                           : (dt >= 0 && dt <= size && dx <= size);
                    if (hit) st.set_domain({t, x}, false);
                }
        }
        int components = 0;
        const auto label = label_components(st, st.domain(), &components);
        if (components == 0) continue;
        std::vector<std::size_t> sizes(components, 0);
        for (int l : label)
            if (l >= 0) ++sizes[l];
        const int biggest = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
        for (std::size_t i = 0; i < st.cell_count(); ++i)
            if (label[i] >= 0 && label[i] != biggest) st.set_domain(st.cell(i), false);

        const FacetTag left = unit(rng) < 0.5 ? FacetTag::Genuine : FacetTag::Truncation;
        const FacetTag right = unit(rng) < 0.5 ? FacetTag::Genuine : FacetTag::Truncation;
        st.tag_boundary(
            [&](Cell, Facet f) {
                if (f == Facet::MinusX) return left;
                if (f == Facet::PlusX) return right;
                return FacetTag::Truncation;
            },
            genuine);
        st.set_foliation(FoliationKind::StepDepth);
        if (validate(st).ok()) return st;
        if (attempt >= 64) throw ParamError("no valid random spacetime after 64 draws");
    }
}

}  // namespace horizonlab
