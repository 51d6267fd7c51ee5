#include <algorithm>
#include <cmath>
#include <functional>

#include "horizonlab/model.hpp"

namespace horizonlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

using InsideFn = std::function<bool(int, int)>;
using MetricFn = std::function<Metric(double, double)>;

GridSpacetime fill_grid(GridSpacetime st, const InsideFn& inside, const MetricFn& metric) {
    for (int t = 0; t < st.rows(); ++t)
        for (int x = 0; x < st.cols(); ++x)
            if (inside(t, x)) {
                st.set_domain({t, x}, true);
                st.set_metric({t, x}, metric(st.t_center(t), st.x_center(x)));
            }
    return st;
}

Metric conformal(double w) { return {w, 0.0, -w}; }

FacetTag always(FacetTag tag, Cell, Facet) { return tag; }

}  // namespace

GridSpacetime minkowski_box(int n, double half_height) {
    if (n < 2) throw ParamError("minkowski_box needs resolution >= 2");
    if (!(half_height > 0.0)) throw ParamError("minkowski_box half height must be positive");
    const double d = 2.0 * half_height / n;
    GridSpacetime st =
        fill_grid(GridSpacetime("minkowski_box", n, n, d, -half_height, -half_height, false),
                  [](int, int) { return true; }, [](double, double) { return conformal(1.0); });
    using namespace std::placeholders;
    st.tag_boundary(std::bind(always, FacetTag::Truncation, _1, _2), std::bind(always, FacetTag::Truncation, _1, _2));
    st.set_foliation(FoliationKind::CoordinateTime);
    return st;
}

// ---------------------------------------------------------------------------
// Example 1
// ---------------------------------------------------------------------------

double example1_psi(double u) {
    if (u <= -1.0 || u >= 0.0) return 0.0;
    return std::exp(-1.0 / (u + 1.0)) / (u * u);
}

double example1_phi(double v) {
    if (v <= 0.0) return 0.0;
    if (v >= 1.0) return v;
    const double a = std::exp(-1.0 / v);
    const double b = std::exp(-1.0 / (1.0 - v));
    return v * a / (a + b);
}

double example1_factor(double t, double x) {
    const double u = t + x, v = t - x;  // x is already divided by the edge slope
    // psi blows up at 0 while phi vanishes there, so a zero phi wins.
    auto term = [](double a, double b) {
        const double p = example1_phi(b);
        return p == 0.0 ? 0.0 : example1_psi(a) * p;
    };
    return 1.0 + term(u, v) + term(v, u);
}

GridSpacetime example1(int n, double half_width, double edge_slope) {
    if (n < 4 || n % 2) throw ParamError("example1 needs an even resolution >= 4");
    if (!(half_width >= 1.0)) throw ParamError("example1 half width must be at least 1");
    if (!(edge_slope > 0.0 && edge_slope <= 1.0)) throw ParamError("example1 edge slope must lie in (0, 1]");
    const double d = 2.0 * half_width / n;
    GridSpacetime st = fill_grid(
        GridSpacetime("example1", n, n, d, -half_width, -half_width, false),
        [&](int t, int x) {
            const double tc = -half_width + (t + 0.5) * d, xc = -half_width + (x + 0.5) * d;
            return !(tc + xc / edge_slope > 0.0 && tc - xc / edge_slope > 0.0);
        },
        [&](double t, double x) { return conformal(example1_factor(t, x / edge_slope)); });
    using namespace std::placeholders;
    st.tag_boundary(std::bind(always, FacetTag::Truncation, _1, _2), std::bind(always, FacetTag::Genuine, _1, _2));
    st.set_foliation(FoliationKind::StepDepth);
    return st;
}

// ---------------------------------------------------------------------------
// Kruskal hexagon
// ---------------------------------------------------------------------------

GridSpacetime kruskal_hexagon(int n, const std::string& modification, double triangle, FacetTag null_infinity,
                              double edge_slope) {
    if (n < 4 || n % 2) throw ParamError("kruskal_hexagon needs an even resolution >= 4");
    if (modification != "none" && modification != "add_triangle" && modification != "remove_triangle")
        throw ParamError("unknown hexagon modification: " + modification);
    if (!(triangle > 0.0 && triangle <= 0.5)) throw ParamError("triangle size must lie in (0, 0.5]");
    if (null_infinity == FacetTag::None) throw ParamError("null infinity needs a boundary tag");
    if (!(edge_slope > 0.0 && edge_slope <= 1.0)) throw ParamError("hexagon edge slope must lie in (0, 1]");
    const double d = 2.0 / n;
    // Room above the singularity for the added triangle, kept for every
    // modification so that masks of all variants share one index space.
    const int extra = static_cast<int>(std::ceil(triangle / d - 1e-9));
    const int rows = n + extra;
    const double s = edge_slope;
    const int cols = static_cast<int>(std::ceil(4.0 * s / d - 1e-9));
    const double x0 = -0.5 * cols * d;
    const double a = triangle;

    // The standard hexagon with x scaled by the edge slope.
    auto inside_point = [&](double t, double x) {
        const bool hex = std::abs(x) < s * (2.0 - std::abs(t)) && t > -1.0 && t < 1.0;
        if (modification == "remove_triangle") return hex && !(x + s * t > s * (2.0 - a));
        if (modification == "add_triangle") {
            // Tent on the singularity whose base ends one triangle size left of
            // the corner, so it lies wholly behind the horizon.
            const bool tent = t >= 1.0 && x - s * t > -3.0 * a * s && x + s * t < s * (2.0 - a);
            return hex || tent;
        }
        return hex;
    };
    GridSpacetime st = fill_grid(
        GridSpacetime("kruskal_hexagon", rows, cols, d, -1.0, x0, false),
        [&](int t, int x) { return inside_point(-1.0 + (t + 0.5) * d, x0 + (x + 0.5) * d); },
        [](double, double) { return conformal(1.0); });
    if (modification != "none") st.set_name("kruskal_hexagon_" + modification);

    // Facets on the lines t = +-1 are the singularities; all other boundary
    // facets belong to the null edges.
    auto tag = [&st, null_infinity](Cell c, Facet f) {
        if (f == Facet::PlusT || f == Facet::MinusT) {
            const double tf = st.t_center(c.t) + (f == Facet::PlusT ? 0.5 : -0.5) * st.spacing();
            if (std::abs(std::abs(tf) - 1.0) < 0.25 * st.spacing()) return FacetTag::Genuine;
        }
        return null_infinity;
    };
    st.tag_boundary(tag, tag);
    st.set_foliation(FoliationKind::StepDepth);
    return st;
}

}  // namespace horizonlab
