#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "horizonlab/causal.hpp"
#include "horizonlab/grid.hpp"

namespace horizonlab {

/// Free-form scenario parameters. Unknown keys are rejected by the builders.
struct ScenarioParams {
    int resolution = 48;  ///< number of t rows covering the scenario's reference time span
    std::uint64_t seed = 0;
    std::map<std::string, std::string> values;

    double number(const std::string& key, double fallback) const;
    int integer(const std::string& key, int fallback) const;
    std::string text(const std::string& key, const std::string& fallback) const;
    ScenarioParams& set(const std::string& key, const std::string& value);
    ScenarioParams& set(const std::string& key, double value);
};

const std::vector<std::string>& scenario_names();

/// Builds a catalog spacetime. Throws ParamError on unknown names or keys and
/// on out-of-range values. The result passes validate() with default stencil
/// parameters.
GridSpacetime build_scenario(const std::string& name, const ScenarioParams& params);

// Individual builders (also reachable through build_scenario).
GridSpacetime minkowski_box(int n, double half_height = 1.0);
/// Slope of the extremal steps of the default stencil (R = 4, kappa = 0.5).
/// Edges meant to be null are drawn at this slope: a slope-1 staircase is
/// spacelike as seen by a strictly timelike stencil.
inline constexpr double kDiscreteNullSlope = 0.75;

GridSpacetime example1(int n, double half_width = 1.0, double edge_slope = kDiscreteNullSlope);
GridSpacetime kruskal_hexagon(int n, const std::string& modification = "none", double triangle = 0.25,
                              FacetTag null_infinity = FacetTag::Truncation,
                              double edge_slope = kDiscreteNullSlope);
/// phi: "integrable" (1/(1+x^2)^2, bounded slices) or "unit" (phi = 1).
GridSpacetime cone_ballet(int n, double width = 1.0, const std::string& phi = "integrable");
GridSpacetime de_sitter_strip(int n, double eps = 0.1);
GridSpacetime crunch_bump(int n);
GridSpacetime random_spacetime(int n, std::uint64_t seed, double f_min = 0.5, double f_max = 2.0,
                               double tilt = 0.3, int holes = -1);

/// Example-1 profile functions (exposed for the curve-length studies). The
/// factor takes x in units where the wedge edges are the lines x = +-t.
double example1_psi(double u);
double example1_phi(double v);
double example1_factor(double t, double x);

/// Cone-ballet profile: f rises from 0 to 2 through 1 at x = 0.
double cone_ballet_f(double x, double width = 1.0);
double cone_ballet_phi(double x, bool integrable = true);
Metric cone_ballet_metric(double x, double width = 1.0, bool integrable = true);

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

struct Violation {
    Cell cell;
    std::string rule;
};

struct ValidationReport {
    std::vector<Violation> violations;
    std::vector<double> levels;
    std::vector<bool> cauchy;  ///< per level, crossed by every maximal timelike path
    bool ok() const { return violations.empty(); }
    std::vector<double> non_cauchy_levels() const;
};

ValidationReport validate(const GridSpacetime& st, StencilParams params = {}, double slope_cap = kDefaultSlopeCap);

/// Shares a spacetime with the analyses after a successful validation.
std::shared_ptr<const GridSpacetime> share(GridSpacetime st);

}  // namespace horizonlab
