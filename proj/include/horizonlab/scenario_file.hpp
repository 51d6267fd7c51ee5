#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <string>

#include "horizonlab/causal.hpp"
#include "horizonlab/model.hpp"

namespace horizonlab {

/// Parsed scenario file. Grammar (one statement per line):
///
///   line     := blank | comment | section | pair
///   comment  := '#' anything
///   section  := '[' ('scenario' | 'stencil' | 'analysis') ']'
///   pair     := key '=' value        (surrounding spaces trimmed, '#' starts a comment)
///
/// [scenario] takes `name` (a catalog name or "custom"), `resolution`, `seed`,
/// and any builder parameter. A custom scenario reads `metric_csv`, a path
/// relative to the file, plus `spacing`, `t0`, `x0`, `periodic` and the facet
/// tags `edge_t`, `edge_x` and `holes` (genuine | truncation).
/// [stencil] takes `radius`, `margin` and `slope_cap`. [analysis] is kept as
/// free-form text for the command that runs it.
struct ScenarioFile {
    std::string name = "minkowski_box";
    ScenarioParams params;
    std::map<std::string, std::string> custom;  ///< custom-metric keys
    StencilParams stencil;
    std::map<std::string, std::string> analysis;
    std::filesystem::path base_dir;             ///< for relative paths

    /// Builds the spacetime (catalog or custom).
    GridSpacetime build() const;
};

ScenarioFile parse_scenario(std::istream& in, const std::filesystem::path& base_dir = {});
ScenarioFile load_scenario(const std::filesystem::path& path);

/// Metric CSV: one row per t index; each row holds g_tt, g_tx, g_xx for every
/// cell in x order. A cell whose three entries are all 0 lies outside the
/// domain. Facet tags default to truncation on the grid edges and genuine on
/// holes; tau is the row index.
GridSpacetime metric_from_csv(std::istream& in, const std::string& name, double spacing, double t0, double x0,
                              bool periodic, FacetTag edge_t = FacetTag::Truncation,
                              FacetTag edge_x = FacetTag::Truncation, FacetTag holes = FacetTag::Genuine);

}  // namespace horizonlab
