#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "horizonlab/horizons.hpp"

namespace horizonlab {

class NonTimelikeSegment : public HorizonError {
public:
    using HorizonError::HorizonError;
};
class FoliationError : public HorizonError {
public:
    using HorizonError::HorizonError;
};

// ---------------------------------------------------------------------------
// Lengths
// ---------------------------------------------------------------------------

/// Proper length of a stencil step: the metric is averaged over the step's
/// sub-points and applied to (dt, dx) * spacing.
double step_length(const GridSpacetime& st, std::size_t from, const Step& step);

/// Proper time from the centre of a cell to its edge along the cone axis.
/// Paths that end in a cell are credited with this exit segment.
double exit_length(const GridSpacetime& st, const ConeField& cones, std::size_t cell);

struct LengthField {
    std::vector<double> d;     ///< per cell: longest path from the cell to a generator, exit segment included (0 if none is reachable)
    std::vector<double> into;  ///< per cell: longest path ending at the cell
    std::vector<double> ell;   ///< per tip: longest path ending at one of its generators, exit included
    double max_d() const;
    double min_d(const CellSet& over) const;
};

/// One backward and one forward longest-path sweep in row order. Paths end at
/// generators, where the exit segment is added.
LengthField lorentzian_distance_field(const CausalModel& model);

/// Longest path from p to q without exit segments; nullopt unless q == p or q
/// lies in the chronological future of p.
std::optional<double> lorentzian_distance(const CausalModel& model, Cell p, Cell q);

/// Cells of a longest path from p to q (empty when q is unreachable).
std::vector<Cell> longest_path(const CausalModel& model, Cell p, Cell q);

/// Cells of a longest path from p to any end cell, as used by d(p).
std::vector<Cell> longest_path_from(const CausalModel& model, const LengthField& field, Cell p);

/// Sum of sqrt(g(dc, dc)) over a polyline of (t, x) points, the metric taken
/// at each segment midpoint. Throws NonTimelikeSegment on a segment that is
/// not strictly timelike.
using MetricAt = std::function<Metric(double t, double x)>;
double curve_length(const MetricAt& metric, const std::vector<std::array<double, 2>>& samples);
/// Grid version: the midpoint's cell supplies the metric (ParamError off the grid or the domain).
double curve_length(const GridSpacetime& st, const std::vector<std::array<double, 2>>& samples);

/// Euclidean coordinate diagonal of the domain's bounding box.
double domain_diameter(const GridSpacetime& st);

// ---------------------------------------------------------------------------
// Black holes and visibility
// ---------------------------------------------------------------------------

/// BH^{h, lambda} = {p : d(p) < lambda}.
RegionMask black_hole_mask(const CausalModel& model, const LengthField& field, double lambda);

/// Every cell outside BH starts a longest path of length >= lambda; the path
/// is rebuilt and summed rather than read off d.
bool strong_black_hole_check(const CausalModel& model, const LengthField& field, double lambda);

/// d statistics for one scenario over several resolutions or window sizes.
struct GrowthRow {
    int resolution = 0;
    double max_d = 0.0;
    double min_d = 0.0;
    std::size_t domain_cells = 0;
    std::size_t black_hole_cells = 0;
    std::vector<double> probes;  ///< d at the cells containing the probe points (NaN off the domain)
};

struct GrowthReport {
    double lambda = 0.0;
    std::vector<GrowthRow> rows;
    /// Probes whose d never decreases along the rows.
    std::vector<bool> monotone;
};

GrowthReport black_hole_growth(const std::function<GridSpacetime(int)>& build, const std::vector<int>& resolutions,
                               double lambda, const std::vector<std::array<double, 2>>& probes = {},
                               StencilParams params = {});

/// Tip is infinite iff ell >= lambda.
std::vector<bool> infinite_tip_flags(const CausalModel& model, const LengthField& field, double lambda);

struct VisibilityMasks {
    RegionMask future;  ///< V+: no tip through p contains an infinite tip
    RegionMask past;    ///< V-: no tip through p lies inside an infinite tip
};

VisibilityMasks visibility_masks(const CausalModel& model, const std::vector<bool>& infinite);

// ---------------------------------------------------------------------------
// Censorship
// ---------------------------------------------------------------------------

/// Singular tip: representative on a Genuine facet and ell < lambda_sing.
std::vector<bool> singular_tip_flags(const CausalModel& model, const LengthField& field, double lambda_sing);

struct Cc4Verdict {
    bool holds = true;
    std::optional<std::size_t> infinite_tip;  ///< witness pair when violated
    std::optional<std::size_t> singular_tip;
};

/// Width in cells of a staircase drawn at the discrete null slope.
inline constexpr int kNullBand = 2;

/// s is inside j up to a band: every cell of s outside j lies within Chebyshev
/// distance `band` of j. Band 0 is plain inclusion.
bool contained_within(const GridSpacetime& st, const CellSet& s, const CellSet& j, int band);

/// No infinite tip contains a singular tip (up to `band`).
Cc4Verdict cc4_check(const CausalModel& model, const std::vector<bool>& infinite, const std::vector<bool>& singular,
                     int band = 0);

struct SingularTipEntry {
    std::size_t tip = 0;
    Cell generator;
    double ell = 0.0;
    bool naked = false;                     ///< inside some causal future null infinity tip, up to the band
    bool strictly_naked = false;            ///< the same with plain inclusion
    std::optional<std::size_t> witness;     ///< causal future null infinity tip missing the fewest cells
    std::size_t missing = 0;                ///< cells of the tip outside the witness
    std::size_t cells_in_event_set = 0;
    std::size_t cells = 0;
};

struct CensorshipReport {
    double lambda = 0.0;
    double lambda_sing = 0.0;
    int band = 0;
    Cc4Verdict cc4;
    std::vector<SingularTipEntry> singular;
    bool any_naked() const;
};

/// Negative lambda or lambda_sing select 10 and 0.5 times the domain diameter.
CensorshipReport censorship_report(const CausalModel& model, double lambda = -1.0, double lambda_sing = -1.0,
                                   int band = kNullBand, HorizontalityParams hp = {});

// ---------------------------------------------------------------------------
// Conformal recipes
// ---------------------------------------------------------------------------

struct ConformalRecipe {
    std::string kind;       ///< "bounded" or "complete"
    double parameter = 0;   ///< E or lambda
    double scale = 1;       ///< overall constant folded into the factor
    std::vector<double> levels;  ///< distinct foliation levels
    std::vector<double> factor;  ///< w per level
    std::vector<double> fhat;    ///< per level: max |d log(scale) / d tau| over steps leaving the level
    std::vector<double> dlog;    ///< per level: d log(a) / d tau of the recipe
    bool inequality_holds = true;  ///< dlog >= max(0, fhat) on every level (complete recipe)
    std::vector<double> cell_factor;  ///< w per cell (1 outside the domain)

    GridSpacetime apply(const GridSpacetime& st) const;
};

/// Factor under which every path is shorter than E (certified per step).
ConformalRecipe bounded_length_factor(const CausalModel& model, double E);

/// Factor growing like exp(int max(0, fhat)) with a blow-up at the last level,
/// scaled so that every cell has d >= lambda after the transform.
ConformalRecipe completeness_factor(const CausalModel& model, double lambda);

}  // namespace horizonlab
