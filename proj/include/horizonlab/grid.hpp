#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "horizonlab/cell_set.hpp"

namespace horizonlab {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class HorizonError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SignatureError : public HorizonError {
public:
    using HorizonError::HorizonError;
};
class ConeCapError : public HorizonError {
public:
    using HorizonError::HorizonError;
};
class ParamError : public HorizonError {
public:
    using HorizonError::HorizonError;
};
class PrecondError : public HorizonError {
public:
    using HorizonError::HorizonError;
};

// ---------------------------------------------------------------------------
// Cells and facets
// ---------------------------------------------------------------------------

/// Grid cell addressed by (time row, space column).
struct Cell {
    int t = 0;
    int x = 0;
    friend bool operator==(const Cell&, const Cell&) = default;
    friend auto operator<=>(const Cell&, const Cell&) = default;
};

enum class Facet : std::uint8_t { PlusT = 0, MinusT = 1, PlusX = 2, MinusX = 3 };
inline constexpr std::array<Facet, 4> kFacets{Facet::PlusT, Facet::MinusT, Facet::PlusX, Facet::MinusX};

/// None marks an interior facet (both sides in-domain).
enum class FacetTag : std::uint8_t { None = 0, Genuine = 1, Truncation = 2 };

const char* to_string(Facet f);
const char* to_string(FacetTag t);

/// Symmetric metric components in the (t, x) chart, signature (+, -).
struct Metric {
    double tt = 1.0;
    double tx = 0.0;
    double xx = -1.0;

    double apply(double dt, double dx) const { return tt * dt * dt + 2.0 * tx * dt * dx + xx * dx * dx; }
    Metric scaled(double s) const { return {tt * s, tx * s, xx * s}; }
};

enum class FoliationKind : std::uint8_t {
    CoordinateTime,  ///< tau = t row index
    Custom,          ///< explicit per-cell values
    StepDepth,       ///< a/(a+b) from longest step counts to/from the causal extremes
};

const char* to_string(FoliationKind k);

// ---------------------------------------------------------------------------
// GridSpacetime
// ---------------------------------------------------------------------------

/// Finite two-dimensional time-oriented spacetime on a uniform (t, x) grid.
///
/// Row t runs along increasing coordinate time (the future direction); column x
/// runs along space and wraps around when `periodic_x` is set. Immutable once
/// built; every analysis treats it as shared read-only data.
class GridSpacetime {
public:
    GridSpacetime() = default;
    GridSpacetime(std::string name, int nt, int nx, double spacing, double t0, double x0, bool periodic_x);

    const std::string& name() const { return name_; }
    int rows() const { return nt_; }
    int cols() const { return nx_; }
    std::size_t cell_count() const { return static_cast<std::size_t>(nt_) * static_cast<std::size_t>(nx_); }
    double spacing() const { return spacing_; }
    double t_origin() const { return t0_; }
    double x_origin() const { return x0_; }
    bool periodic_x() const { return periodic_; }

    std::size_t index(Cell c) const { return static_cast<std::size_t>(c.t) * nx_ + c.x; }
    Cell cell(std::size_t i) const { return {static_cast<int>(i / nx_), static_cast<int>(i % nx_)}; }
    double t_center(int t) const { return t0_ + (t + 0.5) * spacing_; }
    double x_center(int x) const { return x0_ + (x + 0.5) * spacing_; }

    /// Maps a possibly out-of-range cell to a grid cell (wrapping x when periodic).
    std::optional<Cell> normalize(Cell c) const;
    bool in_domain(Cell c) const;
    bool in_domain(std::size_t i) const { return domain_.test(i); }
    const CellSet& domain() const { return domain_; }
    /// Cells of a surrounding spacetime outside the domain. Step sub-points may
    /// pass through them; paths never stop on them.
    const CellSet& ambient() const { return ambient_; }
    bool passable(std::size_t i) const { return domain_.test(i) || ambient_.test(i); }

    /// Neighbour across a facet, if it is a grid cell.
    std::optional<Cell> neighbor(Cell c, Facet f) const;
    FacetTag facet_tag(Cell c, Facet f) const { return facets_[index(c)][static_cast<int>(f)]; }
    bool has_boundary_facet(Cell c) const;
    bool has_boundary_facet(Cell c, FacetTag tag) const;

    const Metric& metric(Cell c) const { return metric_[index(c)]; }
    const Metric& metric(std::size_t i) const { return metric_[i]; }

    FoliationKind foliation_kind() const { return foliation_kind_; }
    /// Per-cell levels; only meaningful for CoordinateTime and Custom.
    const std::vector<double>& foliation() const { return tau_; }

    /// Non-periodic with Truncation facets on the lateral grid edges.
    bool cauchy_noncompact() const;

    // Mutators used by builders only.
    void set_domain(Cell c, bool v) { domain_.assign(index(c), v); }
    void set_ambient(CellSet cells) { ambient_ = std::move(cells); }
    void set_metric(Cell c, Metric m) { metric_[index(c)] = m; }
    void set_facet_tag(Cell c, Facet f, FacetTag t) { facets_[index(c)][static_cast<int>(f)] = t; }
    void set_foliation(FoliationKind kind, std::vector<double> tau = {});
    void set_name(std::string n) { name_ = std::move(n); }

    /// Tags every boundary facet: grid-edge facets get `edge_tag(c, f)`,
    /// facets facing an out-of-domain grid cell get `hole_tag(c, f)`.
    void tag_boundary(const std::function<FacetTag(Cell, Facet)>& edge_tag,
                      const std::function<FacetTag(Cell, Facet)>& hole_tag);

    /// Multiplies every metric component by a positive per-cell factor.
    GridSpacetime conformally_rescaled(const std::function<double(Cell)>& factor) const;

private:
    std::string name_;
    int nt_ = 0;
    int nx_ = 0;
    double spacing_ = 1.0;
    double t0_ = 0.0;
    double x0_ = 0.0;
    bool periodic_ = false;
    CellSet domain_;
    CellSet ambient_;
    std::vector<std::array<FacetTag, 4>> facets_;
    std::vector<Metric> metric_;
    FoliationKind foliation_kind_ = FoliationKind::CoordinateTime;
    std::vector<double> tau_;
};

// ---------------------------------------------------------------------------
// Cone field
// ---------------------------------------------------------------------------

/// Closed interval of null slopes dx/dt.
struct ConeSlopes {
    double lo = -1.0;
    double hi = 1.0;
};

struct ConeField {
    std::vector<ConeSlopes> slopes;  ///< per cell; out-of-domain cells hold defaults
    const ConeSlopes& at(std::size_t i) const { return slopes[i]; }
};

inline constexpr double kDefaultSlopeCap = 8.0;

/// Null slopes of a single metric cell. Throws SignatureError unless the cell
/// is Lorentzian with (0,1) spacelike, so that t increases along every
/// future-directed timelike vector.
ConeSlopes null_slopes(const Metric& g);

ConeField cone_field(const GridSpacetime& st, double slope_cap = kDefaultSlopeCap);

/// Cells within Chebyshev distance r of `cells` (wrap-aware). Positions off
/// the grid are ignored.
CellSet chebyshev_dilate(const GridSpacetime& st, const CellSet& cells, int r);

/// In-domain cells carrying at least one boundary facet.
CellSet boundary_facet_cells(const GridSpacetime& st);

/// 4-connected components of a cell set (wrap-aware). Returns component id per
/// cell, -1 outside the set, and the number of components via `count`.
std::vector<int> label_components(const GridSpacetime& st, const CellSet& cells, int* count);

}  // namespace horizonlab
