#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "horizonlab/cell_set.hpp"
#include "horizonlab/grid.hpp"

namespace horizonlab {

class EmptyStencilError : public HorizonError {
public:
    EmptyStencilError(const std::string& what, Cell at) : HorizonError(what), cell(at) {}
    Cell cell;
};

struct StencilParams {
    int radius = 4;       ///< R: maximal time extent of a single step
    double margin = 0.5;  ///< kappa: slopes keep kappa/R away from the null slopes
    double slope_cap = kDefaultSlopeCap;  ///< cone field clamp, see cone_field()
};

struct Step {
    std::size_t target = 0;
    int dt = 0;
    int dx = 0;
};

/// Per-cell lists of admissible integer steps.
///
/// Timelike stencils keep every sampled sub-point of a step strictly inside the
/// local cone (shrunk by kappa/R on each side); causal stencils accept the closed
/// cone and are used only for the J+ approximation.
struct Stencil {
    StencilParams params;
    bool closed = false;
    std::vector<std::vector<Step>> steps;         ///< outgoing, per cell
    std::vector<std::vector<std::size_t>> preds;  ///< incoming sources, per cell

    std::size_t edge_count() const;
};

/// Nearest cell to p + (k/n) * (dt, dx), ties rounded up. A step (dt, dx) is
/// sampled at k = 0..2dt with n = 2dt.
Cell sample_point(Cell p, int dt, int dx, int k, int n);

Stencil timelike_stencil(const GridSpacetime& st, StencilParams params);
Stencil timelike_stencil(const GridSpacetime& st, const ConeField& cones, StencilParams params);
/// Closed-cone variant (kappa = 0, null slopes admitted).
Stencil causal_stencil(const GridSpacetime& st, const ConeField& cones, int radius);

/// Chronological futures and pasts of every cell (strict: p is never in its own future).
class Reachability {
public:
    Reachability() = default;
    Reachability(const GridSpacetime& st, const Stencil& stencil);

    const CellSet& future_of(std::size_t i) const { return future_[i]; }
    const CellSet& past_of(std::size_t i) const { return past_[i]; }
    bool precedes(std::size_t p, std::size_t q) const { return future_[p].test(q); }
    std::size_t cell_count() const { return future_.size(); }

private:
    std::vector<CellSet> future_;
    std::vector<CellSet> past_;
};

CellSet future_set(const GridSpacetime& st, const Stencil& stencil, Cell p);
CellSet past_set(const GridSpacetime& st, const Stencil& stencil, Cell p);

/// Levels of the foliation after resolving StepDepth against the stencil.
std::vector<double> foliation_levels(const GridSpacetime& st, const Stencil& stencil);

struct CauchyCheck {
    std::vector<double> levels;  ///< sorted distinct tau values
    std::vector<bool> cauchy;    ///< per level
    std::vector<Cell> non_increasing_steps;  ///< sources of steps along which tau does not increase
    bool all_cauchy() const;
};

/// Levels between the latest start and the earliest end of all maximal paths
/// are crossed by every one of them; the remaining levels are not.
CauchyCheck cauchy_check(const GridSpacetime& st, const Stencil& stencil, const std::vector<double>& tau);

// ---------------------------------------------------------------------------
// TIPs
// ---------------------------------------------------------------------------

struct Tip {
    std::vector<std::size_t> generators;  ///< cells whose past-plus-self equals `cells`; first is representative
    CellSet cells;
    bool on_genuine = false;     ///< representative sits on a Genuine capable facet
    bool on_truncation = false;  ///< representative sits on a Truncation capable facet
    std::vector<std::size_t> supersets;  ///< tips strictly containing this one
    std::vector<std::size_t> subsets;    ///< tips strictly contained in this one

    std::size_t representative() const { return generators.front(); }
    /// A curve leaving the window through a Truncation facet continues past it.
    bool open() const { return on_truncation; }
};

/// Deduplicated TIPs of capable boundary cells with the strict-inclusion order.
struct TipTable {
    std::vector<std::size_t> generator_cells;
    std::vector<Tip> tips;

    std::size_t size() const { return tips.size(); }
    /// Ids of the tips containing cell `p`.
    std::vector<std::size_t> through(std::size_t p) const;
    /// Whether tip `a` is a strict subset of tip `b`.
    bool strictly_below(std::size_t a, std::size_t b) const;
};

/// Capable boundary cells: in-domain cells with a +t or +-x boundary facet.
bool is_generator_cell(const GridSpacetime& st, Cell c);

TipTable tip_table(const GridSpacetime& st, const Reachability& reach);

std::vector<std::size_t> tips_through(const GridSpacetime& st, const TipTable& table, Cell p);

/// Text dump: one tip per line with id, generator cell, popcount and the ids
/// of its immediate (Hasse) parents in the domination order.
std::string format_tip_table(const GridSpacetime& st, const TipTable& table);

// ---------------------------------------------------------------------------
// Bundle
// ---------------------------------------------------------------------------

/// Everything the conformally invariant analyses need about one spacetime.
struct CausalModel {
    std::shared_ptr<const GridSpacetime> spacetime;
    ConeField cones;
    Stencil stencil;
    Stencil closed_stencil;
    Reachability reach;
    TipTable tips;
    std::vector<double> tau;

    static CausalModel build(std::shared_ptr<const GridSpacetime> st, StencilParams params = {});

    const GridSpacetime& grid() const { return *spacetime; }
};

/// True iff some generator is reachable from p inside domain minus J+(q),
/// where J+(q) = I+(q) + {q} over the timelike stencil. Requires q in I+(p).
bool escape_curve_exists(const CausalModel& model, Cell p, Cell q);

/// Closed-cone causal future of q, including q.
CellSet causal_future(const GridSpacetime& st, const Stencil& closed, std::size_t q);

}  // namespace horizonlab
