#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "horizonlab/causal.hpp"

namespace horizonlab {

class NonCauchyFoliation : public HorizonError {
public:
    using HorizonError::HorizonError;
};
class SizeError : public HorizonError {
public:
    using HorizonError::HorizonError;
};

/// Classification output: members plus the horizon cells (members with a
/// 4-neighbour in the domain but outside the mask).
struct RegionMask {
    std::string label;
    CellSet members;
    CellSet boundary;
};

RegionMask make_region(const GridSpacetime& st, CellSet members, std::string label);

// ---------------------------------------------------------------------------
// Shielded sets
// ---------------------------------------------------------------------------

enum class Convention : std::uint8_t {
    ProofReading,    ///< non-dominated: no strict superset; non-dominant: no strict subset
    LiteralReading,  ///< the two words swapped
};

const char* to_string(Convention c);

struct ShieldedMasks {
    RegionMask lower;  ///< L
    RegionMask upper;  ///< U
};

/// Open tips count as both dominated and dominant: their curves leave the
/// window and continue to a strictly larger past.
bool tip_dominated(const Tip& tip, Convention conv);
bool tip_dominant(const Tip& tip, Convention conv);

ShieldedMasks shielded_masks(const CausalModel& model, Convention conv = Convention::ProofReading);

/// Surrogate for the naive future null infinity: ids of dominated tips.
std::vector<std::size_t> naive_null_infinity(const TipTable& table, Convention conv = Convention::ProofReading);

struct Theorem1Audit {
    bool upper_matches = false;  ///< U == domain minus the union of the surrogate tips
    bool lower_equals_upper = false;
    std::optional<Cell> witness;           ///< a cell of U that is not in L
    std::optional<std::size_t> witness_tip;  ///< tip through the witness that dominates a surrogate tip
    bool passed() const { return upper_matches && lower_equals_upper; }
};

Theorem1Audit theorem1_audit(const CausalModel& model, Convention conv = Convention::ProofReading);

// ---------------------------------------------------------------------------
// Horizontality and the event set
// ---------------------------------------------------------------------------

struct HorizontalityParams {
    int window = 1;     ///< m: Chebyshev radius of a window
    /// Extra distance between a window and the complement of its tip; negative
    /// selects 2R - 1, the size of the extremal stencil step (R, R - 1).
    int clearance = -1;
};

enum class Horizontality : std::uint8_t { Horizontal, NonHorizontal, Indeterminate };

const char* to_string(Horizontality h);

std::vector<Horizontality> horizontal_tips(const CausalModel& model, HorizontalityParams params = {});

struct EventResult {
    RegionMask mask;                       ///< E
    std::vector<std::size_t> causal_jplus;  ///< tips containing no horizontal tip
};

EventResult event_mask(const CausalModel& model, const std::vector<Horizontality>& flags);
EventResult event_mask(const CausalModel& model, HorizontalityParams params = {});

// ---------------------------------------------------------------------------
// Compactness
// ---------------------------------------------------------------------------

CauchyCheck cauchy_check(const CausalModel& model);

/// A tip is compact when none of its cells carries a future or lateral
/// Truncation facet or sits on a timelike Genuine wall (a lateral Genuine
/// facet repeated on the rows above and below). Throws NonCauchyFoliation when
/// the foliation fails.
std::vector<bool> compact_tips(const CausalModel& model);
RegionMask compactness_mask(const CausalModel& model);

// ---------------------------------------------------------------------------
// Synopticity
// ---------------------------------------------------------------------------

/// Exact check: a finite set is synoptic iff it has a greatest element under
/// the reflexive chronological order.
bool is_synoptic(const CausalModel& model, const CellSet& mask);

/// Pairwise reference implementation of the definition.
bool is_synoptic_pairwise(const CausalModel& model, const CellSet& mask);

enum class SynopticMode : std::uint8_t { Greedy, Exact };

inline constexpr std::size_t kExactSynopticCells = 30;

struct SynopticOptions {
    SynopticMode mode = SynopticMode::Greedy;
    std::uint64_t seed = 0;
    int restarts = 4;
};

/// Greedy: grows the seed tip by single cells while synopticity holds and keeps
/// the largest result over the restarts. Exact: returns every maximal synoptic
/// set containing the seed tip by subset enumeration (domain <= 30 cells).
std::vector<RegionMask> maximal_synoptic(const CausalModel& model, std::size_t seed_tip, SynopticOptions opts = {});

struct SynopticityRegion {
    RegionMask region;   ///< domain minus the closure of a maximal synoptic mask
    CellSet horizon;     ///< region cells adjacent to that closure
};

SynopticityRegion synopticity_region(const GridSpacetime& st, const CellSet& maximal);

// ---------------------------------------------------------------------------
// Audits
// ---------------------------------------------------------------------------

struct InclusionVerdict {
    std::string name;  ///< e.g. "L<=U"
    bool holds = true;
    std::optional<Cell> witness;
};

struct HierarchyReport {
    ShieldedMasks shielded;
    EventResult event;
    std::optional<RegionMask> compactness;  ///< absent when the foliation is not Cauchy
    std::vector<InclusionVerdict> inclusions;
    bool obstruction_applies = false;  ///< non-compact Cauchy surfaces and U nonempty
    bool obstruction_holds = true;     ///< then the domain must not be synoptic
    bool passed() const;
};

HierarchyReport hierarchy_audit(const CausalModel& model, HorizontalityParams hp = {},
                                Convention conv = Convention::ProofReading);

InclusionVerdict check_inclusion(const GridSpacetime& st, const std::string& name, const CellSet& a,
                                 const CellSet& b);

/// Exact check of the champion theorem: every maximal synoptic mask (over all
/// seed tips) equals some tip. Throws SizeError beyond kExactSynopticCells.
struct ChampionAudit {
    std::size_t masks = 0;
    std::vector<Cell> failures;  ///< greatest cells of masks matching no tip
    bool passed() const { return failures.empty(); }
};

ChampionAudit champion_audit(const CausalModel& model);

/// Looks for a region of the form domain minus closure(tip of a terminal cell)
/// that contains L and excludes p. Returns the terminal cell when found.
std::optional<Cell> separating_region(const CausalModel& model, const CellSet& lower, Cell p);

// ---------------------------------------------------------------------------
// Counterexample search
// ---------------------------------------------------------------------------

struct SearchParams {
    std::string family = "random";  ///< a catalog scenario name
    int resolution = 24;
    std::uint64_t seed = 0;         ///< first seed; instance k uses seed + k
    int budget = 100;               ///< instances to examine
    /// Families other than "random" vary the resolution instead: instance k
    /// uses resolution + k, for at most resolution + 1 instances.
    std::map<std::string, std::string> values;
    int threads = 0;  ///< 0 reads HORIZONLAB_THREADS, falling back to 1
    StencilParams stencil;
    HorizontalityParams horizontality;
    Convention convention = Convention::ProofReading;
};

struct Finding {
    std::uint64_t seed = 0;
    int resolution = 0;
    Cell witness;
};

struct SearchResult {
    std::string inclusion;
    int examined = 0;
    int skipped = 0;  ///< instances without a Cauchy foliation when C is involved
    std::vector<Finding> findings;
    /// U<=C is the one inclusion the paper leaves open.
    bool open_remark = false;
};

/// `inclusion` has the form "A<=B" with A, B in {L, U, E, C}. Results are
/// ordered by instance and do not depend on the thread count.
SearchResult counterexample_search(const std::string& inclusion, const SearchParams& params);

}  // namespace horizonlab
