#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "horizonlab/horizons.hpp"

namespace horizonlab {

struct AuditCheck {
    std::string name;  ///< e.g. "hierarchy.L<=U", "theorem1.lower_equals_upper"
    bool holds = true;
    std::string detail;  ///< witness or counts, human readable
};

struct AuditOptions {
    std::uint64_t seed = 0;
    int escape_pairs = 100;
    /// Escape pairs are drawn at the stencil scale: p farther than this many
    /// cells (Chebyshev) from any boundary cell, q at least this many rows
    /// above p. Negative selects the longest step of the stencil.
    int escape_margin = -1;
    double lambda = -1.0;  ///< negative: 10 x coordinate diameter
    HorizontalityParams horizontality;
    Convention convention = Convention::ProofReading;
};

/// The theorem battery: hierarchy inclusions and obstruction, theorem 1,
/// champion (domains up to kExactSynopticCells cells), V+ <= BH, escape-curve
/// sampling (non-periodic windows) and, for scenario "cone_ballet", the
/// cross-audit U = E = empty with a synoptic domain.
std::vector<AuditCheck> run_audit(const CausalModel& model, const std::string& scenario, const AuditOptions& opts = {});

/// Expected outcomes that differ from "holds". File lines: `scenario check fail`
/// (or `pass`); '#' starts a comment.
struct Expectations {
    std::map<std::pair<std::string, std::string>, bool> entries;
    bool expected(const std::string& scenario, const std::string& check) const;
};

Expectations load_expectations(const std::filesystem::path& path);

}  // namespace horizonlab
