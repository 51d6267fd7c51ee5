#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "horizonlab/cell_set.hpp"
#include "horizonlab/grid.hpp"

namespace horizonlab {

/// PGM P2, one pixel per cell, latest row first so that the future is up.
/// 0 = not a member, 255 = member, 128 = member with a 4-neighbour in the
/// domain outside the mask or a boundary facet.
std::string mask_pgm(const GridSpacetime& st, const CellSet& mask);

/// "t,x" header, then one member cell per line in index order.
std::string mask_csv(const GridSpacetime& st, const CellSet& mask);

/// One line per t row (row 0 first), one column per x; cells outside the
/// domain are left empty. Values printed with 17 significant digits.
std::string field_csv(const GridSpacetime& st, const std::vector<double>& values);

std::string sha256_hex(const std::string& bytes);

struct Artifact {
    std::string file;  ///< relative to the output directory
    std::string kind;
    std::string sha256;
    std::size_t bytes = 0;
};

/// Writes files under one directory and remembers their hashes.
class ArtifactWriter {
public:
    explicit ArtifactWriter(std::filesystem::path dir);
    const Artifact& write(const std::string& file, const std::string& kind, const std::string& content);
    const std::vector<Artifact>& artifacts() const { return written_; }
    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
    std::vector<Artifact> written_;
};

}  // namespace horizonlab
