#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "horizonlab/audit.hpp"
#include "horizonlab/causal.hpp"
#include "horizonlab/output.hpp"
#include "horizonlab/scenario_file.hpp"

namespace horizonlab::cli {

using Json = nlohmann::ordered_json;

/// Flags shared by every command, after parsing.
struct Options {
    std::string command;
    std::string scenario = "minkowski_box";  ///< scenario file or catalog name
    std::optional<int> resolution;
    std::optional<int> radius;
    std::optional<double> margin;
    std::optional<double> cap;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> sets;  ///< key=value builder parameters
    std::string out_dir = "horizonlab-out";
    std::vector<std::string> formats{"csv", "pgm", "json"};
    std::vector<std::string> masks;
    std::string expectations;
    std::string convention = "proof";
    std::string field = "dt";
    double lambda = -1.0;
    double lambda_sing = -1.0;
    int band = -1;
    int window = 1;
    std::string inclusion = "L<=U";
    int budget = 100;
    int levels = 3;
    int escape_pairs = 100;
    bool timings = false;

    bool wants(const std::string& format) const;
};

/// Thrown when the scenario does not validate.
class ValidationFailure : public HorizonError {
public:
    using HorizonError::HorizonError;
};

/// The scenario file with command-line overrides applied.
ScenarioFile resolve_scenario(const Options& o);

Convention parse_convention(const std::string& s);
HorizontalityParams horizontality(const Options& o);

/// Validates and builds the causal model; throws ValidationFailure with the
/// first violation otherwise.
CausalModel build_model(const ScenarioFile& sf);

Json scenario_json(const ScenarioFile& sf);
Json cell_json(Cell c);
Json artifacts_json(const ArtifactWriter& w);

/// Writes `mask` as CSV and PGM (as selected) under `stem`; returns the file names.
Json emit_mask(const Options& o, ArtifactWriter& w, const GridSpacetime& st, const std::string& stem,
               const CellSet& mask);

/// Writes report.json when json output is selected.
void write_report(const Options& o, ArtifactWriter& w, Json report);

int cmd_validate(const Options& o, std::ostream& out);
int cmd_analyze(const Options& o, std::ostream& out, bool render_only);
int cmd_audit(const Options& o, std::ostream& out);
int cmd_refine(const Options& o, std::ostream& out);
int cmd_search(const Options& o, std::ostream& out);

}  // namespace horizonlab::cli
