#include <algorithm>
#include <filesystem>
#include <functional>
#include <map>

#include <CLI11.hpp>

#include "cli_internal.hpp"
#include "horizonlab/cli.hpp"
#include "horizonlab/model.hpp"

namespace horizonlab::cli {

bool Options::wants(const std::string& format) const {
    return std::find(formats.begin(), formats.end(), format) != formats.end();
}

ScenarioFile resolve_scenario(const Options& o) {
    ScenarioFile sf;
    const std::filesystem::path path(o.scenario);
    if (std::filesystem::is_regular_file(path)) {
        sf = load_scenario(path);
    } else {
        const auto& names = scenario_names();
        if (std::find(names.begin(), names.end(), o.scenario) == names.end())
            throw ParamError("'" + o.scenario + "' is neither a scenario file nor a catalog scenario");
        sf.name = o.scenario;
    }
    if (o.resolution) sf.params.resolution = *o.resolution;
    if (o.seed) sf.params.seed = *o.seed;
    if (o.radius) sf.stencil.radius = *o.radius;
    if (o.margin) sf.stencil.margin = *o.margin;
    if (o.cap) sf.stencil.slope_cap = *o.cap;
    for (const std::string& kv : o.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw ParamError("--set expects key=value, got '" + kv + "'");
        sf.params.values[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    if (sf.params.resolution < 2) throw ParamError("resolution must be at least 2");
    if (sf.stencil.radius < 1) throw ParamError("stencil radius must be at least 1");
    if (!(sf.stencil.margin > 0.0 && sf.stencil.margin < 1.0)) throw ParamError("margin must lie in (0, 1)");
    return sf;
}

Convention parse_convention(const std::string& s) {
    if (s == "proof") return Convention::ProofReading;
    if (s == "literal") return Convention::LiteralReading;
    throw ParamError("convention must be 'proof' or 'literal'");
}

HorizontalityParams horizontality(const Options& o) {
    HorizontalityParams hp;
    hp.window = o.window;
    return hp;
}

CausalModel build_model(const ScenarioFile& sf) {
    GridSpacetime st = sf.build();
    const ValidationReport rep = validate(st, sf.stencil, sf.stencil.slope_cap);
    if (!rep.ok()) {
        const Violation& v = rep.violations.front();
        throw ValidationFailure(std::to_string(rep.violations.size()) + " validation violation(s), first: " + v.rule +
                                " at (" + std::to_string(v.cell.t) + "," + std::to_string(v.cell.x) + ")");
    }
    return CausalModel::build(share(std::move(st)), sf.stencil);
}

Json cell_json(Cell c) { return Json::array({c.t, c.x}); }

Json scenario_json(const ScenarioFile& sf) {
    Json j;
    j["name"] = sf.name;
    j["resolution"] = sf.params.resolution;
    j["seed"] = sf.params.seed;
    Json values = Json::object();
    for (const auto& [k, v] : sf.params.values) values[k] = v;
    for (const auto& [k, v] : sf.custom) values[k] = v;
    j["parameters"] = values;
    j["stencil"] = {{"radius", sf.stencil.radius}, {"margin", sf.stencil.margin}, {"slope_cap", sf.stencil.slope_cap}};
    return j;
}

Json artifacts_json(const ArtifactWriter& w) {
    Json a = Json::array();
    for (const Artifact& f : w.artifacts())
        a.push_back({{"file", f.file}, {"kind", f.kind}, {"sha256", f.sha256}, {"bytes", f.bytes}});
    return a;
}

Json emit_mask(const Options& o, ArtifactWriter& w, const GridSpacetime& st, const std::string& stem,
               const CellSet& mask) {
    Json files = Json::array();
    if (o.wants("csv")) files.push_back(w.write(stem + ".csv", "mask-csv", mask_csv(st, mask)).file);
    if (o.wants("pgm")) files.push_back(w.write(stem + ".pgm", "mask-pgm", mask_pgm(st, mask)).file);
    return files;
}

void write_report(const Options& o, ArtifactWriter& w, Json report) {
    if (!o.wants("json")) return;
    report["artifacts"] = artifacts_json(w);
    w.write("report.json", "report", report.dump(2) + "\n");
}

namespace {

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::string item;
    for (char c : v + ",") {
        if (c == ',') {
            if (!item.empty()) out.push_back(item);
            item.clear();
        } else if (c != ' ') {
            item.push_back(c);
        }
    }
    return out;
}

}  // namespace

// Keys of the [analysis] section fill in flags absent from the command line.
void apply_analysis_section(Options& o, const std::map<std::string, std::string>& section,
                            const std::function<bool(const std::string&)>& given) {
    for (const auto& [key, value] : section) {
        std::string flag = "--" + (key == "masks" ? std::string("mask") : key);
        std::replace(flag.begin(), flag.end(), '_', '-');
        if (given(flag)) continue;
        try {
            if (key == "masks")
                o.masks = split_list(value);
            else if (key == "lambda")
                o.lambda = std::stod(value);
            else if (key == "lambda_sing")
                o.lambda_sing = std::stod(value);
            else if (key == "band")
                o.band = std::stoi(value);
            else if (key == "window")
                o.window = std::stoi(value);
            else if (key == "convention")
                o.convention = value;
            else if (key == "field")
                o.field = value;
            else if (key == "inclusion")
                o.inclusion = value;
            else if (key == "budget")
                o.budget = std::stoi(value);
            else
                throw ParamError("unknown analysis key '" + key + "'");
        } catch (const std::logic_error&) {
            throw ParamError("analysis key '" + key + "' has a malformed value '" + value + "'");
        }
    }
}

}  // namespace horizonlab::cli

namespace horizonlab {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace cli;
    Options o;
    CLI::App app{"horizonlab: horizons of discretized two-dimensional spacetimes"};
    app.require_subcommand(1);
    auto common = [&](CLI::App* sub) {
        sub->add_option("--scenario", o.scenario, "scenario file or catalog name");
        sub->add_option("--resolution", o.resolution, "rows covering the scenario's reference time span");
        sub->add_option("--stencil-radius", o.radius, "R, longest step in rows");
        sub->add_option("--margin", o.margin, "kappa, slope margin of the stencil");
        sub->add_option("--cap", o.cap, "clamp on null slopes");
        sub->add_option("--seed", o.seed, "seed for random scenarios and sampling");
        sub->add_option("--set", o.sets, "builder parameter key=value");
        sub->add_option("--out-dir", o.out_dir, "output directory");
        sub->add_option("--format", o.formats, "csv, pgm, json")
            ->delimiter(',')
            ->check(CLI::IsMember({"csv", "pgm", "json"}));
        sub->add_flag("--timings", o.timings, "add wall-clock timings to the report");
    };
    auto analysis = [&](CLI::App* sub) {
        sub->add_option("--mask", o.masks, "L, U, E, C, S, BH, V, KH, CC4")
            ->delimiter(',')
            ->check(CLI::IsMember({"L", "U", "E", "C", "S", "BH", "V", "KH", "CC4"}));
        sub->add_option("--convention", o.convention, "proof or literal")->check(CLI::IsMember({"proof", "literal"}));
        sub->add_option("--field", o.field, "Killing candidate: dt, dx, boost, x_dx");
        sub->add_option("--lambda", o.lambda, "length threshold for BH and infinite tips");
        sub->add_option("--lambda-sing", o.lambda_sing, "length threshold for singular tips");
        sub->add_option("--band", o.band, "null band (cells) for censorship containment");
        sub->add_option("--window", o.window, "window radius m of the horizontality rule");
    };
    CLI::App* validate_cmd = app.add_subcommand("validate", "check a scenario");
    CLI::App* analyze_cmd = app.add_subcommand("analyze", "compute masks and verdicts");
    CLI::App* audit_cmd = app.add_subcommand("audit", "run the theorem battery");
    CLI::App* refine_cmd = app.add_subcommand("refine", "repeat the analysis at several resolutions");
    CLI::App* search_cmd = app.add_subcommand("search", "look for counterexamples to an inclusion");
    CLI::App* render_cmd = app.add_subcommand("render", "write masks and fields without verdicts");
    for (CLI::App* sub : {validate_cmd, analyze_cmd, audit_cmd, refine_cmd, search_cmd, render_cmd}) common(sub);
    for (CLI::App* sub : {analyze_cmd, refine_cmd, render_cmd, audit_cmd}) analysis(sub);
    audit_cmd->add_option("--expectations", o.expectations, "file of known discrepancies");
    audit_cmd->add_option("--escape-pairs", o.escape_pairs, "escape-curve pairs to sample");
    refine_cmd->add_option("--levels", o.levels, "number of resolutions (2 or 3)")->check(CLI::Range(2, 3));
    search_cmd->add_option("--inclusion", o.inclusion, "A<=B with A, B in {L, U, E, C}");
    search_cmd->add_option("--budget", o.budget, "instances to examine");
    search_cmd->add_option("--convention", o.convention, "proof or literal")->check(CLI::IsMember({"proof", "literal"}));
    search_cmd->add_option("--window", o.window, "window radius m of the horizontality rule");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "horizonlab: " << e.what() << "\n";
        return kExitParam;
    }
    CLI::App* chosen = app.get_subcommands().front();
    o.command = chosen->get_name();
    try {
        if (std::filesystem::is_regular_file(o.scenario))
            apply_analysis_section(o, load_scenario(o.scenario).analysis, [&](const std::string& flag) {
                try {
                    return chosen->count(flag) > 0;
                } catch (const CLI::OptionNotFound&) {
                    return false;
                }
            });
        if (o.command == "validate") return cmd_validate(o, out);
        if (o.command == "analyze") return cmd_analyze(o, out, false);
        if (o.command == "render") return cmd_analyze(o, out, true);
        if (o.command == "audit") return cmd_audit(o, out);
        if (o.command == "refine") return cmd_refine(o, out);
        return cmd_search(o, out);
    } catch (const ValidationFailure& e) {
        err << "horizonlab: " << e.what() << "\n";
        return kExitValidation;
    } catch (const SignatureError& e) {
        err << "horizonlab: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ConeCapError& e) {
        err << "horizonlab: " << e.what() << "\n";
        return kExitValidation;
    } catch (const EmptyStencilError& e) {
        err << "horizonlab: " << e.what() << "\n";
        return kExitValidation;
    } catch (const HorizonError& e) {
        err << "horizonlab: " << e.what() << "\n";
        return kExitParam;
    }
}

}  // namespace horizonlab
