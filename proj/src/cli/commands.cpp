#include <chrono>
#include <cmath>
#include <ostream>

#include "cli_internal.hpp"
#include "horizonlab/cli.hpp"
#include "horizonlab/geometry.hpp"
#include "horizonlab/killing.hpp"
#include "horizonlab/model.hpp"

namespace horizonlab::cli {

namespace {

constexpr const char* kSchema = "horizonlab-report/1";

Json header(const Options& o, const ScenarioFile& sf) {
    Json r;
    r["schema"] = kSchema;
    r["command"] = o.command;
    r["scenario"] = scenario_json(sf);
    return r;
}

Json tip_summary(const CausalModel& model) {
    std::size_t open = 0, genuine = 0;
    for (const Tip& t : model.tips.tips) {
        open += t.open();
        genuine += t.on_genuine;
    }
    return {{"count", model.tips.size()}, {"open", open}, {"on_genuine", genuine},
            {"generator_cells", model.tips.generator_cells.size()}};
}

// Wall-clock timer whose readings enter the report only with --timings, so
// that reports stay byte-identical by default.
class Timings {
public:
    explicit Timings(bool on) : on_(on) {}
    template <typename F>
    auto run(const std::string& name, F&& f) {
        const auto t0 = std::chrono::steady_clock::now();
        auto result = f();
        if (on_) table_[name] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return result;
    }
    void attach(Json& report) const {
        if (on_) report["timings"] = table_;
    }

private:
    bool on_;
    Json table_ = Json::object();
};

std::size_t largest_tip(const CausalModel& model) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < model.tips.size(); ++k)
        if (model.tips.tips[k].cells.count() > model.tips.tips[best].cells.count()) best = k;
    return best;
}

double fraction(std::size_t part, std::size_t whole) { return whole ? static_cast<double>(part) / whole : 0.0; }

}  // namespace

int cmd_validate(const Options& o, std::ostream& out) {
    const ScenarioFile sf = resolve_scenario(o);
    const GridSpacetime st = sf.build();
    const ValidationReport rep = validate(st, sf.stencil, sf.stencil.slope_cap);
    ArtifactWriter w(o.out_dir);
    Json r = header(o, sf);
    r["ok"] = rep.ok();
    Json violations = Json::array();
    for (const Violation& v : rep.violations) violations.push_back({{"cell", cell_json(v.cell)}, {"rule", v.rule}});
    r["violations"] = violations;
    r["levels"] = rep.levels.size();
    r["non_cauchy_levels"] = rep.non_cauchy_levels();
    write_report(o, w, r);
    out << sf.name << ": " << (rep.ok() ? "valid" : std::to_string(rep.violations.size()) + " violation(s)") << "\n";
    for (const Violation& v : rep.violations)
        out << "  " << v.rule << " at (" << v.cell.t << "," << v.cell.x << ")\n";
    return rep.ok() ? kExitOk : kExitValidation;
}

int cmd_analyze(const Options& o, std::ostream& out, bool render_only) {
    const ScenarioFile sf = resolve_scenario(o);
    Timings timer(o.timings);
    const CausalModel model = timer.run("model", [&] { return build_model(sf); });
    const GridSpacetime& st = model.grid();
    const Convention conv = parse_convention(o.convention);
    const std::vector<std::string> masks = o.masks.empty() ? std::vector<std::string>{"L", "U", "E"} : o.masks;

    ArtifactWriter w(o.out_dir);
    Json r = header(o, sf);
    r["domain_cells"] = st.domain().count();
    r["tips"] = tip_summary(model);
    Json mask_json = Json::object();
    Json verdicts = Json::object();
    Json warnings = Json::array();
    auto record = [&](const std::string& name, const CellSet& cells) {
        mask_json[name] = {{"cells", cells.count()}, {"files", emit_mask(o, w, st, "mask_" + name, cells)}};
        out << "  " << name << ": " << cells.count() << " cells\n";
    };
    const CauchyCheck cauchy = cauchy_check(model);
    if (!cauchy.all_cauchy() || !cauchy.non_increasing_steps.empty())
        warnings.push_back("foliation is not Cauchy on every level");

    std::optional<LengthField> field;
    auto lengths = [&]() -> const LengthField& {
        if (!field) field = timer.run("lengths", [&] { return lorentzian_distance_field(model); });
        return *field;
    };
    const double lambda = o.lambda > 0.0 ? o.lambda : 10.0 * domain_diameter(st);

    out << st.name() << " (" << st.domain().count() << " cells, " << model.tips.size() << " tips)\n";
    for (const std::string& m : masks) {
        if (m == "L" || m == "U") {
            const ShieldedMasks sm = timer.run("shielded", [&] { return shielded_masks(model, conv); });
            record(m, m == "L" ? sm.lower.members : sm.upper.members);
        } else if (m == "E") {
            const auto flags = timer.run("horizontality", [&] { return horizontal_tips(model, horizontality(o)); });
            const auto undecided = std::count(flags.begin(), flags.end(), Horizontality::Indeterminate);
            if (undecided) warnings.push_back(std::to_string(undecided) + " tip(s) of indeterminate horizontality");
            record("E", event_mask(model, flags).mask.members);
        } else if (m == "C") {
            try {
                record("C", compactness_mask(model).members);
            } catch (const NonCauchyFoliation& e) {
                warnings.push_back(std::string("C skipped: ") + e.what());
            }
        } else if (m == "S") {
            const std::size_t seed_tip = largest_tip(model);
            SynopticOptions so;
            so.seed = sf.params.seed;
            const auto found = maximal_synoptic(model, seed_tip, so);
            const SynopticityRegion region = synopticity_region(st, found.front().members);
            record("S", found.front().members);
            record("S_region", region.region.members);
            record("S_horizon", region.horizon);
            verdicts["S"] = {{"seed_tip", seed_tip}, {"domain_synoptic", is_synoptic(model, st.domain())}};
        } else if (m == "BH") {
            const LengthField& f = lengths();
            const RegionMask bh = black_hole_mask(model, f, lambda);
            record("BH", bh.members);
            if (o.wants("csv")) w.write("field_d.csv", "length-field", field_csv(st, f.d));
            verdicts["BH"] = {{"lambda", lambda}, {"max_d", f.max_d()},
                              {"strong", strong_black_hole_check(model, f, lambda)}};
            if (o.wants("csv")) {
                try {
                    const ConformalRecipe bounded = bounded_length_factor(model, 1.0);
                    w.write("recipe_bounded.csv", "recipe", field_csv(st, bounded.cell_factor));
                    const ConformalRecipe complete = completeness_factor(model, lambda);
                    w.write("recipe_complete.csv", "recipe", field_csv(st, complete.cell_factor));
                } catch (const FoliationError& e) {
                    warnings.push_back(std::string("recipes skipped: ") + e.what());
                }
            }
        } else if (m == "V") {
            const LengthField& f = lengths();
            const VisibilityMasks v = visibility_masks(model, infinite_tip_flags(model, f, lambda));
            record("V+", v.future.members);
            record("V-", v.past.members);
        } else if (m == "KH") {
            const VectorFieldGrid X = named_field(st, o.field);
            const KillingHorizonReport kh = killing_horizon_detect(model, X);
            const CharacterMasks cm = causal_character_masks(st, X);
            record("KH_spacelike", cm.spacelike.members);
            record("KH_timelike", cm.timelike.members);
            record("KH_null", cm.null_band.members);
            verdicts["KH"] = {{"field", o.field},
                              {"kind", to_string(kh.kind)},
                              {"residual", kh.residual},
                              {"connected", kh.connected},
                              {"future_set", kh.future_set},
                              {"spatially_bounded", kh.spatially_bounded},
                              {"spatially_compact", kh.spatially_compact},
                              {"max_slice_diameter", kh.max_slice_diameter},
                              {"diameter_bound", kh.diameter_bound}};
        } else if (m == "CC4") {
            const CensorshipReport cr =
                censorship_report(model, o.lambda, o.lambda_sing, o.band >= 0 ? o.band : kNullBand, horizontality(o));
            CellSet naked(st.cell_count());
            Json entries = Json::array();
            for (const SingularTipEntry& e : cr.singular) {
                if (e.naked) naked |= model.tips.tips[e.tip].cells;
                entries.push_back({{"tip", e.tip},
                                   {"generator", cell_json(e.generator)},
                                   {"ell", e.ell},
                                   {"naked", e.naked},
                                   {"strictly_naked", e.strictly_naked},
                                   {"missing", e.missing}});
            }
            record("CC4_naked", naked);
            verdicts["CC4"] = {{"lambda", cr.lambda},  {"lambda_sing", cr.lambda_sing}, {"band", cr.band},
                               {"holds", cr.cc4.holds}, {"any_naked", cr.any_naked()},   {"singular", entries}};
        }
    }
    if (render_only) {
        if (o.wants("csv")) {
            w.write("field_tau.csv", "foliation", field_csv(st, model.tau));
            if (!field) w.write("field_d.csv", "length-field", field_csv(st, lengths().d));
        }
    } else {
        r["verdicts"] = verdicts;
    }
    r["masks"] = mask_json;
    r["warnings"] = warnings;
    timer.attach(r);
    write_report(o, w, r);
    for (const auto& msg : warnings) out << "  warning: " << msg.get<std::string>() << "\n";
    return kExitOk;
}

int cmd_audit(const Options& o, std::ostream& out) {
    const ScenarioFile sf = resolve_scenario(o);
    Timings timer(o.timings);
    const CausalModel model = timer.run("model", [&] { return build_model(sf); });
    AuditOptions ao;
    ao.seed = sf.params.seed;
    ao.escape_pairs = o.escape_pairs;
    ao.lambda = o.lambda;
    ao.horizontality = horizontality(o);
    ao.convention = parse_convention(o.convention);
    const auto checks = timer.run("audit", [&] { return run_audit(model, sf.name, ao); });
    const Expectations expect = o.expectations.empty() ? Expectations{} : load_expectations(o.expectations);

    ArtifactWriter w(o.out_dir);
    Json r = header(o, sf);
    Json list = Json::array();
    int unexpected = 0;
    out << sf.name << " audit\n";
    for (const AuditCheck& c : checks) {
        const bool expected = expect.expected(sf.name, c.name);
        const bool as_expected = expected == c.holds;
        unexpected += !as_expected;
        list.push_back({{"check", c.name},
                        {"holds", c.holds},
                        {"expected", expected ? "pass" : "fail"},
                        {"as_expected", as_expected},
                        {"detail", c.detail}});
        out << "  " << (c.holds ? "pass " : "FAIL ") << c.name << (as_expected ? "" : "  [unexpected]")
            << (c.detail.empty() ? "" : "  " + c.detail) << "\n";
    }
    r["checks"] = list;
    r["unexpected"] = unexpected;
    timer.attach(r);
    write_report(o, w, r);
    return unexpected ? kExitAuditViolation : kExitOk;
}

int cmd_refine(const Options& o, std::ostream& out) {
    const ScenarioFile base = resolve_scenario(o);
    const int n = base.params.resolution;
    std::vector<int> resolutions{n, 2 * n};
    if (o.levels == 3) resolutions = {n, n + n / 2, 2 * n};
    const Convention conv = parse_convention(o.convention);
    const std::vector<std::string> masks =
        o.masks.empty() ? std::vector<std::string>{"L", "U", "E", "BH"} : o.masks;

    ArtifactWriter w(o.out_dir);
    Json r = header(o, base);
    Json rows = Json::array();
    std::string table = "mask,resolution,cells,domain_cells,fraction\n";
    out << base.name << " refinement\n";
    for (int res : resolutions) {
        ScenarioFile sf = base;
        sf.params.resolution = res;
        const CausalModel model = build_model(sf);
        const GridSpacetime& st = model.grid();
        const std::size_t dom = st.domain().count();
        const double lambda = o.lambda > 0.0 ? o.lambda : 10.0 * domain_diameter(st);
        Json row = {{"resolution", res}, {"domain_cells", dom}};
        auto add = [&](const std::string& name, const CellSet& cells) {
            const double f = fraction(cells.count(), dom);
            row[name] = {{"cells", cells.count()}, {"fraction", f}};
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", f);
            table += name + "," + std::to_string(res) + "," + std::to_string(cells.count()) + "," +
                     std::to_string(dom) + "," + buf + "\n";
            out << "  " << res << "  " << name << "  " << cells.count() << "/" << dom << "\n";
        };
        std::optional<ShieldedMasks> sm;
        std::optional<LengthField> field;
        for (const std::string& m : masks) {
            if (m == "L" || m == "U") {
                if (!sm) sm = shielded_masks(model, conv);
                add(m, m == "L" ? sm->lower.members : sm->upper.members);
            } else if (m == "E") {
                add("E", event_mask(model, horizontality(o)).mask.members);
            } else if (m == "C") {
                try {
                    add("C", compactness_mask(model).members);
                } catch (const NonCauchyFoliation&) {
                    row["C"] = nullptr;
                }
            } else if (m == "BH" || m == "V") {
                if (!field) field = lorentzian_distance_field(model);
                if (m == "BH") {
                    add("BH", black_hole_mask(model, *field, lambda).members);
                    row["max_d"] = field->max_d();
                } else {
                    const VisibilityMasks v = visibility_masks(model, infinite_tip_flags(model, *field, lambda));
                    add("V+", v.future.members);
                    add("V-", v.past.members);
                }
            } else {
                throw ParamError("refine does not support mask " + m);
            }
        }
        rows.push_back(row);
    }
    if (o.wants("csv")) w.write("convergence.csv", "convergence-table", table);
    r["resolutions"] = rows;
    write_report(o, w, r);
    return kExitOk;
}

int cmd_search(const Options& o, std::ostream& out) {
    const ScenarioFile sf = resolve_scenario(o);
    if (sf.name == "custom") throw ParamError("search needs a catalog family");
    SearchParams sp;
    sp.family = sf.name;
    sp.resolution = sf.params.resolution;
    sp.seed = sf.params.seed;
    sp.budget = o.budget;
    sp.values = sf.params.values;
    sp.stencil = sf.stencil;
    sp.horizontality = horizontality(o);
    sp.convention = parse_convention(o.convention);
    const SearchResult res = counterexample_search(o.inclusion, sp);

    ArtifactWriter w(o.out_dir);
    Json r = header(o, sf);
    r["inclusion"] = res.inclusion;
    r["convention"] = o.convention;
    r["examined"] = res.examined;
    r["skipped"] = res.skipped;
    r["bears_on_open_remark"] = res.open_remark;
    Json findings = Json::array();
    for (const Finding& f : res.findings)
        findings.push_back({{"seed", f.seed}, {"resolution", f.resolution}, {"witness", cell_json(f.witness)}});
    r["findings"] = findings;
    write_report(o, w, r);
    out << res.inclusion << " on " << sf.name << ": " << res.findings.size() << " violation(s) in " << res.examined
        << " instance(s), " << res.skipped << " skipped\n";
    if (res.open_remark) out << "  U<=C is an open question; these findings bear on it\n";
    for (const Finding& f : res.findings)
        out << "  seed " << f.seed << " resolution " << f.resolution << " witness (" << f.witness.t << ","
            << f.witness.x << ")\n";
    return kExitOk;
}

}  // namespace horizonlab::cli
