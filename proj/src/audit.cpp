#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "horizonlab/audit.hpp"
#include "horizonlab/geometry.hpp"

namespace horizonlab {

namespace {

std::string cell_text(Cell c) { return "(" + std::to_string(c.t) + "," + std::to_string(c.x) + ")"; }

AuditCheck from_inclusion(const std::string& prefix, const InclusionVerdict& v) {
    return {prefix + v.name, v.holds, v.witness ? "witness " + cell_text(*v.witness) : ""};
}

}  // namespace

std::vector<AuditCheck> run_audit(const CausalModel& model, const std::string& scenario, const AuditOptions& opts) {
    const GridSpacetime& st = model.grid();
    std::vector<AuditCheck> out;

    const HierarchyReport h = hierarchy_audit(model, opts.horizontality, opts.convention);
    for (const auto& v : h.inclusions) out.push_back(from_inclusion("hierarchy.", v));
    if (h.obstruction_applies) out.push_back({"hierarchy.obstruction", h.obstruction_holds, ""});

    const Theorem1Audit t1 = theorem1_audit(model, opts.convention);
    const std::string t1_detail = t1.witness ? "witness " + cell_text(*t1.witness) : "";
    out.push_back({"theorem1.upper_matches", t1.upper_matches, ""});
    out.push_back({"theorem1.lower_equals_upper", t1.lower_equals_upper, t1_detail});

    if (st.domain().count() <= kExactSynopticCells) {
        const ChampionAudit c = champion_audit(model);
        std::string detail = std::to_string(c.masks) + " masks";
        if (!c.passed()) detail += ", first failure at " + cell_text(c.failures.front());
        out.push_back({"champion", c.passed(), detail});
    }

    {
        const LengthField field = lorentzian_distance_field(model);
        const double lambda = opts.lambda > 0.0 ? opts.lambda : 10.0 * domain_diameter(st);
        const CellSet bh = black_hole_mask(model, field, lambda).members;
        const CellSet vplus = visibility_masks(model, infinite_tip_flags(model, field, lambda)).future.members;
        const CellSet extra = vplus - bh;
        out.push_back({"visibility.V+<=BH", extra.none(),
                       extra.none() ? "" : "witness " + cell_text(st.cell(extra.members().front()))});
    }

    if (!st.periodic_x() && opts.escape_pairs > 0) {
        std::mt19937_64 rng(opts.seed);
        int margin = opts.escape_margin;
        if (margin < 0)
            for (const auto& steps : model.stencil.steps)
                for (const Step& s : steps) margin = std::max(margin, s.dt);
        const CellSet near_edge = chebyshev_dilate(st, boundary_facet_cells(st), margin);
        std::vector<std::size_t> sources;
        std::vector<std::vector<std::size_t>> targets;
        st.domain().for_each([&](std::size_t i) {
            if (near_edge.test(i)) return;
            std::vector<std::size_t> far;
            model.reach.future_of(i).for_each([&](std::size_t j) {
                if (st.cell(j).t - st.cell(i).t >= margin) far.push_back(j);
            });
            if (far.empty()) return;
            sources.push_back(i);
            targets.push_back(std::move(far));
        });
        int sampled = 0, failed = 0;
        std::string first;
        for (int k = 0; k < opts.escape_pairs && !sources.empty(); ++k) {
            const std::size_t k_src = rng() % sources.size();
            const std::size_t p = sources[k_src];
            const std::size_t q = targets[k_src][rng() % targets[k_src].size()];
            ++sampled;
            if (!escape_curve_exists(model, st.cell(p), st.cell(q))) {
                if (failed++ == 0) first = cell_text(st.cell(p)) + " -> " + cell_text(st.cell(q));
            }
        }
        std::string detail = std::to_string(sampled) + " pairs";
        if (failed) detail += ", " + std::to_string(failed) + " without escape, first " + first;
        out.push_back({"buckelkurve", failed == 0, detail});
    }

    if (scenario == "cone_ballet") {
        out.push_back({"cone_ballet.U_empty", h.shielded.upper.members.none(),
                       std::to_string(h.shielded.upper.members.count()) + " cells"});
        out.push_back({"cone_ballet.E_empty", h.event.mask.members.none(),
                       std::to_string(h.event.mask.members.count()) + " cells"});
        out.push_back({"cone_ballet.synoptic", is_synoptic(model, st.domain()), ""});
    }
    return out;
}

bool Expectations::expected(const std::string& scenario, const std::string& check) const {
    const auto it = entries.find({scenario, check});
    return it == entries.end() ? true : it->second;
}

Expectations load_expectations(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParamError("cannot open expectations file " + path.string());
    Expectations e;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string scenario, check, verdict, extra;
        if (!(ss >> scenario)) continue;
        if (!(ss >> check >> verdict) || (ss >> extra) || (verdict != "pass" && verdict != "fail"))
            throw ParamError("expectations line " + std::to_string(number) + ": expected 'scenario check pass|fail'");
        e.entries[{scenario, check}] = verdict == "pass";
    }
    return e;
}

}  // namespace horizonlab
