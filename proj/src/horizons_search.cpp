#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <set>
#include <thread>

#include "horizonlab/horizons.hpp"
#include "horizonlab/model.hpp"

namespace horizonlab {

ChampionAudit champion_audit(const CausalModel& model) {
    const GridSpacetime& st = model.grid();
    ChampionAudit out;
    std::set<std::vector<std::size_t>> seen;
    SynopticOptions opts;
    opts.mode = SynopticMode::Exact;
    for (std::size_t k = 0; k < model.tips.size(); ++k) {
        for (const RegionMask& m : maximal_synoptic(model, k, opts)) {
            auto members = m.members.members();
            if (!seen.insert(members).second) continue;
            ++out.masks;
            const bool is_tip = std::any_of(model.tips.tips.begin(), model.tips.tips.end(),
                                            [&](const Tip& t) { return t.cells == m.members; });
            if (!is_tip) out.failures.push_back(st.cell(members.back()));
        }
    }
    return out;
}

namespace {

struct Inclusion {
    char lhs = 0;
    char rhs = 0;
};

Inclusion parse_inclusion(const std::string& text) {
    std::string s;
    for (char c : text)
        if (c != ' ') s.push_back(c);
    const auto valid = [](char c) { return c == 'L' || c == 'U' || c == 'E' || c == 'C'; };
    if (s.size() != 4 || s.substr(1, 2) != "<=" || !valid(s[0]) || !valid(s[3]))
        throw ParamError("inclusion must look like A<=B with A, B in {L, U, E, C}: " + text);
    return {s[0], s[3]};
}

int thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("HORIZONLAB_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

// Outcome of one instance: skipped, clean, or a witness.
struct Outcome {
    bool skipped = false;
    std::optional<Finding> finding;
};

Outcome examine(const SearchParams& p, Inclusion inc, int k) {
    ScenarioParams sp;
    sp.values = p.values;
    const bool seeded = p.family == "random";
    sp.resolution = seeded ? p.resolution : p.resolution + k;
    sp.seed = seeded ? p.seed + static_cast<std::uint64_t>(k) : p.seed;
    Outcome out;
    try {
        const CausalModel model = CausalModel::build(share(build_scenario(p.family, sp)), p.stencil);
        const GridSpacetime& st = model.grid();
        const bool need_shielded = inc.lhs == 'L' || inc.lhs == 'U' || inc.rhs == 'L' || inc.rhs == 'U';
        ShieldedMasks shielded;
        if (need_shielded) shielded = shielded_masks(model, p.convention);
        auto mask = [&](char which) -> CellSet {
            switch (which) {
                case 'L': return shielded.lower.members;
                case 'U': return shielded.upper.members;
                case 'E': return event_mask(model, p.horizontality).mask.members;
                default: return compactness_mask(model).members;
            }
        };
        const CellSet a = mask(inc.lhs);
        const CellSet b = mask(inc.rhs);
        const CellSet extra = a - b;
        if (extra.any()) out.finding = Finding{sp.seed, sp.resolution, st.cell(extra.members().front())};
    } catch (const NonCauchyFoliation&) {
        out.skipped = true;
    }
    return out;
}

}  // namespace

SearchResult counterexample_search(const std::string& inclusion, const SearchParams& params) {
    const Inclusion inc = parse_inclusion(inclusion);
    if (params.budget < 0) throw ParamError("budget must be non-negative");
    SearchResult res;
    res.inclusion = std::string(1, inc.lhs) + "<=" + std::string(1, inc.rhs);
    res.open_remark = inc.lhs == 'U' && inc.rhs == 'C';
    const int count = params.family == "random" ? params.budget : std::min(params.budget, params.resolution + 1);
    std::vector<Outcome> outcomes(static_cast<std::size_t>(count));
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto work = [&] {
        while (!failed) {
            const int k = next++;
            if (k >= count) break;
            try {
                outcomes[static_cast<std::size_t>(k)] = examine(params, inc, k);
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
            }
        }
    };
    const int n = std::min(thread_count(params.threads), std::max(count, 1));
    std::vector<std::thread> pool;
    for (int t = 1; t < n; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    for (const Outcome& o : outcomes) {
        ++res.examined;
        if (o.skipped) ++res.skipped;
        if (o.finding) res.findings.push_back(*o.finding);
    }
    return res;
}

}  // namespace horizonlab
