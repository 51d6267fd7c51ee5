#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "horizonlab/cli.hpp"
#include "horizonlab/scenario_file.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace horizonlab;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

void spill(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

// A scratch directory removed at scope exit.
struct Scratch {
    fs::path dir;
    explicit Scratch(const std::string& tag)
        : dir(fs::temp_directory_path() / ("horizonlab_cli_" + tag + "_" + std::to_string(::getpid()))) {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

const char* const kFlat3Csv = "1,0,-1,1,0,-1,1,0,-1\n1,0,-1,1,0,-1,1,0,-1\n1,0,-1,1,0,-1,1,0,-1\n";
const char* const kFlat3Scn = R"([scenario]
name = custom
metric_csv = flat3.csv
spacing = 1
edge_t = genuine

[stencil]
radius = 2
)";

}  // namespace

TEST_CASE("cli: exit codes") {
    Scratch s("codes");
    CHECK(run({"validate", "--scenario", "minkowski_box", "--resolution", "16", "--out-dir", s / "v"}).code == kExitOk);
    CHECK(run({"validate", "--scenario", "no_such_scenario", "--out-dir", s / "v"}).code == kExitParam);
    CHECK(run({"validate", "--scenario", "minkowski_box", "--resolution", "1", "--out-dir", s / "v"}).code ==
          kExitParam);
    CHECK(run({"validate", "--no-such-flag"}).code == kExitParam);
    CHECK(run({"analyze", "--scenario", "minkowski_box", "--margin", "1.5", "--out-dir", s / "v"}).code == kExitParam);

    spill(s / "riemann.csv", "1,0,1,1,0,1\n1,0,1,1,0,1\n");
    spill(s / "riemann.scn", "[scenario]\nname = custom\nmetric_csv = riemann.csv\n");
    CHECK(run({"validate", "--scenario", s / "riemann.scn", "--out-dir", s / "r"}).code == kExitValidation);
}

TEST_CASE("cli: audit outcomes against the expectations file") {
    Scratch s("audit");
    const std::vector<std::string> base{"audit", "--scenario", "kruskal_hexagon", "--resolution", "24"};
    auto with = [&](std::vector<std::string> extra) {
        std::vector<std::string> args = base;
        args.insert(args.end(), extra.begin(), extra.end());
        return run(args);
    };
    CHECK(with({"--out-dir", s / "plain"}).code == kExitAuditViolation);
    const std::string expectations = std::string(HORIZONLAB_SOURCE_DIR) + "/config/audit_expectations.txt";
    CHECK(with({"--expectations", expectations, "--out-dir", s / "expected"}).code == kExitOk);
    const auto report = nlohmann::json::parse(slurp(s.dir / "expected" / "report.json"));
    CHECK(report["schema"] == "horizonlab-report/1");
    CHECK(report["command"] == "audit");
}

TEST_CASE("cli: the event mask of a flat 3x3 window is pinned") {
    Scratch s("flat3");
    spill(s / "flat3.csv", kFlat3Csv);
    spill(s / "flat3.scn", kFlat3Scn);
    REQUIRE(run({"analyze", "--scenario", s / "flat3.scn", "--mask", "E", "--format", "pgm", "--out-dir", s / "a"})
                .code == kExitOk);
    const std::string pgm = slurp(s.dir / "a" / "mask_E.pgm");
    CHECK(pgm == "P2\n3 3\n255\n0 128 0\n0 128 0\n0 0 0\n");

    // The same mask from the exhaustive oracle.
    const ScenarioFile sf = load_scenario(s / "flat3.scn");
    const CausalModel m = CausalModel::build(share(sf.build()), sf.stencil);
    const CellSet e = oracle::event_set(m, oracle::horizontality(m, 1));
    CHECK(e.members() == std::vector<std::size_t>{m.grid().index({1, 1}), m.grid().index({2, 1})});

    REQUIRE(run({"analyze", "--scenario", s / "flat3.scn", "--mask", "E", "--format", "pgm", "--out-dir", s / "b"})
                .code == kExitOk);
    CHECK(slurp(s.dir / "b" / "mask_E.pgm") == pgm);
}

TEST_CASE("cli: repeated runs write identical reports") {
    Scratch s("repeat");
    for (const char* dir : {"one", "two"})
        REQUIRE(run({"analyze", "--scenario", "random", "--resolution", "16", "--seed", "7", "--mask", "U", "--mask",
                     "BH", "--out-dir", s / dir})
                    .code == kExitOk);
    for (const auto& e : fs::directory_iterator(s.dir / "one")) {
        CAPTURE(e.path().filename().string());
        CHECK(slurp(e.path()) == slurp(s.dir / "two" / e.path().filename()));
    }
    const auto report = nlohmann::json::parse(slurp(s.dir / "one" / "report.json"));
    CHECK_FALSE(report.contains("timings"));
    for (const auto& a : report["artifacts"]) CHECK(a["sha256"].get<std::string>().size() == 64);
}

TEST_CASE("cli: search and refine") {
    Scratch s("search");
    const Run search = run({"search", "--scenario", "crunch_bump", "--resolution", "16", "--inclusion", "C<=U",
                            "--convention", "literal", "--budget", "1", "--out-dir", s / "s"});
    CHECK(search.code == kExitOk);
    const auto report = nlohmann::json::parse(slurp(s.dir / "s" / "report.json"));
    CHECK_FALSE(report["findings"].empty());

    CHECK(run({"refine", "--scenario", "minkowski_box", "--resolution", "12", "--out-dir", s / "r"}).code == kExitOk);
    const std::string table = slurp(s.dir / "r" / "convergence.csv");
    CHECK(table.rfind("mask,resolution,cells,domain_cells,fraction\n", 0) == 0);
}
